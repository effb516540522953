#include "eosq/model_core.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "eosq/errors.hpp"

namespace eosq {

namespace {

constexpr std::array<Level, 3> kLevels{Level::g, Level::gprime, Level::f};

inline cplx inv(double re, double im) noexcept {
  const double d = re * re + im * im;
  return {re / d, -im / d};
}

}  // namespace

std::string_view to_string(Level l) noexcept {
  switch (l) {
    case Level::g:
      return "g";
    case Level::gprime:
      return "g'";
    case Level::f:
      return "f";
  }
  return "?";
}

double PhysicalConstants::C() const noexcept {
  return 4.0 * std::numbers::pi * eps0 * beam_area * c0;
}

LevelScheme::LevelScheme(double omega_gprime_g, double omega_f_g,
                         PairTable gamma, PairTable mu)
    : energy_{0.0, omega_gprime_g, omega_f_g},
      gamma_(gamma),
      mu_(mu) {
  if (!(omega_gprime_g > 0.0) || !(omega_f_g > omega_gprime_g)) {
    throw DomainError("level scheme requires omega_f_g > omega_g'g > 0");
  }
  for (Level a : kLevels) {
    for (Level b : kLevels) {
      const double v = gamma_(a, b);
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError("linewidth gamma_" + std::string(to_string(a)) +
                          std::string(to_string(b)) + " must be positive");
      }
      if (!std::isfinite(mu_(a, b))) {
        throw DomainError("dipole moments must be finite");
      }
    }
  }
}

LevelScheme LevelScheme::with_default_diagonals(
    double omega_gprime_g, double omega_f_g, double gamma_gprime_g,
    double gamma_f_g, double gamma_f_gprime, double mu_g_gprime,
    double mu_g_f, double mu_gprime_f) {
  PairTable gamma;
  gamma.set(Level::gprime, Level::g, gamma_gprime_g);
  gamma.set(Level::f, Level::g, gamma_f_g);
  gamma.set(Level::f, Level::gprime, gamma_f_gprime);
  gamma.set(Level::g, Level::g, gamma_gprime_g);
  gamma.set(Level::gprime, Level::gprime, gamma_gprime_g);
  gamma.set(Level::f, Level::f, gamma_f_g);
  PairTable mu;
  mu.set(Level::g, Level::gprime, mu_g_gprime);
  mu.set(Level::g, Level::f, mu_g_f);
  mu.set(Level::gprime, Level::f, mu_gprime_f);
  return LevelScheme(omega_gprime_g, omega_f_g, gamma, mu);
}

LevelScheme LevelScheme::with_scaled_dipoles(double lambda) const {
  PairTable mu;
  for (Level a : kLevels) {
    for (Level b : kLevels) mu.set(a, b, lambda * mu_(a, b));
  }
  return LevelScheme(energy_[1], energy_[2], gamma_, mu);
}

cplx propagator(Level a, Level b, double omega, const LevelScheme& scheme) {
  return inv(omega - scheme.transition(a, b), scheme.linewidth(a, b));
}

double chi2_prefactor(SuperopIndex r, SuperopIndex s) noexcept {
  switch (sgn(r) + sgn(s)) {
    case -2:
      return 1.0;
    case 0:
      return 0.5;
    default:
      return 0.25;
  }
}

cplx Chi2Patterns::get(SuperopIndex r, SuperopIndex s) const noexcept {
  if (r == SuperopIndex::minus) return s == SuperopIndex::minus ? mm : mp;
  return s == SuperopIndex::minus ? pm : pp;
}

Chi2Patterns Susceptibility::patterns(double omega2, double omega1) const {
  using enum SuperopIndex;
  return {(*this)(minus, minus, omega2, omega1),
          (*this)(plus, minus, omega2, omega1),
          (*this)(minus, plus, omega2, omega1),
          (*this)(plus, plus, omega2, omega1)};
}

ThreeLevelSusceptibility::ThreeLevelSusceptibility(LevelScheme scheme,
                                                   PhysicalConstants consts)
    : scheme_(scheme), consts_(consts) {
  coupling_ = consts_.mode == UnitMode::si
                  ? consts_.number_density /
                        (consts_.eps0 * consts_.hbar * consts_.hbar)
                  : 1.0;
}

// Accumulates, over a,b in {g', f}, mu_gb mu_ba mu_ag times the four
// propagator products of the closed form. The (r,s) pattern only changes the
// signs with which they are combined.
ThreeLevelSusceptibility::Terms ThreeLevelSusceptibility::sum_terms(
    double omega2, double omega1) const noexcept {
  const double total = omega2 + omega1;
  const LevelScheme& s = scheme_;
  auto I = [&s](Level a, Level b, double w) {
    return inv(w - s.transition(a, b), s.linewidth(a, b));
  };

  constexpr std::array<Level, 2> upper{Level::gprime, Level::f};
  // Single-index propagators shared by every (a,b).
  std::array<cplx, 2> i_ag_w1, i_gb_w1, i_bg_total, i_ga_total;
  for (std::size_t k = 0; k < 2; ++k) {
    i_ag_w1[k] = I(upper[k], Level::g, omega1);
    i_gb_w1[k] = I(Level::g, upper[k], omega1);
    i_bg_total[k] = I(upper[k], Level::g, total);
    i_ga_total[k] = I(Level::g, upper[k], total);
  }

  Terms out{};
  for (std::size_t ia = 0; ia < 2; ++ia) {
    for (std::size_t ib = 0; ib < 2; ++ib) {
      const Level a = upper[ia];
      const Level b = upper[ib];
      const double coef = s.dipole(Level::g, b) * s.dipole(b, a) *
                          s.dipole(a, Level::g);
      if (coef == 0.0) continue;
      const cplx i_ab_total = I(a, b, total);
      out.t1 += coef * (i_bg_total[ib] * i_ag_w1[ia]);
      out.t2 += coef * (i_ab_total * i_gb_w1[ib]);
      out.t3 += coef * (i_ga_total[ia] * i_gb_w1[ib]);
      out.t4 += coef * (i_ab_total * i_ag_w1[ia]);
    }
  }
  return out;
}

cplx ThreeLevelSusceptibility::operator()(SuperopIndex r, SuperopIndex s,
                                          double omega2,
                                          double omega1) const {
  const Terms t = sum_terms(omega2, omega1);
  const double rs = sgn(r);
  const double ss = sgn(s);
  return coupling_ * chi2_prefactor(r, s) *
         (t.t1 + ss * t.t2 + rs * ss * t.t3 + rs * t.t4);
}

Chi2Patterns ThreeLevelSusceptibility::patterns(double omega2,
                                                double omega1) const {
  const Terms t = sum_terms(omega2, omega1);
  // bracket(r,s) = t1 + s t2 + r s t3 + r t4
  const cplx mm = t.t1 - t.t2 + t.t3 - t.t4;
  const cplx pm = t.t1 - t.t2 - t.t3 + t.t4;
  const cplx mp = t.t1 + t.t2 - t.t3 - t.t4;
  const cplx pp = t.t1 + t.t2 + t.t3 + t.t4;
  return {coupling_ * mm, 0.5 * coupling_ * pm, 0.5 * coupling_ * mp,
          0.25 * coupling_ * pp};
}

std::vector<Resonance> ThreeLevelSusceptibility::resonances() const {
  std::vector<Resonance> out;
  for (Level a : kLevels) {
    for (Level b : kLevels) {
      const double w = scheme_.transition(a, b);
      if (w > 0.0) {
        out.push_back({w, scheme_.linewidth(a, b)});
        out.push_back({-w, scheme_.linewidth(a, b)});
      }
    }
  }
  // Population terms I_aa only enter through permanent dipoles.
  for (Level a : {Level::gprime, Level::f}) {
    if (scheme_.dipole(a, a) != 0.0) {
      out.push_back({0.0, scheme_.linewidth(a, a)});
    }
  }
  return out;
}

cplx chi2(SuperopIndex r, SuperopIndex s, double omega2, double omega1,
          const LevelScheme& scheme, const PhysicalConstants& consts) {
  return ThreeLevelSusceptibility(scheme, consts)(r, s, omega2, omega1);
}

cplx chi2_classical(double omega2, double omega1, const LevelScheme& scheme,
                    const PhysicalConstants& consts) {
  return chi2(SuperopIndex::minus, SuperopIndex::minus, omega2, omega1, scheme,
              consts);
}

}  // namespace eosq
