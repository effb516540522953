#include "eosq/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eosq/errors.hpp"
#include "eosq/quadrature.hpp"

namespace eosq {

namespace {

constexpr double kBoltzmann = 1.380649e-23;  // J/K
constexpr double kPi = std::numbers::pi;

using Components = std::array<cplx, 16>;

std::vector<double> default_thetas() {
  std::vector<double> t(1001);
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = kPi / 2 + kPi * double(i) / double(t.size() - 1);
  }
  return t;
}

IntegrationSpec outer_spec(const MomentContext& ctx) {
  IntegrationSpec spec;
  spec.a = 0.0;
  spec.b = window_omega_max(ctx.windows);
  spec.split_points = omega_split_points(ctx.windows);
  spec.rel_tol = ctx.rel_tol;
  spec.joint_tolerance = true;
  return spec;
}

// XX, XY + YX and YY products of D with another window.
std::array<cplx, 3> pair_products(const WindowComponents& c, WindowKind other) {
  const auto d = static_cast<std::size_t>(WindowKind::classical);
  const auto w = static_cast<std::size_t>(other);
  return {c.x[d] * c.x[w], c.x[d] * c.y[w] + c.y[d] * c.x[w], c.y[d] * c.y[w]};
}

cplx p_combination(cplx P2, const std::array<cplx, 3>& v) {
  return P2 * v[0] + v[1] + std::conj(P2) * v[2];
}

}  // namespace

ThzState ThzState::vacuum() { return {}; }

ThzState ThzState::thermal(double temperature_kelvin) {
  if (!(temperature_kelvin >= 0.0) || !std::isfinite(temperature_kelvin)) {
    throw DomainError("temperature must be non-negative");
  }
  ThzState s;
  s.kind_ = Kind::thermal;
  s.temperature_ = temperature_kelvin;
  return s;
}

ThzState ThzState::occupancy_table(std::vector<double> omega,
                                   std::vector<double> nbar) {
  if (omega.size() != nbar.size() || omega.empty()) {
    throw DomainError("occupancy table needs matching non-empty columns");
  }
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (!(nbar[i] >= 0.0)) throw DomainError("occupancy must be non-negative");
    if (i > 0 && !(omega[i] > omega[i - 1])) {
      throw DomainError("occupancy grid must be strictly increasing");
    }
  }
  ThzState s;
  s.kind_ = Kind::occupancy_table;
  s.omega_ = std::move(omega);
  s.nbar_ = std::move(nbar);
  return s;
}

double ThzState::occupancy(double Omega, const PhysicalConstants& consts) const {
  switch (kind_) {
    case Kind::vacuum:
      return 0.0;
    case Kind::thermal: {
      if (temperature_ == 0.0) return 0.0;
      return 1.0 / std::expm1(consts.hbar * Omega / (kBoltzmann * temperature_));
    }
    case Kind::occupancy_table: {
      if (Omega < omega_.front() || Omega > omega_.back()) return 0.0;
      const auto it = std::upper_bound(omega_.begin(), omega_.end(), Omega);
      if (it == omega_.end()) return nbar_.back();
      const std::size_t j = std::size_t(it - omega_.begin());
      const double t = (Omega - omega_[j - 1]) / (omega_[j] - omega_[j - 1]);
      return nbar_[j - 1] + t * (nbar_[j] - nbar_[j - 1]);
    }
  }
  return 0.0;
}

double MomentBreakdown::ratio_II() const noexcept {
  const double g = std::abs(gamma_I) + std::abs(gamma_II) + std::abs(gamma_III);
  return g > 0.0 ? std::abs(gamma_II) / g : 0.0;
}

MomentIntegrals moment_integrals(const MomentContext& ctx, const ThzState& thz) {
  const PhysicalConstants& consts = ctx.windows.probe.constants();
  const double k = 2.0 * consts.c0 / consts.length;

  const auto res = integrate(
      [&](double Omega) {
        const WindowComponents c = window_components(Omega, ctx.windows);
        const double weight = Omega * (2.0 * thz.occupancy(Omega, consts) + 1.0);
        const auto d = static_cast<std::size_t>(WindowKind::classical);
        const double d2 = std::norm(c.x[d]) + std::norm(c.y[d]);
        const auto q = pair_products(c, WindowKind::quantum);
        const auto s = pair_products(c, WindowKind::cascading);
        Components v;
        v[0] = weight * d2;
        v[1] = weight * (c.x[d] * std::conj(c.y[d]));
        v[14] = Omega * d2;
        v[15] = Omega * (c.x[d] * std::conj(c.y[d]));
        for (std::size_t i = 0; i < 3; ++i) {
          v[2 + i] = Omega * q[i];
          v[5 + i] = k * q[i];
          v[8 + i] = Omega * s[i];
          v[11 + i] = k * s[i];
        }
        return v;
      },
      outer_spec(ctx));

  MomentIntegrals out;
  out.a0 = res.value[0].real();
  out.a1 = res.value[1];
  out.a0_vacuum = res.value[14].real();
  out.a1_vacuum = res.value[15];
  for (std::size_t i = 0; i < 3; ++i) {
    out.b_quantum[i] = res.value[2 + i];
    out.e_quantum[i] = res.value[5 + i];
    out.b_cascading[i] = res.value[8 + i];
    out.e_cascading[i] = res.value[11 + i];
  }
  out.err_estimate = res.err_estimate;
  return out;
}

double si_prefactor(const ProbeSpectrum& probe) {
  const PhysicalConstants& c = probe.constants();
  const double amp = probe.photon_number() * probe.omega_p() * c.length / c.c0;
  return amp * amp * c.hbar / c.C();
}

MomentModel::MomentModel(const MomentContext& ctx, const ThzState& thz)
    : MomentModel(ctx, moment_integrals(ctx, thz)) {}

MomentModel::MomentModel(const MomentContext& ctx, MomentIntegrals integrals)
    : integrals_(integrals),
      cascading_(ctx.cascading),
      shot_noise_(ctx.windows.probe.photon_number()) {
  set_prefactor(ctx);
}

void MomentModel::set_prefactor(const MomentContext& ctx) {
  const ProbeSpectrum& probe = ctx.windows.probe;
  if (probe.constants().mode == UnitMode::si) {
    prefactor_ = si_prefactor(probe);
    return;
  }
  if (!(ctx.target_ratio > 0.0)) {
    throw DomainError("normalization target must be positive");
  }
  const auto thetas = ctx.normalization_thetas.empty()
                          ? default_thetas()
                          : ctx.normalization_thetas;
  double peak = 0.0;
  for (double t : thetas) peak = std::max(peak, std::abs(vacuum_at(t, 1.0).gamma_total));
  prefactor_ = peak > 0.0 ? ctx.target_ratio * shot_noise_ / peak : 0.0;
}

MomentBreakdown MomentModel::at(double theta, double K) const {
  const cplx P = phase_factor(theta);
  const cplx P2 = P * P;
  const MomentIntegrals& m = integrals_;
  MomentBreakdown b;
  b.theta = theta;
  b.shot_noise = shot_noise_;
  b.prefactor = K;
  b.gamma_I = K * (m.a0 + 2.0 * (P2 * m.a1).real());
  b.gamma_II = K * (p_combination(P2, m.b_quantum).real() -
                    p_combination(P2, m.e_quantum).imag());
  b.gamma_III_re_term = K * p_combination(P2, m.b_cascading).real();
  b.gamma_III_im_term = -K * p_combination(P2, m.e_cascading).imag();
  b.gamma_III = cascading_ == CascadingModel::microscopic
                    ? b.gamma_III_re_term + b.gamma_III_im_term
                    : b.gamma_III_re_term;
  b.gamma_total = b.gamma_I + b.gamma_II + b.gamma_III;
  return b;
}

MomentBreakdown MomentModel::vacuum_at(double theta, double K) const {
  MomentBreakdown b = at(theta, K);
  const cplx P = phase_factor(theta);
  b.gamma_I =
      K * (integrals_.a0_vacuum + 2.0 * (P * P * integrals_.a1_vacuum).real());
  b.gamma_total = b.gamma_I + b.gamma_II + b.gamma_III;
  return b;
}

MomentBreakdown MomentModel::at(double theta) const {
  return at(theta, prefactor_);
}

std::vector<MomentBreakdown> MomentModel::sweep(
    const std::vector<double>& thetas) const {
  std::vector<MomentBreakdown> out;
  out.reserve(thetas.size());
  for (double t : thetas) out.push_back(at(t));
  return out;
}

double gamma_I(double theta, const MomentContext& ctx, const ThzState& thz) {
  return MomentModel(ctx, thz).at(theta).gamma_I;
}

double gamma_II(double theta, const MomentContext& ctx) {
  return MomentModel(ctx, ThzState::vacuum()).at(theta).gamma_II;
}

double gamma_III(double theta, const MomentContext& ctx) {
  return MomentModel(ctx, ThzState::vacuum()).at(theta).gamma_III;
}

MomentBreakdown gamma_total(double theta, const MomentContext& ctx,
                            const ThzState& thz) {
  return MomentModel(ctx, thz).at(theta);
}

double mean_signal(const std::function<cplx(double)>& amplitude, double theta,
                   const MomentContext& ctx,
                   const std::vector<double>& features) {
  const cplx P = phase_factor(theta);
  const ProbeSpectrum& probe = ctx.windows.probe;
  const PhysicalConstants& c = probe.constants();
  double scale = 0.0;
  if (c.mode == UnitMode::si) {
    scale = probe.photon_number() * probe.omega_p() * c.length / c.c0;
  } else {
    const MomentModel model(ctx, ThzState::vacuum());
    scale = std::sqrt(model.prefactor() * c.C() / c.hbar);
  }
  IntegrationSpec spec = outer_spec(ctx);
  spec.split_points.insert(spec.split_points.end(), features.begin(),
                           features.end());
  spec.joint_tolerance = false;
  spec.abs_tol = 0.0;
  const auto res = integrate(
      [&](double Omega) {
        const cplx a = amplitude(Omega);
        if (a == 0.0) return cplx{};
        return a * window_components(Omega, ctx.windows)
                       .value(WindowKind::classical, P);
      },
      spec);
  return 2.0 * scale * res.value.real();
}

SpectralCutResult gamma_spectral_cut(double omega_tilde,
                                     const MomentContext& ctx) {
  const double K = MomentModel(ctx, ThzState::vacuum()).prefactor();
  return gamma_spectral_cut(omega_tilde, ctx, K);
}

SpectralCutResult gamma_spectral_cut(double omega_tilde,
                                     const MomentContext& ctx,
                                     double prefactor) {
  const ProbeSpectrum& probe = ctx.windows.probe;
  const double quarter = probe.delta_omega() / 4;
  const double slack = 1e-12 * probe.omega_c();
  if (!(omega_tilde >= probe.omega_c() - quarter - slack &&
        omega_tilde <= probe.omega_c() + quarter + slack)) {
    throw DomainError("omega_tilde outside [w_c - dw/4, w_c + dw/4]");
  }
  MomentContext cut = ctx;
  cut.windows.detection_band =
      std::make_pair(omega_tilde - quarter, omega_tilde + quarter);
  const MomentModel model(cut, moment_integrals(cut, ThzState::vacuum()));
  const MomentBreakdown b = model.at(kPi / 2, prefactor);
  return {omega_tilde, b.gamma_total, b.gamma_I};
}

}  // namespace eosq
