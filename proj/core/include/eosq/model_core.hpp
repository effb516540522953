#pragma once

// Three-level nonlinear medium and its closed-form second-order
// susceptibilities chi^(2)_{+rs}(-(w2+w1); w2, w1).

#include <array>
#include <complex>
#include <string_view>
#include <vector>

namespace eosq {

using cplx = std::complex<double>;

enum class Level : int { g = 0, gprime = 1, f = 2 };

std::string_view to_string(Level l) noexcept;

// Superoperator index of a dipole interaction: '+' anticommutator, '-'
// commutator.
enum class SuperopIndex : int { minus = -1, plus = 1 };

constexpr int sgn(SuperopIndex i) noexcept { return static_cast<int>(i); }

enum class UnitMode { si, normalized };

struct PhysicalConstants {
  double hbar = 1.054571817e-34;   // J s
  double c0 = 299792458.0;         // m/s
  double eps0 = 8.8541878128e-12;  // F/m
  double beam_area = 1.0e-10;      // m^2
  double length = 10.0e-6;         // m
  // Molecules per m^3. Only used in SI mode; the normalized mode folds it
  // into the overall coupling.
  double number_density = 1.0e28;
  UnitMode mode = UnitMode::normalized;

  // C = 4 pi eps0 A c0
  double C() const noexcept;
};

// Symmetric table indexed by an (unordered) level pair.
class PairTable {
 public:
  PairTable() { values_.fill(0.0); }

  double operator()(Level a, Level b) const noexcept {
    return values_[index(a, b)];
  }
  void set(Level a, Level b, double v) noexcept {
    values_[index(a, b)] = v;
    values_[index(b, a)] = v;
  }

 private:
  static constexpr std::size_t index(Level a, Level b) noexcept {
    return static_cast<std::size_t>(a) * 3 + static_cast<std::size_t>(b);
  }
  std::array<double, 9> values_;
};

// Ground state g, intermediate g', upper f. Energies are measured from g, so
// omega_ab = E_a - E_b and omega_aa = 0.
class LevelScheme {
 public:
  // Throws DomainError when an invariant is violated.
  LevelScheme(double omega_gprime_g, double omega_f_g, PairTable gamma,
              PairTable mu);

  // Off-diagonal linewidths with the diagonal ones defaulted: gamma_g'g' and
  // gamma_gg from gamma_g'g, gamma_ff from gamma_fg. Permanent dipoles zero.
  static LevelScheme with_default_diagonals(double omega_gprime_g,
                                            double omega_f_g,
                                            double gamma_gprime_g,
                                            double gamma_f_g,
                                            double gamma_f_gprime,
                                            double mu_g_gprime, double mu_g_f,
                                            double mu_gprime_f);

  double omega_gprime_g() const noexcept { return energy_[1]; }
  double omega_f_g() const noexcept { return energy_[2]; }

  double transition(Level a, Level b) const noexcept {
    return energy_[static_cast<std::size_t>(a)] -
           energy_[static_cast<std::size_t>(b)];
  }
  double linewidth(Level a, Level b) const noexcept { return gamma_(a, b); }
  double dipole(Level a, Level b) const noexcept { return mu_(a, b); }

  const PairTable& linewidths() const noexcept { return gamma_; }
  const PairTable& dipoles() const noexcept { return mu_; }

  LevelScheme with_scaled_dipoles(double lambda) const;

 private:
  std::array<double, 3> energy_;
  PairTable gamma_;
  PairTable mu_;
};

// I_ab(omega) = 1 / (omega - omega_ab + i gamma_ab)
cplx propagator(Level a, Level b, double omega, const LevelScheme& scheme);

// 2^{-1-[sgn(r)+sgn(s)]/2}
double chi2_prefactor(SuperopIndex r, SuperopIndex s) noexcept;

// Values of chi^(2)_{+rs} for all four index patterns at one frequency pair.
struct Chi2Patterns {
  cplx mm;  // (r,s) = (-,-), classical
  cplx pm;  // (+,-)
  cplx mp;  // (-,+)
  cplx pp;  // (+,+)

  cplx get(SuperopIndex r, SuperopIndex s) const noexcept;
};

struct Resonance {
  double omega;
  double gamma;
};

// Interface used by the detection windows, so that a medium other than the
// three-level model (a constant nonlinearity, for instance) can be plugged in.
class Susceptibility {
 public:
  virtual ~Susceptibility() = default;

  virtual cplx operator()(SuperopIndex r, SuperopIndex s, double omega2,
                          double omega1) const = 0;

  virtual Chi2Patterns patterns(double omega2, double omega1) const;

  // Poles of the propagators as (omega_ab, gamma_ab) with omega_ab != 0
  // listed for both signs. Used to split integration domains.
  virtual std::vector<Resonance> resonances() const { return {}; }
};

class ThreeLevelSusceptibility final : public Susceptibility {
 public:
  ThreeLevelSusceptibility(LevelScheme scheme, PhysicalConstants consts);

  cplx operator()(SuperopIndex r, SuperopIndex s, double omega2,
                  double omega1) const override;
  Chi2Patterns patterns(double omega2, double omega1) const override;
  std::vector<Resonance> resonances() const override;

  const LevelScheme& scheme() const noexcept { return scheme_; }
  const PhysicalConstants& constants() const noexcept { return consts_; }

  // Dimensional factor multiplying 2^{...} * sum(...): 1/(eps0 hbar^2) times
  // the number density in SI mode, 1 in normalized mode.
  double coupling() const noexcept { return coupling_; }

 private:
  struct Terms {
    cplx t1, t2, t3, t4;
  };
  Terms sum_terms(double omega2, double omega1) const noexcept;

  LevelScheme scheme_;
  PhysicalConstants consts_;
  double coupling_;
};

// A frequency-independent nonlinearity: chi_{+--} = value, quantum patterns
// zero. This is the macroscopic off-resonant limit.
class ConstantSusceptibility final : public Susceptibility {
 public:
  explicit ConstantSusceptibility(cplx classical, cplx quantum = 0.0)
      : classical_(classical), quantum_(quantum) {}

  cplx operator()(SuperopIndex r, SuperopIndex s, double,
                  double) const override {
    return r == SuperopIndex::minus && s == SuperopIndex::minus ? classical_
                                                                : quantum_;
  }

 private:
  cplx classical_;
  cplx quantum_;
};

cplx chi2(SuperopIndex r, SuperopIndex s, double omega2, double omega1,
          const LevelScheme& scheme, const PhysicalConstants& consts);

cplx chi2_classical(double omega2, double omega1, const LevelScheme& scheme,
                    const PhysicalConstants& consts);

}  // namespace eosq
