#pragma once

// Normally-ordered second moment Gamma = Gamma_I + Gamma_II + Gamma_III, the
// mean signal of a coherent THz field and the spectrally cut variant.
//
// With W = P X_W + conj(P) Y_W for every window, each contribution is a fixed
// combination of theta-independent Omega integrals:
//   Gamma_I = K [A0 + 2 Re(P^2 A1)]
//   Gamma_W = K [Re(P^2 B0 + B1 + conj(P)^2 B2) - Im(P^2 E0 + E1 + conj(P)^2 E2)]
// so a theta sweep costs one nested integration.

#include <array>
#include <functional>
#include <vector>

#include "eosq/detection_windows.hpp"
#include "eosq/model_core.hpp"

namespace eosq {

class ThzState {
 public:
  enum class Kind { vacuum, thermal, occupancy_table };

  static ThzState vacuum();
  static ThzState thermal(double temperature_kelvin);
  // Samples of the mean occupation; linear in between, zero outside.
  static ThzState occupancy_table(std::vector<double> omega,
                                  std::vector<double> nbar);

  Kind kind() const noexcept { return kind_; }
  double temperature() const noexcept { return temperature_; }

  double occupancy(double Omega, const PhysicalConstants& consts) const;

 private:
  Kind kind_ = Kind::vacuum;
  double temperature_ = 0.0;
  std::vector<double> omega_;
  std::vector<double> nbar_;
};

// Whether Gamma_III keeps its microscopic Im-term.
enum class CascadingModel { microscopic, macroscopic };

struct MomentContext {
  WindowContext windows;
  // Relative tolerance of the Omega integral; windows.rel_tol governs the
  // inner integrals.
  double rel_tol = 1e-8;
  // Target max |Gamma_total| / N over the normalization sweep (normalized
  // mode only).
  double target_ratio = 0.2;
  // Theta points for the normalization; empty means 1001 uniform points on
  // [pi/2, 3pi/2].
  std::vector<double> normalization_thetas;
  CascadingModel cascading = CascadingModel::microscopic;
};

// Theta-independent Omega integrals. The E-terms already carry the 2 c0 / L
// factor. a0/a1 carry the (2 nbar + 1) weight of the THz state; the vacuum
// copies fix the normalized prefactor so that it is state independent.
struct MomentIntegrals {
  double a0 = 0.0;
  cplx a1;
  double a0_vacuum = 0.0;
  cplx a1_vacuum;
  std::array<cplx, 3> b_quantum{};
  std::array<cplx, 3> e_quantum{};
  std::array<cplx, 3> b_cascading{};
  std::array<cplx, 3> e_cascading{};
  double err_estimate = 0.0;
};

MomentIntegrals moment_integrals(const MomentContext& ctx, const ThzState& thz);

struct MomentBreakdown {
  double theta = 0.0;
  double gamma_I = 0.0;
  double gamma_II = 0.0;
  double gamma_III = 0.0;
  double gamma_total = 0.0;
  double shot_noise = 0.0;
  // Parts of Gamma_III; gamma_III omits the second under the macroscopic
  // model.
  double gamma_III_re_term = 0.0;
  double gamma_III_im_term = 0.0;
  // K multiplying the integrals: (N w_p L / c0)^2 hbar / C in SI mode, the
  // normalization constant otherwise.
  double prefactor = 0.0;

  // |Gamma_II| / (|Gamma_I| + |Gamma_II| + |Gamma_III|), zero if all vanish.
  double ratio_II() const noexcept;
};

// Evaluates breakdowns from precomputed integrals.
class MomentModel {
 public:
  MomentModel(const MomentContext& ctx, const ThzState& thz);
  MomentModel(const MomentContext& ctx, MomentIntegrals integrals);

  MomentBreakdown at(double theta) const;
  // Breakdown with an explicit K in place of prefactor().
  MomentBreakdown at(double theta, double prefactor) const;
  // Breakdown with Gamma_I taken from the vacuum integrals.
  MomentBreakdown vacuum_at(double theta, double prefactor) const;
  std::vector<MomentBreakdown> sweep(const std::vector<double>& thetas) const;

  const MomentIntegrals& integrals() const noexcept { return integrals_; }
  double prefactor() const noexcept { return prefactor_; }

 private:
  void set_prefactor(const MomentContext& ctx);

  MomentIntegrals integrals_;
  CascadingModel cascading_;
  double shot_noise_ = 0.0;
  double prefactor_ = 0.0;
};

// K of the SI expression (N w_p L / c0)^2 hbar / C.
double si_prefactor(const ProbeSpectrum& probe);

double gamma_I(double theta, const MomentContext& ctx,
               const ThzState& thz = ThzState::vacuum());
double gamma_II(double theta, const MomentContext& ctx);
double gamma_III(double theta, const MomentContext& ctx);
MomentBreakdown gamma_total(double theta, const MomentContext& ctx,
                            const ThzState& thz = ThzState::vacuum());

// <S> = (N w_p L / c0) int dOmega [A(Omega) D(Omega, theta) + c.c.]. In
// normalized mode N w_p L / c0 becomes sqrt(K C / hbar) with the normalized K.
// `features` lists Omega values where A is sharply peaked.
double mean_signal(const std::function<cplx(double)>& amplitude, double theta,
                   const MomentContext& ctx,
                   const std::vector<double>& features = {});

struct SpectralCutResult {
  double omega_tilde;
  double gamma_full;
  double gamma_classical;
};

// Theta = pi/2 moments with detection restricted to
// [omega_tilde - dw/4, omega_tilde + dw/4]. N, w_p and the normalized K are
// those of the uncut spectrum.
SpectralCutResult gamma_spectral_cut(double omega_tilde,
                                     const MomentContext& ctx);
// Same with the prefactor K supplied, e.g. from a MomentModel of the full
// spectrum.
SpectralCutResult gamma_spectral_cut(double omega_tilde,
                                     const MomentContext& ctx,
                                     double prefactor);

}  // namespace eosq
