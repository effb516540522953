#pragma once

// Signal probability distributions, polar variance contours and Gaussian
// deconvolution of the sampled THz statistics.

#include <cstddef>
#include <vector>

#include "eosq/moments.hpp"

namespace eosq {

enum class ValidityWarning {
  // 1 + (S^2 - N) Gamma / (2 N^2) < 0 somewhere on the grid.
  negative_density,
  // |Gamma| >= N: the correction is no longer perturbative.
  non_perturbative,
};

struct DistributionCurve {
  std::vector<double> s_grid;
  std::vector<double> density;
  double N = 0.0;
  double gamma = 0.0;
  double theta = 0.0;
  std::vector<ValidityWarning> warnings;
};

// `points` values uniformly spanning [-span sqrt(N), span sqrt(N)].
std::vector<double> default_signal_grid(double N, std::size_t points = 4001,
                                        double span = 8.0);

// Gaussian of variance N times 1 + (S^2 - N) Gamma / (2 N^2).
DistributionCurve distribution(double N, double gamma,
                               const std::vector<double>& s_grid,
                               double theta = 0.0);

// sum_k H_k(S / sqrt(2N)) exp(-S^2 / 2N) <:S^k:> / ((2N)^{k/2} k! sqrt(2 pi N))
DistributionCurve hermite_series(double N,
                                 const std::vector<double>& normal_moments,
                                 const std::vector<double>& s_grid);

struct ContourPoint {
  double phi;
  double radius_full;
  double radius_classical;
  double radius_shot;
};

// One-standard-deviation radii per quadrature phase. Each breakdown yields a
// point at phi and its mirror at phi + pi; output is sorted by phi.
std::vector<ContourPoint> variance_contour(
    const std::vector<MomentBreakdown>& breakdowns);

struct ReconstructionResult {
  std::vector<double> field_grid;  // E / E_norm
  std::vector<double> density;
  double variance_signal_units = 0.0;
  double variance_field_units = 0.0;  // in E_norm^2
  double E_norm = 0.0;
};

// c0 / (L w_p |chi+--|), with chi+-- taken at (0, w_p).
double field_normalization(const Susceptibility& chi, const ProbeSpectrum& probe);

// Deconvolves the shot-noise Gaussian from a theta = pi/2 distribution. The
// signal-to-field map is S = N E / E_norm. Throws ReconstructionError when
// Gamma_I <= 0 or |Gamma_II + Gamma_III| / Gamma_I > threshold.
ReconstructionResult reconstruct_thz(const DistributionCurve& measured,
                                     const MomentBreakdown& breakdown,
                                     double E_norm, double threshold = 0.05,
                                     std::size_t points = 4001);

}  // namespace eosq
