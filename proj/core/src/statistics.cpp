#include "eosq/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "eosq/errors.hpp"

namespace eosq {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> uniform(double a, double b, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = n > 1 ? a + (b - a) * double(i) / double(n - 1) : 0.5 * (a + b);
  }
  return g;
}

void require_positive_N(double N) {
  if (!(N > 0.0) || !std::isfinite(N)) {
    throw DomainError("shot noise N must be positive");
  }
}

}  // namespace

std::vector<double> default_signal_grid(double N, std::size_t points,
                                        double span) {
  require_positive_N(N);
  const double half = span * std::sqrt(N);
  return uniform(-half, half, points);
}

DistributionCurve distribution(double N, double gamma,
                               const std::vector<double>& s_grid,
                               double theta) {
  require_positive_N(N);
  DistributionCurve c;
  c.s_grid = s_grid;
  c.density.resize(s_grid.size());
  c.N = N;
  c.gamma = gamma;
  c.theta = theta;
  const double norm = 1.0 / std::sqrt(2 * kPi * N);
  bool negative = false;
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    const double s = s_grid[i];
    const double factor = 1.0 + (s * s - N) * gamma / (2 * N * N);
    if (factor < 0.0) negative = true;
    c.density[i] = norm * std::exp(-s * s / (2 * N)) * factor;
  }
  if (negative) c.warnings.push_back(ValidityWarning::negative_density);
  if (!(std::abs(gamma) < N)) c.warnings.push_back(ValidityWarning::non_perturbative);
  return c;
}

DistributionCurve hermite_series(double N,
                                 const std::vector<double>& normal_moments,
                                 const std::vector<double>& s_grid) {
  require_positive_N(N);
  if (normal_moments.empty() || normal_moments[0] != 1.0) {
    throw DomainError("normal moments must start with <:S^0:> = 1");
  }
  DistributionCurve c;
  c.s_grid = s_grid;
  c.density.resize(s_grid.size());
  c.N = N;
  c.gamma = normal_moments.size() > 2 ? normal_moments[2] : 0.0;
  const double s = std::sqrt(2 * N);
  const double norm = 1.0 / std::sqrt(2 * kPi * N);
  bool negative = false;
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    const double x = s_grid[i] / s;
    // u_k = H_k(x) / (s^k k!)
    double prev = 0.0;
    double cur = 1.0;
    double sum = normal_moments[0];
    for (std::size_t k = 0; k + 1 < normal_moments.size(); ++k) {
      const double next =
          (2 * x * cur / s - (k == 0 ? 0.0 : 2 * prev / (s * s))) / double(k + 1);
      prev = cur;
      cur = next;
      sum += cur * normal_moments[k + 1];
    }
    if (sum < 0.0) negative = true;
    c.density[i] = norm * std::exp(-x * x) * sum;
  }
  if (negative) c.warnings.push_back(ValidityWarning::negative_density);
  return c;
}

std::vector<ContourPoint> variance_contour(
    const std::vector<MomentBreakdown>& breakdowns) {
  std::vector<ContourPoint> out;
  out.reserve(2 * breakdowns.size());
  for (const MomentBreakdown& b : breakdowns) {
    const double phi = quadrature_phase(b.theta);
    const ContourPoint p{phi, std::sqrt(b.shot_noise + b.gamma_total),
                         std::sqrt(b.shot_noise + b.gamma_I),
                         std::sqrt(b.shot_noise)};
    out.push_back(p);
    ContourPoint m = p;
    m.phi += kPi;
    out.push_back(m);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ContourPoint& a, const ContourPoint& b) {
                     return a.phi < b.phi;
                   });
  return out;
}

double field_normalization(const Susceptibility& chi,
                           const ProbeSpectrum& probe) {
  const PhysicalConstants& c = probe.constants();
  const double chi0 =
      std::abs(chi(SuperopIndex::minus, SuperopIndex::minus, 0.0, probe.omega_p()));
  if (!(chi0 > 0.0)) {
    throw ReconstructionError("classical susceptibility vanishes", 0.0);
  }
  return c.c0 / (c.length * probe.omega_p() * chi0);
}

ReconstructionResult reconstruct_thz(const DistributionCurve& measured,
                                     const MomentBreakdown& breakdown,
                                     double E_norm, double threshold,
                                     std::size_t points) {
  if (!(breakdown.gamma_I > 0.0)) {
    throw ReconstructionError("Gamma_I <= 0: nothing to deconvolve", 0.0);
  }
  const double ratio =
      std::abs(breakdown.gamma_II + breakdown.gamma_III) / breakdown.gamma_I;
  if (ratio > threshold) {
    std::ostringstream msg;
    msg << "quantum corrections too large for a Gaussian deconvolution: "
        << "|Gamma_II + Gamma_III| / Gamma_I = " << ratio << " > " << threshold;
    throw ReconstructionError(msg.str(), ratio);
  }
  ReconstructionResult r;
  r.E_norm = E_norm;
  r.variance_signal_units = (measured.N + measured.gamma) - measured.N;
  if (!(r.variance_signal_units > 0.0)) {
    throw ReconstructionError("measured variance does not exceed shot noise",
                              ratio);
  }
  r.variance_field_units =
      r.variance_signal_units / (measured.N * measured.N);
  const double sigma = std::sqrt(r.variance_field_units);
  r.field_grid = uniform(-8 * sigma, 8 * sigma, points);
  r.density.resize(points);
  const double norm = 1.0 / (sigma * std::sqrt(2 * kPi));
  for (std::size_t i = 0; i < points; ++i) {
    const double z = r.field_grid[i] / sigma;
    r.density[i] = norm * std::exp(-0.5 * z * z);
  }
  return r;
}

}  // namespace eosq
