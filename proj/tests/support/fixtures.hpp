#pragma once

// Shared scenarios and reference integrators for the test suites.

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <vector>

#include "eosq/cli_io.hpp"
#include "eosq/detection_windows.hpp"
#include "eosq/model_core.hpp"
#include "eosq/moments.hpp"
#include "eosq/probe_optics.hpp"

namespace eosq::testing {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTHz = 2.0 * std::numbers::pi * 1e12;

// Composite trapezoid rule with n panels.
template <class F>
auto trapezoid(F&& f, double a, double b, std::size_t n) {
  using T = decltype(f(a));
  const double h = (b - a) / double(n);
  T sum = 0.5 * (f(a) + f(b));
  for (std::size_t i = 1; i < n; ++i) sum += f(a + h * double(i));
  return sum * h;
}

// Trapezoid over consecutive breakpoints, n panels in total spread
// proportionally to the segment lengths (at least 64 each).
template <class F>
auto trapezoid_segments(F&& f, std::vector<double> pts, std::size_t n) {
  using T = decltype(f(pts.front()));
  T sum = 0.0;
  const double total = pts.back() - pts.front();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double len = pts[i + 1] - pts[i];
    if (len <= 0.0) continue;
    const auto m = std::max<std::size_t>(64, std::size_t(double(n) * len / total));
    sum += trapezoid(f, pts[i], pts[i + 1], m);
  }
  return sum;
}

inline ScenarioConfig preset(const char* name) { return load_preset(name, false); }

inline MomentContext context_for(const char* name) {
  return make_moment_context(preset(name));
}

inline MomentContext offresonant() { return context_for("fig3b-offresonant"); }
inline MomentContext resonant() { return context_for("fig3-resonant"); }

// Reference probe (255 THz centre, 150 THz wide) around a given medium.
inline WindowContext window_context(std::shared_ptr<const Susceptibility> chi,
                                    double rel_tol = 1e-10) {
  PhysicalConstants c;
  const ProbeSpectrum probe(SpectrumShape::rectangular, 255 * kTHz, 150 * kTHz,
                            1.0, c);
  return WindowContext{std::move(chi), probe.with_photon_number(1e8), rel_tol,
                       std::nullopt};
}

inline LevelScheme simple_scheme(double nu1, double nu2, double gamma_THz,
                                 double mu1 = 1.0, double mu2 = 1.0,
                                 double mu3 = 1.0) {
  return LevelScheme::with_default_diagonals(nu1 * kTHz, nu2 * kTHz,
                                             gamma_THz * kTHz, gamma_THz * kTHz,
                                             gamma_THz * kTHz, mu1, mu2, mu3);
}

inline double rel_diff(std::complex<double> a, std::complex<double> b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s > 0.0 ? std::abs(a - b) / s : 0.0;
}

}  // namespace eosq::testing
