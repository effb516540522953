#pragma once

// Detection windows D, D_q and D_casc as probe-band integrals.
//
// Every window is linear in f+- and therefore splits as
//   W(Omega, theta) = P(theta) X_W(Omega) + conj(P(theta)) Y_W(Omega)
// where X_W collects the f- lines and Y_W the f+* lines. X and Y do not depend
// on theta; they are computed once and reused across a theta sweep.

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "eosq/model_core.hpp"
#include "eosq/probe_optics.hpp"

namespace eosq {

struct WindowContext {
  std::shared_ptr<const Susceptibility> chi;
  ProbeSpectrum probe;
  // Relative tolerance of each omega integral.
  double rel_tol = 1e-10;
  // Restricts the detected frequency omega to [first, second].
  std::optional<std::pair<double, double>> detection_band;
};

enum class WindowKind : std::size_t { classical = 0, quantum = 1, cascading = 2 };

// Theta-independent parts, indexed by WindowKind.
struct WindowComponents {
  std::array<cplx, 3> x{};  // coefficient of P
  std::array<cplx, 3> y{};  // coefficient of conj(P)

  cplx value(WindowKind k, cplx P) const noexcept {
    const auto i = static_cast<std::size_t>(k);
    return P * x[i] + std::conj(P) * y[i];
  }
};

struct WindowValues {
  cplx D;
  cplx Dq;
  cplx Dcasc;
};

WindowComponents window_components(double Omega, const WindowContext& ctx);

WindowValues assemble_windows(const WindowComponents& c, cplx P) noexcept;

// Single-theta windows. Each printed integral line is integrated on its own
// with the full f+- (including P), independently of window_components.
cplx window_classical(double Omega, double theta, const WindowContext& ctx);
cplx window_quantum(double Omega, double theta, const WindowContext& ctx);
cplx window_cascading(double Omega, double theta, const WindowContext& ctx);

// Omega-integration domain [0, omega_max] of the context.
double window_omega_max(const WindowContext& ctx) noexcept;

// Omega values where a THz-side propagator peaks or an omega-side pole
// crosses the edge of the integration domain.
std::vector<double> omega_split_points(const WindowContext& ctx);

struct WindowProvenance {
  double rel_tol;
};

struct DetectionWindowTable {
  double theta;
  std::vector<double> omega_grid;
  std::vector<cplx> D;
  std::vector<cplx> Dq;
  std::vector<cplx> Dcasc;
  WindowProvenance provenance;
};

// Default grid: points spaced geometrically on (0, omega_max], with a dense
// cluster around the lowest THz resonance inside the band.
std::vector<double> default_window_grid(const WindowContext& ctx,
                                        std::size_t points = 512);

// Evaluates all windows on the grid. threads > 1 fans the grid out over
// workers; results are identical for any thread count.
DetectionWindowTable tabulate_windows(double theta, const WindowContext& ctx,
                                      const std::vector<double>& grid,
                                      unsigned threads = 1);

}  // namespace eosq
