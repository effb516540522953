#include "eosq/detection_windows.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "eosq/errors.hpp"
#include "eosq/parallel.hpp"
#include "eosq/quadrature.hpp"

namespace eosq {

namespace {

constexpr double kResonanceHalo = 10.0;  // split at omega* +- 10 gamma

using Triple = std::array<cplx, 3>;

std::optional<std::pair<double, double>> inner_domain(OverlapSign sign,
                                                      double Omega,
                                                      const WindowContext& ctx) {
  auto [a, b] = ctx.probe.support();
  if (sign == OverlapSign::minus) {
    a += Omega;
  } else {
    b -= Omega;
  }
  if (ctx.detection_band) {
    a = std::max(a, ctx.detection_band->first);
    b = std::min(b, ctx.detection_band->second);
  }
  if (!(b > a)) return std::nullopt;
  return std::make_pair(a, b);
}

// The omega-dependent propagator arguments are omega, -omega and
// omega -+ Omega (minus / plus lines).
std::vector<double> inner_splits(OverlapSign sign, double Omega,
                                 const WindowContext& ctx) {
  std::vector<double> out;
  const double shift = sign == OverlapSign::minus ? Omega : -Omega;
  for (const Resonance& r : ctx.chi->resonances()) {
    for (double centre : {r.omega, r.omega + shift, -r.omega}) {
      out.push_back(centre);
      out.push_back(centre - kResonanceHalo * r.gamma);
      out.push_back(centre + kResonanceHalo * r.gamma);
    }
  }
  if (ctx.probe.shape() == SpectrumShape::gaussian) {
    out.push_back(ctx.probe.omega_c());
    out.push_back(ctx.probe.omega_c() + shift);
  }
  return out;
}

template <class F>
auto integrate_line(OverlapSign sign, double Omega, const WindowContext& ctx,
                    F&& integrand) {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  const auto dom = inner_domain(sign, Omega, ctx);
  if (!dom) return quad_detail::ValueTraits<T>::zero();
  IntegrationSpec spec;
  spec.a = dom->first;
  spec.b = dom->second;
  spec.split_points = inner_splits(sign, Omega, ctx);
  spec.rel_tol = ctx.rel_tol;
  spec.joint_tolerance = true;
  return integrate(integrand, spec).value;
}

// Susceptibility brackets of every printed line; the pairs are
// (omega2, omega1) of chi(-(omega2 + omega1); omega2, omega1).
struct MinusBrackets {
  cplx d;       // chi+--(-w; W, w-W) + chi+--(-w; w-W, W)
  cplx q_thz;   // chi++-(W; -w, w-W) + chi+-+(W; w-W, -w)
  cplx q_nir;   // chi++-(-w; W, w-W) + chi+-+(-w; w-W, W)
  cplx casc;    // chi+--(W; -w, w-W) + chi+--(W; w-W, -w)
};

MinusBrackets minus_brackets(const Susceptibility& chi, double w, double W) {
  const Chi2Patterns a = chi.patterns(W, w - W);
  const Chi2Patterns b = chi.patterns(w - W, W);
  const Chi2Patterns c = chi.patterns(-w, w - W);
  const Chi2Patterns d = chi.patterns(w - W, -w);
  return {a.mm + b.mm, c.pm + d.mp, a.pm + b.mp, c.mm + d.mm};
}

// Unconjugated brackets of the f+* lines.
struct PlusBrackets {
  cplx d;       // chi+--(-w; -W, w+W) + chi+--(-w; w+W, -W)
  cplx q_thz;   // chi++-(-W; -w, w+W) + chi+-+(-W; w+W, -w)
  cplx q_nir;   // chi++-(-w; -W, w+W) + chi+-+(-w; w+W, -W)
  cplx casc;    // chi+--(-W; -w, w+W) + chi+--(-W; w+W, -w)
};

PlusBrackets plus_brackets(const Susceptibility& chi, double w, double W) {
  const Chi2Patterns a = chi.patterns(-W, w + W);
  const Chi2Patterns b = chi.patterns(w + W, -W);
  const Chi2Patterns c = chi.patterns(-w, w + W);
  const Chi2Patterns d = chi.patterns(w + W, -w);
  return {a.mm + b.mm, c.pm + d.mp, a.pm + b.mp, c.mm + d.mm};
}

bool beyond_band(double Omega, const WindowContext& ctx) {
  return Omega >= window_omega_max(ctx);
}

// f- and f+* including P(theta).
cplx f_minus(double w, double W, double theta, const WindowContext& ctx) {
  return overlap_f(OverlapSign::minus, w, W, theta, ctx.probe);
}
cplx f_plus_conj(double w, double W, double theta, const WindowContext& ctx) {
  return std::conj(overlap_f(OverlapSign::plus, w, W, theta, ctx.probe));
}

}  // namespace

double window_omega_max(const WindowContext& ctx) noexcept {
  return ctx.probe.omega_max();
}

WindowComponents window_components(double Omega, const WindowContext& ctx) {
  if (!(Omega > 0.0)) throw DomainError("window requires Omega > 0");
  WindowComponents out;
  if (beyond_band(Omega, ctx)) return out;
  const Susceptibility& chi = *ctx.chi;
  const ProbeSpectrum& probe = ctx.probe;

  out.x = integrate_line(OverlapSign::minus, Omega, ctx, [&](double w) {
    const double g = probe.overlap_shape(OverlapSign::minus, w, Omega);
    const MinusBrackets m = minus_brackets(chi, w, Omega);
    return Triple{0.5 * g * m.d, g * (m.q_thz + m.q_nir), 0.5 * g * m.casc};
  });
  out.y = integrate_line(OverlapSign::plus, Omega, ctx, [&](double w) {
    const double g = probe.overlap_shape(OverlapSign::plus, w, Omega);
    const PlusBrackets p = plus_brackets(chi, w, Omega);
    return Triple{-0.5 * g * std::conj(p.d),
                  g * std::conj(p.q_thz + p.q_nir),
                  0.5 * g * std::conj(p.casc)};
  });
  return out;
}

WindowValues assemble_windows(const WindowComponents& c, cplx P) noexcept {
  return {c.value(WindowKind::classical, P), c.value(WindowKind::quantum, P),
          c.value(WindowKind::cascading, P)};
}

cplx window_classical(double Omega, double theta, const WindowContext& ctx) {
  if (!(Omega > 0.0)) throw DomainError("window requires Omega > 0");
  phase_factor(theta);
  if (beyond_band(Omega, ctx)) return 0.0;
  const Susceptibility& chi = *ctx.chi;
  const cplx first = integrate_line(OverlapSign::minus, Omega, ctx, [&](double w) {
    return f_minus(w, Omega, theta, ctx) *
           (chi(SuperopIndex::minus, SuperopIndex::minus, Omega, w - Omega) +
            chi(SuperopIndex::minus, SuperopIndex::minus, w - Omega, Omega));
  });
  const cplx second = integrate_line(OverlapSign::plus, Omega, ctx, [&](double w) {
    return f_plus_conj(w, Omega, theta, ctx) *
           std::conj(
               chi(SuperopIndex::minus, SuperopIndex::minus, -Omega, w + Omega) +
               chi(SuperopIndex::minus, SuperopIndex::minus, w + Omega, -Omega));
  });
  return 0.5 * first - 0.5 * second;
}

cplx window_quantum(double Omega, double theta, const WindowContext& ctx) {
  if (!(Omega > 0.0)) throw DomainError("window requires Omega > 0");
  phase_factor(theta);
  if (beyond_band(Omega, ctx)) return 0.0;
  const Susceptibility& chi = *ctx.chi;
  using enum SuperopIndex;
  const cplx l1 = integrate_line(OverlapSign::plus, Omega, ctx, [&](double w) {
    return f_plus_conj(w, Omega, theta, ctx) *
           std::conj(chi(plus, minus, -w, w + Omega) +
                     chi(minus, plus, w + Omega, -w));
  });
  const cplx l2 = integrate_line(OverlapSign::plus, Omega, ctx, [&](double w) {
    return f_plus_conj(w, Omega, theta, ctx) *
           std::conj(chi(plus, minus, -Omega, w + Omega) +
                     chi(minus, plus, w + Omega, -Omega));
  });
  const cplx l3 = integrate_line(OverlapSign::minus, Omega, ctx, [&](double w) {
    return f_minus(w, Omega, theta, ctx) *
           (chi(plus, minus, -w, w - Omega) + chi(minus, plus, w - Omega, -w));
  });
  const cplx l4 = integrate_line(OverlapSign::minus, Omega, ctx, [&](double w) {
    return f_minus(w, Omega, theta, ctx) *
           (chi(plus, minus, Omega, w - Omega) +
            chi(minus, plus, w - Omega, Omega));
  });
  return l1 + l2 + l3 + l4;
}

cplx window_cascading(double Omega, double theta, const WindowContext& ctx) {
  if (!(Omega > 0.0)) throw DomainError("window requires Omega > 0");
  phase_factor(theta);
  if (beyond_band(Omega, ctx)) return 0.0;
  const Susceptibility& chi = *ctx.chi;
  using enum SuperopIndex;
  const cplx first = integrate_line(OverlapSign::plus, Omega, ctx, [&](double w) {
    return f_plus_conj(w, Omega, theta, ctx) *
           std::conj(chi(minus, minus, -w, w + Omega) +
                     chi(minus, minus, w + Omega, -w));
  });
  const cplx second = integrate_line(OverlapSign::minus, Omega, ctx, [&](double w) {
    return f_minus(w, Omega, theta, ctx) *
           (chi(minus, minus, -w, w - Omega) + chi(minus, minus, w - Omega, -w));
  });
  return 0.5 * first + 0.5 * second;
}

std::vector<double> omega_split_points(const WindowContext& ctx) {
  const double top = window_omega_max(ctx);
  auto [lo, hi] = ctx.probe.support();
  std::vector<double> edges{lo, hi};
  if (ctx.detection_band) {
    edges.push_back(ctx.detection_band->first);
    edges.push_back(ctx.detection_band->second);
  }
  std::set<double> pts;
  auto add = [&](double c, double gamma) {
    for (double v : {c, c - kResonanceHalo * gamma, c + kResonanceHalo * gamma}) {
      if (v > 0.0 && v < top) pts.insert(v);
    }
  };
  for (const Resonance& r : ctx.chi->resonances()) {
    add(std::abs(r.omega), r.gamma);
    for (double e : edges) add(std::abs(r.omega - e), r.gamma);
  }
  if (ctx.detection_band) {
    // Kinks where the shifted support meets the detection band.
    for (double e : edges) {
      for (double f : edges) {
        if (e != f) add(std::abs(e - f), 0.0);
      }
    }
  }
  return {pts.begin(), pts.end()};
}

std::vector<double> default_window_grid(const WindowContext& ctx,
                                        std::size_t points) {
  const double top = window_omega_max(ctx);
  std::vector<Resonance> inside;
  for (const Resonance& r : ctx.chi->resonances()) {
    if (r.omega > 0.0 && r.omega < top) inside.push_back(r);
  }
  std::sort(inside.begin(), inside.end(),
            [](const Resonance& a, const Resonance& b) { return a.omega < b.omega; });

  const std::size_t cluster = inside.empty() ? 0 : points / 4;
  const std::size_t geometric = points - cluster;
  std::set<double> grid;
  const double bottom = 1e-4 * top;
  for (std::size_t i = 0; i < geometric; ++i) {
    const double t = geometric > 1 ? double(i) / double(geometric - 1) : 1.0;
    grid.insert(bottom * std::pow(top / bottom, t));
  }
  if (cluster > 0) {
    const Resonance& r = inside.front();
    const double a = std::max(bottom, r.omega - 20 * r.gamma);
    const double b = std::min(top, r.omega + 20 * r.gamma);
    for (std::size_t i = 0; i < cluster; ++i) {
      grid.insert(a + (b - a) * double(i) / double(cluster - 1));
    }
  }
  return {grid.begin(), grid.end()};
}

DetectionWindowTable tabulate_windows(double theta, const WindowContext& ctx,
                                      const std::vector<double>& grid,
                                      unsigned threads) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw DomainError("window grid must be positive and strictly increasing");
    }
  }
  const cplx P = phase_factor(theta);
  DetectionWindowTable t{theta, grid, std::vector<cplx>(grid.size()),
                         std::vector<cplx>(grid.size()),
                         std::vector<cplx>(grid.size()), {ctx.rel_tol}};
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    try {
      const WindowValues v = assemble_windows(window_components(grid[i], ctx), P);
      t.D[i] = v.D;
      t.Dq[i] = v.Dq;
      t.Dcasc[i] = v.Dcasc;
    } catch (const ConvergenceError& e) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "window quadrature failed at Omega = " << grid[i] << ": "
          << e.what();
      throw ConvergenceError(msg.str(), e.worst_a(), e.worst_b(),
                             e.worst_error());
    }
  });
  return t;
}

}  // namespace eosq
