#pragma once

// Globally adaptive Gauss-Kronrod (7/15) integration for real, complex and
// fixed-size vector-valued integrands. Vector integrands share one
// subdivision tree; convergence is judged per component.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <type_traits>
#include <utility>
#include <vector>

#include "eosq/errors.hpp"

namespace eosq {

struct IntegrationSpec {
  double a = 0.0;
  double b = 1.0;
  // Interior breakpoints; points outside (a, b) are ignored.
  std::vector<double> split_points;
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  int max_depth = 48;
  std::size_t max_intervals = 20000;
  // When set, every component of a vector integrand is held to
  // rel_tol * max_i |total_i| instead of its own magnitude.
  bool joint_tolerance = false;
};

template <class T>
struct IntegrationResult {
  T value{};
  // Largest per-component error estimate.
  double err_estimate = 0.0;
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
};

namespace quad_detail {

template <class T>
struct ValueTraits;

template <>
struct ValueTraits<double> {
  static constexpr std::size_t size = 1;
  static double abs(const double& v, std::size_t) { return std::abs(v); }
  static double zero() { return 0.0; }
};

template <>
struct ValueTraits<std::complex<double>> {
  static constexpr std::size_t size = 1;
  static double abs(const std::complex<double>& v, std::size_t) {
    return std::abs(v);
  }
  static std::complex<double> zero() { return {}; }
};

template <class E, std::size_t K>
struct ValueTraits<std::array<E, K>> {
  static constexpr std::size_t size = K;
  static double abs(const std::array<E, K>& v, std::size_t i) {
    return std::abs(v[i]);
  }
  static std::array<E, K> zero() {
    std::array<E, K> z;
    z.fill(E{});
    return z;
  }
};

template <class T>
inline void add_scaled(T& acc, double w, const T& v) {
  acc += w * v;
}

template <class E, std::size_t K>
inline void add_scaled(std::array<E, K>& acc, double w,
                       const std::array<E, K>& v) {
  for (std::size_t i = 0; i < K; ++i) acc[i] += w * v[i];
}

template <class T>
inline void add(T& acc, const T& v) {
  add_scaled(acc, 1.0, v);
}

template <class T>
inline T difference(const T& x, const T& y) {
  T d = x;
  add_scaled(d, -1.0, y);
  return d;
}

// Kronrod abscissae on [-1, 1] (non-negative half) and weights.
inline constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  std::array<double, ValueTraits<T>::size> err;
  int depth;
};

template <class T, class F>
Panel<T> gk15(F& f, double a, double b, int depth) {
  using Tr = ValueTraits<T>;
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T kronrod = Tr::zero();
  T gauss = Tr::zero();
  const T fc = f(centre);
  add_scaled(kronrod, kWgk[7], fc);
  add_scaled(gauss, kWg[3], fc);
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const T f1 = f(centre - dx);
    const T f2 = f(centre + dx);
    add_scaled(kronrod, kWgk[j], f1);
    add_scaled(kronrod, kWgk[j], f2);
    if (j % 2 == 1) {
      add_scaled(gauss, kWg[j / 2], f1);
      add_scaled(gauss, kWg[j / 2], f2);
    }
  }
  Panel<T> p{a, b, Tr::zero(), {}, depth};
  add_scaled(p.value, half, kronrod);
  T g = Tr::zero();
  add_scaled(g, half, gauss);
  const T diff = difference(p.value, g);
  for (std::size_t i = 0; i < Tr::size; ++i) p.err[i] = Tr::abs(diff, i);
  return p;
}

}  // namespace quad_detail

// Integrates f over [spec.a, spec.b]. The domain is first cut at the split
// points; afterwards the panel with the largest error relative to its
// component tolerance max(rel_tol*|total|, abs_tol) is bisected until every
// component converges. Throws ConvergenceError when the depth or panel budget
// runs out first.
template <class F>
auto integrate(F&& f, const IntegrationSpec& spec)
    -> IntegrationResult<std::decay_t<std::invoke_result_t<F&, double>>> {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  using Tr = quad_detail::ValueTraits<T>;
  constexpr std::size_t K = Tr::size;
  constexpr double kRoundoff = 1e-14;

  if (!(spec.b > spec.a) || !(spec.rel_tol > 0.0) || !(spec.abs_tol >= 0.0)) {
    throw DomainError("integrate: need a < b and positive tolerances");
  }

  std::vector<double> cuts{spec.a};
  {
    std::vector<double> inner;
    for (double s : spec.split_points) {
      if (s > spec.a && s < spec.b) inner.push_back(s);
    }
    std::sort(inner.begin(), inner.end());
    // Drop breakpoints that would make degenerate panels.
    const double min_gap = 1e-13 * (spec.b - spec.a);
    for (double s : inner) {
      if (s - cuts.back() > min_gap && spec.b - s > min_gap) cuts.push_back(s);
    }
    cuts.push_back(spec.b);
  }

  std::vector<quad_detail::Panel<T>> panels;
  panels.reserve(cuts.size() * 4);
  IntegrationResult<T> result;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    panels.push_back(quad_detail::gk15<T>(f, cuts[i], cuts[i + 1], 0));
    result.evaluations += 15;
  }

  for (;;) {
    T total = Tr::zero();
    std::array<double, K> err{};
    // Sum of panel magnitudes; sets the roundoff floor of the tolerance.
    std::array<double, K> mass{};
    for (const auto& p : panels) {
      quad_detail::add(total, p.value);
      for (std::size_t i = 0; i < K; ++i) {
        err[i] += p.err[i];
        mass[i] += Tr::abs(p.value, i);
      }
    }
    std::array<double, K> tol{};
    bool converged = true;
    double scale = 0.0;
    double mass_scale = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
      scale = std::max(scale, Tr::abs(total, i));
      mass_scale = std::max(mass_scale, mass[i]);
    }
    for (std::size_t i = 0; i < K; ++i) {
      const double mag = spec.joint_tolerance ? scale : Tr::abs(total, i);
      const double floor =
          kRoundoff * (spec.joint_tolerance ? mass_scale : mass[i]);
      tol[i] = std::max({spec.rel_tol * mag, spec.abs_tol, floor});
      if (!(err[i] <= tol[i])) converged = false;
    }
    if (converged) {
      result.value = total;
      result.err_estimate = *std::max_element(err.begin(), err.end());
      result.intervals = panels.size();
      return result;
    }

    // Worst splittable panel, scored by error over component tolerance.
    std::size_t worst = panels.size();
    double worst_score = -1.0;
    std::size_t worst_any = 0;
    double worst_any_score = -1.0;
    for (std::size_t j = 0; j < panels.size(); ++j) {
      double score = 0.0;
      for (std::size_t i = 0; i < K; ++i) {
        const double t = tol[i] > 0.0 ? tol[i] : 1e-300;
        score = std::max(score, panels[j].err[i] / t);
      }
      if (score > worst_any_score) {
        worst_any_score = score;
        worst_any = j;
      }
      if (panels[j].depth < spec.max_depth && score > worst_score) {
        worst_score = score;
        worst = j;
      }
    }
    if (worst == panels.size() || panels.size() >= spec.max_intervals) {
      const auto& p = panels[worst_any];
      const double perr = *std::max_element(p.err.begin(), p.err.end());
      std::ostringstream msg;
      msg.precision(17);
      msg << "adaptive quadrature on [" << spec.a << ", " << spec.b
          << "] did not converge; worst panel [" << p.a << ", " << p.b
          << "] error " << perr;
      throw ConvergenceError(msg.str(), p.a, p.b, perr);
    }

    const auto parent = panels[worst];
    const double mid = 0.5 * (parent.a + parent.b);
    panels[worst] = quad_detail::gk15<T>(f, parent.a, mid, parent.depth + 1);
    panels.push_back(quad_detail::gk15<T>(f, mid, parent.b, parent.depth + 1));
    result.evaluations += 30;
  }
}

}  // namespace eosq
