#include <gtest/gtest.h>

#include <random>

#include "eosq/errors.hpp"
#include "eosq/quadrature.hpp"
#include "fixtures.hpp"

namespace eosq {
namespace {

TEST(Integrate, Constant) {
  IntegrationSpec spec;
  const auto r = integrate([](double) { return 1.0; }, spec);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_EQ(r.evaluations, 15u);
}

TEST(Integrate, LorentzianClosedForm) {
  const double w0 = 3.7e14;
  const double g = 2.1e12;
  IntegrationSpec spec;
  spec.a = w0 - 50 * g;
  spec.b = w0 + 50 * g;
  spec.rel_tol = 1e-12;
  const auto r = integrate([&](double w) { return 1.0 / cplx(w - w0, g); }, spec);
  // Antiderivative log(w - w0 + i g).
  const cplx oracle = std::log(cplx(50 * g, g)) - std::log(cplx(-50 * g, g));
  EXPECT_NEAR(oracle.real(), 0.0, 1e-14);
  EXPECT_NEAR(oracle.imag(), -2 * std::atan(50.0), 1e-14);
  EXPECT_LT(std::abs(r.value - oracle), 1e-11 * std::abs(oracle));
  EXPECT_NEAR(r.value.real(), 0.0, 1e-11);
}

TEST(Integrate, ErrorEstimateWithinTolerance) {
  for (double tol : {1e-6, 1e-9, 1e-12}) {
    IntegrationSpec spec;
    spec.a = 0.0;
    spec.b = 10.0;
    spec.rel_tol = tol;
    const auto r = integrate([](double x) { return std::exp(-x) * std::sin(5 * x); }, spec);
    EXPECT_LE(r.err_estimate, tol * std::abs(r.value));
    const double exact = 5.0 / 26.0 * (1.0 - std::exp(-10.0) * (std::cos(50.0) + std::sin(50.0) / 5.0));
    EXPECT_NEAR(r.value, exact, 10 * tol * std::abs(exact));
  }
}

TEST(Integrate, RefinementConsistency) {
  const double w0 = 1.0;
  const double g = 1e-3;
  auto f = [&](double w) { return cplx(1.0, 0.3 * w) / cplx(w - w0, g) / cplx(w + 0.2, 0.05); };
  IntegrationSpec spec;
  spec.a = 0.0;
  spec.b = 3.0;
  spec.rel_tol = 1e-6;
  const auto coarse = integrate(f, spec);
  spec.rel_tol = 5e-7;
  const auto fine = integrate(f, spec);
  EXPECT_LT(std::abs(fine.value - coarse.value), coarse.err_estimate);
}

TEST(Integrate, Linearity) {
  auto f = [](double x) { return cplx(std::cos(3 * x), x * x); };
  auto g = [](double x) { return cplx(1.0 / (1 + x), std::exp(-x)); };
  const cplx alpha(0.7, -1.2);
  const cplx beta(-2.5, 0.4);
  IntegrationSpec spec;
  spec.a = 0.0;
  spec.b = 4.0;
  spec.rel_tol = 1e-11;
  const auto rf = integrate(f, spec);
  const auto rg = integrate(g, spec);
  const auto rh = integrate([&](double x) { return alpha * f(x) + beta * g(x); }, spec);
  const double tol = std::abs(alpha) * rf.err_estimate + std::abs(beta) * rg.err_estimate +
                     rh.err_estimate + 1e-14;
  EXPECT_LT(std::abs(rh.value - (alpha * rf.value + beta * rg.value)), 10 * tol);
}

TEST(Integrate, SplitPointsResolveNarrowPeak) {
  const double w0 = 0.37;
  const double g = 1e-9;
  auto f = [&](double w) { return g / ((w - w0) * (w - w0) + g * g); };
  IntegrationSpec spec;
  spec.a = 0.0;
  spec.b = 1.0;
  spec.rel_tol = 1e-10;
  spec.split_points = {w0, 5.0, -1.0};
  const auto r = integrate(f, spec);
  const double exact = std::atan((1 - w0) / g) + std::atan(w0 / g);
  EXPECT_NEAR(r.value / exact, 1.0, 1e-9);
}

TEST(Integrate, VectorComponentsShareTree) {
  IntegrationSpec spec;
  spec.a = 0.0;
  spec.b = 2.0;
  spec.rel_tol = 1e-12;
  const auto r = integrate(
      [](double x) { return std::array<cplx, 3>{cplx(x), cplx(0, x * x), cplx(std::exp(x))}; },
      spec);
  EXPECT_NEAR(r.value[0].real(), 2.0, 1e-12);
  EXPECT_NEAR(r.value[1].imag(), 8.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.value[2].real(), std::exp(2.0) - 1.0, 1e-11);
}

TEST(Integrate, JointToleranceAcceptsTinyComponent) {
  IntegrationSpec spec;
  spec.a = 0.0;
  spec.b = 1.0;
  spec.rel_tol = 1e-10;
  spec.joint_tolerance = true;
  const auto r = integrate(
      [](double x) { return std::array<double, 2>{1.0, 1e-30 * std::sin(1.0 / (x + 1e-4))}; },
      spec);
  EXPECT_NEAR(r.value[0], 1.0, 1e-12);
}

TEST(Integrate, ConvergenceErrorReportsWorstPanel) {
  IntegrationSpec spec;
  spec.a = 0.0;
  spec.b = 1.0;
  spec.rel_tol = 1e-12;
  spec.max_intervals = 8;
  try {
    integrate([](double x) { return std::sin(1.0 / (x + 1e-6)); }, spec);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GE(e.worst_a(), 0.0);
    EXPECT_LE(e.worst_b(), 1.0);
    EXPECT_LT(e.worst_a(), e.worst_b());
    EXPECT_LT(e.worst_a(), 0.1);
    EXPECT_GT(e.worst_error(), 0.0);
    EXPECT_NE(std::string(e.what()).find("worst panel"), std::string::npos);
  }
}

TEST(Integrate, DepthLimitThrows) {
  IntegrationSpec spec;
  spec.a = 0.0;
  spec.b = 1.0;
  spec.rel_tol = 1e-12;
  spec.max_depth = 2;
  EXPECT_THROW(integrate([](double x) { return 1.0 / std::sqrt(x + 1e-12); }, spec),
               QuadratureError);
}

TEST(Integrate, RejectsBadSpecs) {
  IntegrationSpec spec;
  spec.a = 1.0;
  spec.b = 1.0;
  EXPECT_THROW(integrate([](double) { return 1.0; }, spec), DomainError);
  spec.b = 2.0;
  spec.rel_tol = 0.0;
  EXPECT_THROW(integrate([](double) { return 1.0; }, spec), DomainError);
}

TEST(Integrate, BitwiseDeterministic) {
  IntegrationSpec spec;
  spec.a = -3.0;
  spec.b = 7.0;
  spec.rel_tol = 1e-10;
  spec.split_points = {0.5, 2.0};
  auto f = [](double x) { return cplx(1.0, x) / cplx(x - 0.5, 1e-3) / cplx(x - 2.0, 1e-2); };
  const auto a = integrate(f, spec);
  const auto b = integrate(f, spec);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.err_estimate, b.err_estimate);
  EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(Integrate, AgreesWithDenseTrapezoidOnRationalIntegrands) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    const double w0 = 0.2 + 0.6 * u(rng);
    const double g = 0.005 + 0.05 * u(rng);
    const cplx c(u(rng), u(rng));
    auto f = [&](double w) { return c / cplx(w - w0, g) / cplx(w + w0, g); };
    IntegrationSpec spec;
    spec.a = 0.0;
    spec.b = 1.0;
    spec.rel_tol = 1e-10;
    spec.split_points = {w0};
    const auto r = integrate(f, spec);
    const cplx ref = testing::trapezoid(f, 0.0, 1.0, std::size_t(1) << 20);
    EXPECT_LT(std::abs(r.value - ref) / std::abs(ref), 1e-6);
  }
}

}  // namespace
}  // namespace eosq
