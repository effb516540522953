#include <gtest/gtest.h>

#include <random>

#include "eosq/errors.hpp"
#include "fixtures.hpp"

namespace eosq {
namespace {

using testing::kTHz;

// Direct transcription of the closed form, one propagator at a time.
cplx chi2_reference(int r, int s, double w2, double w1, const LevelScheme& sc) {
  auto I = [&](Level a, Level b, double w) {
    const double wab = sc.transition(a, b);
    const double gab = sc.linewidth(a, b);
    return 1.0 / cplx(w - wab, gab);
  };
  const Level g = Level::g;
  cplx sum = 0.0;
  for (Level a : {Level::gprime, Level::f}) {
    for (Level b : {Level::gprime, Level::f}) {
      const double mu = sc.dipole(g, b) * sc.dipole(b, a) * sc.dipole(a, g);
      const double W = w2 + w1;
      sum += mu * (I(b, g, W) * I(a, g, w1) + double(s) * I(a, b, W) * I(g, b, w1) +
                   double(r * s) * I(g, a, W) * I(g, b, w1) +
                   double(r) * I(a, b, W) * I(a, g, w1));
    }
  }
  return std::pow(2.0, -1.0 - (r + s) / 2.0) * sum;
}

LevelScheme full_scheme() {
  PairTable gamma;
  gamma.set(Level::gprime, Level::g, 2.0 * kTHz);
  gamma.set(Level::f, Level::g, 3.5 * kTHz);
  gamma.set(Level::f, Level::gprime, 1.25 * kTHz);
  gamma.set(Level::g, Level::g, 0.5 * kTHz);
  gamma.set(Level::gprime, Level::gprime, 0.75 * kTHz);
  gamma.set(Level::f, Level::f, 0.9 * kTHz);
  PairTable mu;
  mu.set(Level::g, Level::gprime, 1.3);
  mu.set(Level::g, Level::f, -0.7);
  mu.set(Level::gprime, Level::f, 2.1);
  mu.set(Level::gprime, Level::gprime, 0.4);
  mu.set(Level::f, Level::f, -0.2);
  return LevelScheme(60 * kTHz, 450 * kTHz, gamma, mu);
}

TEST(Propagator, OnResonanceIsMinusIOverGamma) {
  const LevelScheme sc = testing::simple_scheme(60, 450, 2);
  const double w = sc.omega_gprime_g();
  const cplx v = propagator(Level::gprime, Level::g, w, sc);
  EXPECT_DOUBLE_EQ(v.real(), 0.0);
  EXPECT_DOUBLE_EQ(v.imag(), -1.0 / sc.linewidth(Level::gprime, Level::g));
}

TEST(Propagator, DiagonalPairAtZeroFrequency) {
  PairTable gamma;
  gamma.set(Level::gprime, Level::g, 1.0);
  gamma.set(Level::f, Level::g, 1.0);
  gamma.set(Level::f, Level::gprime, 1.0);
  gamma.set(Level::g, Level::g, 1.0);
  gamma.set(Level::gprime, Level::gprime, 1.0);
  gamma.set(Level::f, Level::f, 1.0);
  PairTable mu;
  const LevelScheme sc(10.0, 20.0, gamma, mu);
  const cplx v = propagator(Level::g, Level::g, 0.0, sc);
  EXPECT_EQ(v, cplx(0.0, -1.0));
}

TEST(Propagator, FarAboveResonance) {
  const LevelScheme sc = testing::simple_scheme(60, 450, 0.01);
  const double w = 2.0 * sc.omega_f_g();
  const cplx v = propagator(Level::f, Level::g, w, sc);
  const cplx oracle = cplx(1.0) / cplx(sc.omega_f_g(), 0.01 * kTHz);
  EXPECT_NEAR(std::abs(v - oracle) / std::abs(oracle), 0.0, 1e-15);
  EXPECT_NEAR(v.real() * sc.omega_f_g(), 1.0, 1e-8);
}

TEST(Propagator, InverseIdentity) {
  const LevelScheme sc = full_scheme();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-900 * kTHz, 900 * kTHz);
  const Level all[] = {Level::g, Level::gprime, Level::f};
  for (int k = 0; k < 200; ++k) {
    const double w = dist(rng);
    for (Level a : all) {
      for (Level b : all) {
        const cplx denom(w - sc.transition(a, b), sc.linewidth(a, b));
        const cplx one = propagator(a, b, w, sc) * denom;
        EXPECT_NEAR(one.real(), 1.0, 1e-14);
        EXPECT_NEAR(one.imag(), 0.0, 1e-14);
      }
    }
  }
}

TEST(LevelScheme, AntisymmetricTransitions) {
  const LevelScheme sc = full_scheme();
  EXPECT_EQ(sc.transition(Level::g, Level::gprime), -sc.omega_gprime_g());
  EXPECT_EQ(sc.transition(Level::f, Level::f), 0.0);
  EXPECT_EQ(sc.transition(Level::f, Level::gprime),
            sc.omega_f_g() - sc.omega_gprime_g());
  EXPECT_EQ(sc.linewidth(Level::g, Level::f), sc.linewidth(Level::f, Level::g));
  EXPECT_EQ(sc.dipole(Level::f, Level::gprime), sc.dipole(Level::gprime, Level::f));
}

TEST(LevelScheme, RejectsInvalidSchemes) {
  PairTable gamma;
  for (Level a : {Level::g, Level::gprime, Level::f}) {
    for (Level b : {Level::g, Level::gprime, Level::f}) gamma.set(a, b, 1.0);
  }
  PairTable mu;
  EXPECT_THROW(LevelScheme(20.0, 10.0, gamma, mu), DomainError);
  EXPECT_THROW(LevelScheme(0.0, 10.0, gamma, mu), DomainError);
  PairTable bad = gamma;
  bad.set(Level::f, Level::f, 0.0);
  EXPECT_THROW(LevelScheme(10.0, 20.0, bad, mu), DomainError);
}

TEST(LevelScheme, DefaultDiagonalsCopyOffDiagonal) {
  const LevelScheme sc = LevelScheme::with_default_diagonals(1, 2, 0.1, 0.2, 0.3, 1, 1, 1);
  EXPECT_EQ(sc.linewidth(Level::gprime, Level::gprime), 0.1);
  EXPECT_EQ(sc.linewidth(Level::f, Level::f), 0.2);
  EXPECT_EQ(sc.dipole(Level::f, Level::f), 0.0);
}

TEST(Chi2, PrefactorTable) {
  using S = SuperopIndex;
  EXPECT_EQ(chi2_prefactor(S::minus, S::minus), 1.0);
  EXPECT_EQ(chi2_prefactor(S::plus, S::minus), 0.5);
  EXPECT_EQ(chi2_prefactor(S::minus, S::plus), 0.5);
  EXPECT_EQ(chi2_prefactor(S::plus, S::plus), 0.25);
}

TEST(Chi2, MatchesDirectTranscription) {
  const LevelScheme sc = full_scheme();
  const PhysicalConstants c;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-700 * kTHz, 700 * kTHz);
  for (int k = 0; k < 300; ++k) {
    const double w2 = dist(rng);
    const double w1 = dist(rng);
    for (int r : {-1, 1}) {
      for (int s : {-1, 1}) {
        const cplx got = chi2(SuperopIndex(r), SuperopIndex(s), w2, w1, sc, c);
        const cplx want = chi2_reference(r, s, w2, w1, sc);
        EXPECT_LT(testing::rel_diff(got, want), 1e-12) << r << s << " " << w2 << " " << w1;
      }
    }
  }
}

TEST(Chi2, PatternsAgreeWithSinglePatternCalls) {
  const ThreeLevelSusceptibility chi(full_scheme(), PhysicalConstants{});
  const double w2 = 37 * kTHz;
  const double w1 = 241 * kTHz;
  const Chi2Patterns p = chi.patterns(w2, w1);
  using S = SuperopIndex;
  EXPECT_LT(testing::rel_diff(p.mm, chi(S::minus, S::minus, w2, w1)), 1e-14);
  EXPECT_LT(testing::rel_diff(p.pm, chi(S::plus, S::minus, w2, w1)), 1e-14);
  EXPECT_LT(testing::rel_diff(p.mp, chi(S::minus, S::plus, w2, w1)), 1e-14);
  EXPECT_LT(testing::rel_diff(p.pp, chi(S::plus, S::plus, w2, w1)), 1e-14);
  EXPECT_EQ(p.get(S::plus, S::minus), p.pm);
}

TEST(Chi2, ClassicalAliasIsBitExact) {
  const LevelScheme sc = full_scheme();
  const PhysicalConstants c;
  for (double w2 : {-50 * kTHz, 3 * kTHz, 120 * kTHz}) {
    for (double w1 : {-300 * kTHz, 200 * kTHz, 330 * kTHz}) {
      EXPECT_EQ(chi2_classical(w2, w1, sc, c),
                chi2(SuperopIndex::minus, SuperopIndex::minus, w2, w1, sc, c));
    }
  }
}

TEST(Chi2, ConjugationUnderFrequencyNegation) {
  const LevelScheme sc = full_scheme();
  const PhysicalConstants c;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-600 * kTHz, 600 * kTHz);
  for (int k = 0; k < 200; ++k) {
    const double w2 = dist(rng);
    const double w1 = dist(rng);
    const cplx a = chi2_classical(-w2, -w1, sc, c);
    const cplx b = std::conj(chi2_classical(w2, w1, sc, c));
    EXPECT_LT(testing::rel_diff(a, b), 1e-12);
  }
}

TEST(Chi2, OffResonantLimitIsNearlyConstant) {
  const LevelScheme sc = testing::simple_scheme(255e3, 1000e3, 1.0);
  const PhysicalConstants c;
  double lo = 1e300;
  double hi = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double w1 = (180.0 + 150.0 * i / 40.0) * kTHz;
    for (int j = 0; j <= 40; ++j) {
      const double w2 = 150.0 * j / 40.0 * kTHz;
      const double m = std::abs(chi2_classical(w2, w1 - w2, sc, c));
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
  }
  EXPECT_LT(hi / lo - 1.0, 1e-3);
}

TEST(Chi2, FiniteEverywhereOnResonantGrid) {
  const LevelScheme sc = full_scheme();
  const PhysicalConstants c;
  for (int i = -200; i <= 200; ++i) {
    for (int j = -200; j <= 200; j += 7) {
      const cplx v = chi2(SuperopIndex::plus, SuperopIndex::minus, i * 3 * kTHz,
                          j * 3 * kTHz, sc, c);
      ASSERT_TRUE(std::isfinite(v.real()) && std::isfinite(v.imag()));
    }
  }
}

TEST(Chi2, CubicDipoleScaling) {
  const LevelScheme sc = full_scheme();
  const PhysicalConstants c;
  const double lambda = 1.7;
  const LevelScheme scaled = sc.with_scaled_dipoles(lambda);
  for (int r : {-1, 1}) {
    for (int s : {-1, 1}) {
      const cplx a = chi2(SuperopIndex(r), SuperopIndex(s), 40 * kTHz, 230 * kTHz, scaled, c);
      const cplx b = chi2(SuperopIndex(r), SuperopIndex(s), 40 * kTHz, 230 * kTHz, sc, c);
      EXPECT_LT(testing::rel_diff(a, lambda * lambda * lambda * b), 1e-13);
    }
  }
}

TEST(Chi2, SiModeCouplingFactor) {
  PhysicalConstants c;
  c.mode = UnitMode::si;
  const ThreeLevelSusceptibility chi(full_scheme(), c);
  EXPECT_DOUBLE_EQ(chi.coupling(), c.number_density / (c.eps0 * c.hbar * c.hbar));
  const ThreeLevelSusceptibility norm(full_scheme(), PhysicalConstants{});
  EXPECT_EQ(norm.coupling(), 1.0);
}

TEST(Chi2, ResonancesListBothSigns) {
  const ThreeLevelSusceptibility chi(full_scheme(), PhysicalConstants{});
  const auto res = chi.resonances();
  auto has = [&](double w) {
    return std::any_of(res.begin(), res.end(),
                       [&](const Resonance& r) { return std::abs(r.omega - w) < 1.0; });
  };
  EXPECT_TRUE(has(60 * kTHz));
  EXPECT_TRUE(has(-60 * kTHz));
  EXPECT_TRUE(has(450 * kTHz));
  EXPECT_TRUE(has(390 * kTHz));
  EXPECT_TRUE(has(-390 * kTHz));
}

TEST(ConstantSusceptibility, ClassicalOnly) {
  const ConstantSusceptibility chi(cplx(2.0, 0.5));
  using S = SuperopIndex;
  EXPECT_EQ(chi(S::minus, S::minus, 1.0, 2.0), cplx(2.0, 0.5));
  EXPECT_EQ(chi(S::plus, S::minus, 1.0, 2.0), cplx(0.0));
  EXPECT_EQ(chi.patterns(1.0, 2.0).mp, cplx(0.0));
}

TEST(PhysicalConstants, CIsPositive) {
  const PhysicalConstants c;
  EXPECT_GT(c.C(), 0.0);
  EXPECT_DOUBLE_EQ(c.C(), 4 * std::numbers::pi * c.eps0 * c.beam_area * c.c0);
}

}  // namespace
}  // namespace eosq
