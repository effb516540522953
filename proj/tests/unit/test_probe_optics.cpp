#include <gtest/gtest.h>

#include "eosq/errors.hpp"
#include "fixtures.hpp"

namespace eosq {
namespace {

using testing::kPi;
using testing::kTHz;

ProbeSpectrum reference_probe(double amplitude = 2.5) {
  return ProbeSpectrum(SpectrumShape::rectangular, 255 * kTHz, 150 * kTHz,
                       amplitude, PhysicalConstants{});
}

TEST(PhaseFactor, SpecialAngles) {
  EXPECT_NEAR(std::abs(phase_factor(kPi / 2) - cplx(0, 1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(phase_factor(kPi) - cplx(1, 0)), 0.0, 1e-15);
  const cplx p = phase_factor(2 * kPi / 3);
  EXPECT_NEAR(std::norm(p), 1.0, 1e-14);
  EXPECT_NEAR(std::arg(p), kPi / 4, 1e-12);
}

TEST(PhaseFactor, RejectsPositiveCosine) {
  EXPECT_THROW(phase_factor(0.3), DomainError);
  EXPECT_THROW(phase_factor(1.6 * kPi), DomainError);
  EXPECT_THROW(balanced_waveplate_angle(0.0), DomainError);
  EXPECT_THROW(quadrature_phase(2 * kPi), DomainError);
}

TEST(PhaseFactor, AcceptsRangeEndpoints) {
  EXPECT_NO_THROW(phase_factor(kPi / 2));
  EXPECT_NO_THROW(phase_factor(3 * kPi / 2));
  EXPECT_NEAR(std::abs(phase_factor(3 * kPi / 2) - cplx(0, 1)), 0.0, 1e-7);
}

TEST(WaveplateAngle, SpecialAngles) {
  EXPECT_NEAR(balanced_waveplate_angle(kPi), kPi / 8, 1e-15);
  EXPECT_NEAR(balanced_waveplate_angle(kPi / 2), kPi / 4, 1e-7);
  const double t = 3 * kPi / 4;
  const double a = balanced_waveplate_angle(t);
  const double c = std::cos(t / 2);
  const double s = std::sin(t / 2);
  EXPECT_NEAR(std::acos(-1.0 / std::pow(std::tan(3 * kPi / 8), 2)) / 4, a, 1e-15);
  EXPECT_NEAR(c * c + s * s * std::cos(4 * a), 0.0, 1e-12);
}

TEST(QuadraturePhase, SpecialAngles) {
  EXPECT_NEAR(quadrature_phase(kPi / 2), kPi / 2, 1e-12);
  EXPECT_NEAR(quadrature_phase(kPi), 0.0, 1e-7);
  EXPECT_NEAR(quadrature_phase(2 * kPi / 3), kPi / 4, 1e-12);
}

TEST(Ellipsometry, IdentitiesOnDenseGrid) {
  for (int i = 0; i <= 4000; ++i) {
    const double t = kPi / 2 + kPi * i / 4000.0;
    const EllipsometryState st = EllipsometryState::at(t);
    EXPECT_NEAR(std::abs(st.P), 1.0, 1e-12);
    const double c = std::cos(t / 2);
    const double s = std::sin(t / 2);
    EXPECT_NEAR(c * c + s * s * std::cos(4 * st.alpha), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(std::exp(cplx(0, st.phi)) - st.P), 0.0, 1e-12);
    EXPECT_GE(st.phi, 0.0);
    EXPECT_LE(st.phi, kPi / 2);
  }
}

TEST(Envelope, RectangularSupport) {
  const ProbeSpectrum p = reference_probe();
  EXPECT_EQ(p.envelope(p.omega_c()), 2.5);
  EXPECT_EQ(p.envelope(p.omega_c() + 0.51 * p.delta_omega()), 0.0);
  EXPECT_EQ(p.envelope(p.omega_c() - 0.51 * p.delta_omega()), 0.0);
  EXPECT_DOUBLE_EQ(p.support().first, 180 * kTHz);
  EXPECT_DOUBLE_EQ(p.support().second, 330 * kTHz);
  EXPECT_DOUBLE_EQ(p.omega_max(), 150 * kTHz);
}

TEST(Envelope, EnergyIntegralClosedForm) {
  const ProbeSpectrum p = reference_probe();
  EXPECT_NEAR(p.energy_integral() / (2.5 * 2.5 * 150 * kTHz), 1.0, 1e-12);
}

TEST(Envelope, RejectsSupportReachingZero) {
  EXPECT_THROW(ProbeSpectrum(SpectrumShape::rectangular, 50 * kTHz, 150 * kTHz, 1.0,
                             PhysicalConstants{}),
               DomainError);
}

TEST(ProbeSpectrum, PhotonNumberAndMeanFrequencyClosedForms) {
  const PhysicalConstants c;
  for (double width : {20.0, 150.0, 400.0}) {
    const double wc = 255 * kTHz;
    const double dw = width * kTHz;
    const ProbeSpectrum p(SpectrumShape::rectangular, wc, dw, 3.0, c);
    const double log_ratio = std::log((wc + dw / 2) / (wc - dw / 2));
    EXPECT_NEAR(p.photon_number() / (c.C() * 9.0 * log_ratio / c.hbar), 1.0, 1e-9);
    EXPECT_NEAR(p.omega_p() / (dw / log_ratio), 1.0, 1e-9);
    EXPECT_GT(p.omega_p(), p.support().first);
    EXPECT_LT(p.omega_p(), p.support().second);
  }
}

TEST(ProbeSpectrum, WithPhotonNumber) {
  const ProbeSpectrum p = reference_probe().with_photon_number(1e8);
  EXPECT_NEAR(p.photon_number() / 1e8, 1.0, 1e-12);
  EXPECT_NEAR(p.omega_p() / reference_probe().omega_p(), 1.0, 1e-13);
}

TEST(ProbeSpectrum, GaussianMomentsMatchTrapezoid) {
  const PhysicalConstants c;
  const ProbeSpectrum p(SpectrumShape::gaussian, 255 * kTHz, 20 * kTHz, 1.0, c);
  const auto [lo, hi] = p.support();
  auto e2 = [&](double w) { return p.envelope(w) * p.envelope(w); };
  const double energy = testing::trapezoid(e2, lo, hi, 1 << 18);
  const double inv = testing::trapezoid([&](double w) { return e2(w) / w; }, lo, hi, 1 << 18);
  EXPECT_NEAR(p.energy_integral() / energy, 1.0, 1e-10);
  EXPECT_NEAR(p.omega_p() / (energy / inv), 1.0, 1e-10);
  // Standard deviation of |E|^2 is the configured width.
  const double mean = testing::trapezoid([&](double w) { return w * e2(w); }, lo, hi, 1 << 18) / energy;
  const double var = testing::trapezoid([&](double w) { return (w - mean) * (w - mean) * e2(w); },
                                        lo, hi, 1 << 18) / energy;
  EXPECT_NEAR(std::sqrt(var) / (20 * kTHz), 1.0, 1e-9);
  EXPECT_NEAR(p.envelope(hi) / p.envelope(p.omega_c()), 1e-8, 1e-12);
}

TEST(Overlap, DisjointSupportsVanish) {
  const ProbeSpectrum p = reference_probe();
  for (double frac : {1.0, 1.01, 1.5}) {
    const double W = frac * p.delta_omega();
    for (int i = 0; i <= 50; ++i) {
      const double w = p.support().first + p.delta_omega() * i / 50.0;
      EXPECT_EQ(overlap_f(OverlapSign::minus, w, W, kPi / 2, p), cplx(0.0));
      EXPECT_EQ(overlap_f(OverlapSign::plus, w, W, kPi / 2, p), cplx(0.0));
    }
  }
}

TEST(Overlap, QuarterWaveInSupport) {
  const ProbeSpectrum p = reference_probe();
  const cplx f = overlap_f(OverlapSign::minus, p.omega_c(), p.delta_omega() / 4, kPi / 2, p);
  EXPECT_NEAR(std::abs(f - cplx(0, 1) / p.delta_omega()) * p.delta_omega(), 0.0, 1e-12);
}

TEST(Overlap, IndexShiftIdentity) {
  const ProbeSpectrum p = reference_probe();
  for (double theta : {kPi / 2, 0.8 * kPi, kPi, 1.3 * kPi}) {
    for (int i = 0; i <= 60; ++i) {
      const double W = p.delta_omega() * i / 60.0 * 0.97;
      for (int j = 0; j <= 60; ++j) {
        const double w = (170.0 + 170.0 * j / 60.0) * kTHz;
        EXPECT_EQ(overlap_f(OverlapSign::plus, w, W, theta, p),
                  overlap_f(OverlapSign::minus, w + W, W, theta, p));
      }
    }
  }
}

TEST(Overlap, CarriesPhaseFactor) {
  const ProbeSpectrum p = reference_probe();
  const double w = 250 * kTHz;
  const double W = 20 * kTHz;
  const double shape = p.overlap_shape(OverlapSign::minus, w, W);
  const cplx f = overlap_f(OverlapSign::minus, w, W, 0.7 * kPi, p);
  EXPECT_NEAR(std::abs(f - phase_factor(0.7 * kPi) * shape) / std::abs(f), 0.0, 1e-15);
}

}  // namespace
}  // namespace eosq
