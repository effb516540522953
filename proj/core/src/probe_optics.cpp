#include "eosq/probe_optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eosq/errors.hpp"
#include "eosq/quadrature.hpp"

namespace eosq {

namespace {

constexpr double kPi = std::numbers::pi;
// |E| / peak at the Gaussian support edge.
constexpr double kGaussianCut = 1e-8;

// -cos(theta) clamped at zero, after the range check.
double minus_cos(double theta) {
  if (!(theta >= kPi / 2 - kThetaSlack && theta <= 3 * kPi / 2 + kThetaSlack)) {
    throw DomainError("theta must lie in [pi/2, 3pi/2]");
  }
  return std::max(0.0, -std::cos(theta));
}

}  // namespace

cplx phase_factor(double theta) {
  const double mc = minus_cos(theta);
  return {std::sqrt(mc), std::sqrt(std::max(0.0, 1.0 - mc))};
}

double balanced_waveplate_angle(double theta) {
  minus_cos(theta);
  const double t = std::tan(theta / 2);
  const double cot2 = std::clamp(1.0 / (t * t), 0.0, 1.0);
  return std::acos(-cot2) / 4;
}

double quadrature_phase(double theta) {
  return std::acos(std::min(1.0, std::sqrt(minus_cos(theta))));
}

EllipsometryState EllipsometryState::at(double theta) {
  return {theta, balanced_waveplate_angle(theta), phase_factor(theta),
          quadrature_phase(theta)};
}

ProbeSpectrum::ProbeSpectrum(SpectrumShape shape, double omega_c,
                             double delta_omega, double amplitude_scale,
                             PhysicalConstants consts)
    : shape_(shape),
      omega_c_(omega_c),
      delta_omega_(delta_omega),
      amplitude_(amplitude_scale),
      consts_(consts) {
  if (!(delta_omega > 0.0) || !(amplitude_scale > 0.0)) {
    throw DomainError("probe width and amplitude must be positive");
  }
  if (shape_ == SpectrumShape::rectangular) {
    support_ = {omega_c - delta_omega / 2, omega_c + delta_omega / 2};
  } else {
    const double half = 2 * delta_omega * std::sqrt(-std::log(kGaussianCut));
    support_ = {omega_c - half, omega_c + half};
  }
  if (!(support_.first > 0.0)) {
    throw DomainError("probe support must lie at positive frequencies");
  }

  IntegrationSpec spec;
  spec.a = support_.first;
  spec.b = support_.second;
  spec.split_points = {omega_c};
  spec.rel_tol = 1e-13;
  const auto r = integrate(
      [this](double w) {
        const double e = envelope(w);
        return std::array<double, 2>{e * e, e * e / w};
      },
      spec);
  energy_ = r.value[0];
  photon_number_ = consts_.C() * r.value[1] / consts_.hbar;
  omega_p_ = r.value[0] / r.value[1];
}

double ProbeSpectrum::envelope(double omega) const noexcept {
  if (omega < support_.first || omega > support_.second) return 0.0;
  if (shape_ == SpectrumShape::rectangular) return amplitude_;
  const double x = (omega - omega_c_) / delta_omega_;
  return amplitude_ * std::exp(-x * x / 4);
}

double ProbeSpectrum::omega_max() const noexcept {
  if (shape_ == SpectrumShape::rectangular) return delta_omega_;
  return delta_omega_ * std::sqrt(-8 * std::log(kGaussianCut));
}

ProbeSpectrum ProbeSpectrum::with_photon_number(double n) const {
  if (!(n > 0.0)) throw DomainError("photon number must be positive");
  return ProbeSpectrum(shape_, omega_c_, delta_omega_,
                       amplitude_ * std::sqrt(n / photon_number_), consts_);
}

double ProbeSpectrum::overlap_shape(OverlapSign sign, double omega,
                                    double Omega) const noexcept {
  if (shape_ == SpectrumShape::rectangular && Omega >= delta_omega_) return 0.0;
  const double partner = sign == OverlapSign::plus ? omega + Omega
                                                   : omega - Omega;
  return envelope(omega) * envelope(partner) / energy_;
}

cplx overlap_f(OverlapSign sign, double omega, double Omega, double theta,
               const ProbeSpectrum& probe) {
  return phase_factor(theta) * probe.overlap_shape(sign, omega, Omega);
}

}  // namespace eosq
