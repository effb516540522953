#pragma once

// Coherent probe spectrum and ellipsometry geometry.

#include <complex>
#include <utility>

#include "eosq/model_core.hpp"

namespace eosq {

enum class SpectrumShape { rectangular, gaussian };

enum class OverlapSign { plus, minus };

// Accepted theta range is [pi/2, 3pi/2] up to this slack; cos(theta) is
// clamped to <= 0 inside it.
inline constexpr double kThetaSlack = 1e-12;

// sqrt(-cos theta) + i sqrt(1 + cos theta)
cplx phase_factor(double theta);

// alpha with cos^2(theta/2) + sin^2(theta/2) cos(4 alpha) = 0
double balanced_waveplate_angle(double theta);

// phi in [0, pi/2] with exp(i phi) = phase_factor(theta)
double quadrature_phase(double theta);

struct EllipsometryState {
  double theta;
  double alpha;
  cplx P;
  double phi;

  static EllipsometryState at(double theta);
};

class ProbeSpectrum {
 public:
  // delta_omega is the full width of the flat top for the rectangular shape
  // and the standard deviation of |E|^2 for the Gaussian one.
  ProbeSpectrum(SpectrumShape shape, double omega_c, double delta_omega,
                double amplitude_scale, PhysicalConstants consts);

  SpectrumShape shape() const noexcept { return shape_; }
  double omega_c() const noexcept { return omega_c_; }
  double delta_omega() const noexcept { return delta_omega_; }
  double amplitude_scale() const noexcept { return amplitude_; }
  const PhysicalConstants& constants() const noexcept { return consts_; }

  // Real amplitude E_p,z(omega); zero off the support.
  double envelope(double omega) const noexcept;

  // [lower, upper] outside of which the envelope is treated as zero. For the
  // Gaussian shape, where |E| falls below 1e-8 of its peak.
  std::pair<double, double> support() const noexcept { return support_; }

  // THz frequency beyond which f+- vanish (or drop below 1e-8 of peak).
  double omega_max() const noexcept;

  double energy_integral() const noexcept { return energy_; }  // int |E|^2
  double photon_number() const noexcept { return photon_number_; }
  double omega_p() const noexcept { return omega_p_; }

  // Same shape with amplitude_scale chosen so that photon_number() == n.
  ProbeSpectrum with_photon_number(double n) const;

  // E(omega) E(omega +- Omega) / int |E|^2, i.e. f+- without P(theta).
  double overlap_shape(OverlapSign sign, double omega,
                       double Omega) const noexcept;

 private:
  SpectrumShape shape_;
  double omega_c_;
  double delta_omega_;
  double amplitude_;
  PhysicalConstants consts_;
  std::pair<double, double> support_;
  double energy_ = 0.0;
  double photon_number_ = 0.0;
  double omega_p_ = 0.0;
};

// P(theta) E*(omega) E(omega +- Omega) / int |E|^2
cplx overlap_f(OverlapSign sign, double omega, double Omega, double theta,
               const ProbeSpectrum& probe);

}  // namespace eosq
