// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>

#include "xfnoise/aperture.hpp"
#include "xfnoise/core.hpp"
#include "xfnoise/environment.hpp"
#include "xfnoise/sphere.hpp"

namespace xfnoise {

/// External noise temperature of an LTI antenna in an isotropic background:
/// eta*tau*T_b.
inline double lti_noise_temperature_iso(double eta_tau, double brightness_kelvin) {
  if (!(eta_tau >= 0.0 && eta_tau <= 1.0))
    throw std::domain_error("eta*tau must lie in [0, 1]");
  if (!(brightness_kelvin >= 0.0)) throw std::domain_error("brightness must be >= 0");
  return eta_tau * brightness_kelvin;
}

/// Angularly resolved LTI noise temperature:
///   T_A = lambda^-2 * integral A_eff(k) T_b(k) dk
/// evaluated with the supplied sphere rule.  `aperture` maps a unit vector to
/// m^2 and `brightness` to K.
template <class ApertureFn, class BrightFn>
double lti_noise_temperature_angular(ApertureFn&& aperture, BrightFn&& brightness,
                                     double wavelength, const SphereQuadrature& quad) {
  if (!(wavelength > 0.0)) throw std::domain_error("wavelength must be positive");
  quad.validate();
  double acc = 0.0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Vec3& k = quad.nodes[i];
    acc += quad.weights[i] * aperture(k) * brightness(k);
  }
  return acc / (wavelength * wavelength);
}

/// Time-varying external noise temperature in an isotropic background:
///   T_A = 4*pi * sum_p T_b^p * Abar^p / lambda_p^2
/// with lambda_p = 2*pi*c / (w0 + p*wm).  Harmonics at non-positive
/// frequencies are rejected unless the set is marked fold_negative, in which
/// case |w0 + p*wm| is used for both the brightness lookup and lambda_p.
inline double tv_noise_temperature_iso(const HarmonicApertureSet& set,
                                       const SpectralEnvironment& env) {
  set.validate();
  if (!env.brightness) throw std::invalid_argument("environment: brightness function not set");
  double acc = 0.0;
  for (int p = -set.order; p <= set.order; ++p) {
    const double abar = set.mean_at(p);
    double w = set.sideband_freq(p);
    if (w <= 0.0) {
      if (abar == 0.0) continue;
      if (!set.fold_negative)
        throw std::domain_error("tv_noise_temperature_iso: harmonic at non-positive frequency "
                                "carries a non-zero aperture");
      w = std::abs(w);
      if (w == 0.0)
        throw std::domain_error("tv_noise_temperature_iso: harmonic frequency is zero");
    }
    if (abar == 0.0) continue;
    const double tb = env.brightness_at(w);
    const double inv_lambda = w / (two_pi * constants::c0);
    acc += tb * abar * inv_lambda * inv_lambda;
  }
  return 4.0 * pi * acc;
}

/// Angularly resolved time-varying noise temperature:
///   T_A = sum_p lambda_p^-2 * integral A^p(k) T_b^p(k) dk.
/// `aperture(p, k)` in m^2, `brightness(p, k)` in K.
template <class ApertureFn, class BrightFn>
double tv_noise_temperature_angular(ApertureFn&& aperture, BrightFn&& brightness,
                                    double obs_freq, double mod_freq, int order,
                                    const SphereQuadrature& quad) {
  if (order < 0) throw std::invalid_argument("order must be >= 0");
  quad.validate();
  double total = 0.0;
  for (int p = -order; p <= order; ++p) {
    const double w = obs_freq + p * mod_freq;
    double acc = 0.0;
    for (std::size_t i = 0; i < quad.size(); ++i) {
      const Vec3& k = quad.nodes[i];
      const double a = aperture(p, k);
      if (w <= 0.0) {
        if (a != 0.0)
          throw std::domain_error("tv_noise_temperature_angular: harmonic at non-positive "
                                  "frequency carries a non-zero aperture");
        continue;
      }
      acc += quad.weights[i] * a * brightness(p, k);
    }
    if (w > 0.0) {
      const double inv_lambda = w / (two_pi * constants::c0);
      total += acc * inv_lambda * inv_lambda;
    }
  }
  return total;
}

/// Band-total SNR of an LTI receiver: S0 * A_eff / (k_B * B * eta*tau*T_b)
/// with T_b evaluated at the carrier.
inline double snr_lti(const SpectralEnvironment& env, double signal_aperture, double eta_tau) {
  env.validate();
  if (!(signal_aperture >= 0.0)) throw std::domain_error("signal aperture must be >= 0");
  const double ta = lti_noise_temperature_iso(eta_tau, env.brightness_at(env.carrier));
  const double denom = constants::k_B * env.bandwidth * ta;
  if (!(denom > 0.0)) throw std::domain_error("snr_lti: noise power is zero");
  return env.signal_psd_total * signal_aperture / denom;
}

/// Band-total SNR of a time-varying receiver:
///   A^0_eff(w0, k_s) * S0 / (k_B * B * T_A^TV).
inline double snr_tv(const SpectralEnvironment& env, const HarmonicApertureSet& set) {
  env.validate();
  if (set.mod_freq > 0.0 && env.bandwidth > set.mod_freq)
    throw std::domain_error("snr_tv: signal band must fit inside one harmonic slot");
  const double ta = tv_noise_temperature_iso(set, env);
  const double denom = constants::k_B * env.bandwidth * ta;
  if (!(denom > 0.0)) throw std::domain_error("snr_tv: noise power is zero");
  return set.peak_at(0) * env.signal_psd_total / denom;
}

}  // namespace xfnoise
