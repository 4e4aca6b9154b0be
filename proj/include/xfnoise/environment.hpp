// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "xfnoise/core.hpp"

namespace xfnoise {

/// Isotropic brightness temperature vs angular frequency, K.
using BrightnessFn = std::function<double(double)>;

/// External noise background plus the incident-signal descriptor.
/// All frequencies are angular (rad/s); brightness must be >= 0 everywhere
/// it is evaluated.
struct SpectralEnvironment {
  BrightnessFn brightness;
  double signal_psd_total = 0.0;       ///< S0, W/m^2 integrated over the band
  Vec3 signal_direction{0.0, 0.0, 1.0};
  double carrier = 0.0;                ///< rad/s
  double bandwidth = 0.0;              ///< rad/s

  void validate() const {
    if (!brightness) throw std::invalid_argument("environment: brightness function not set");
    if (!(carrier > 0.0)) throw std::invalid_argument("environment: carrier must be positive");
    if (!(bandwidth > 0.0)) throw std::invalid_argument("environment: bandwidth must be positive");
    if (signal_psd_total < 0.0) throw std::invalid_argument("environment: negative signal power");
    if (std::abs(norm(signal_direction) - 1.0) > 1e-9)
      throw std::invalid_argument("environment: signal direction must be a unit vector");
  }

  /// Brightness at a harmonic frequency; rejects undefined or negative values.
  double brightness_at(double omega) const {
    const double t = brightness(omega);
    if (!std::isfinite(t) || t < 0.0)
      throw std::domain_error("environment: brightness undefined or negative at requested frequency");
    return t;
  }
};

/// Frequency-independent background.
inline BrightnessFn flat_brightness(double kelvin) {
  if (kelvin < 0.0) throw std::invalid_argument("flat_brightness: negative temperature");
  return [kelvin](double) { return kelvin; };
}

/// Flat background with one elevated band [w_lo, w_hi] (rad/s, inclusive).
inline BrightnessFn band_elevated_brightness(double base_kelvin, double hot_kelvin,
                                             double w_lo, double w_hi) {
  if (base_kelvin < 0.0 || hot_kelvin < 0.0)
    throw std::invalid_argument("band_elevated_brightness: negative temperature");
  if (!(w_lo < w_hi)) throw std::invalid_argument("band_elevated_brightness: empty band");
  return [=](double w) { return (w >= w_lo && w <= w_hi) ? hot_kelvin : base_kelvin; };
}

inline SpectralEnvironment make_environment(BrightnessFn brightness, double carrier,
                                            double bandwidth, double signal_psd_total = 0.0,
                                            Vec3 signal_direction = {0.0, 0.0, 1.0}) {
  SpectralEnvironment env;
  env.brightness = std::move(brightness);
  env.carrier = carrier;
  env.bandwidth = bandwidth;
  env.signal_psd_total = signal_psd_total;
  env.signal_direction = signal_direction;
  env.validate();
  return env;
}

}  // namespace xfnoise
