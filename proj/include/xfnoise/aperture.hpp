// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "xfnoise/core.hpp"

namespace xfnoise {

/// Cross-frequency aperture data of a periodically modulated receiver at one
/// observation frequency: for each harmonic index p in [-P, P], the
/// directional aperture at the signal direction (`peak`) and the sphere
/// average (`mean`), both in m^2.  Harmonic p maps inputs at
/// observation_freq + p*mod_freq into the observation band.
///
/// `fold_negative` marks sets whose negative sideband frequencies are
/// conjugate images of physical tones at |freq| (degenerate-pump circuits);
/// the temperature engine then reads brightness and wavelength at |freq|
/// instead of rejecting the harmonic.
struct HarmonicApertureSet {
  double observation_freq = 0.0;  ///< rad/s
  double mod_freq = 0.0;          ///< rad/s
  int order = 0;                  ///< P, max |p|
  std::vector<double> peak;       ///< index p + order
  std::vector<double> mean;       ///< index p + order
  bool fold_negative = false;

  HarmonicApertureSet() = default;
  HarmonicApertureSet(double obs_freq, double modulation_freq, int max_order)
      : observation_freq(obs_freq),
        mod_freq(modulation_freq),
        order(max_order),
        peak(static_cast<std::size_t>(2 * max_order + 1), 0.0),
        mean(static_cast<std::size_t>(2 * max_order + 1), 0.0) {
    if (max_order < 0) throw std::invalid_argument("aperture set: order must be >= 0");
  }

  std::size_t index(int p) const {
    if (p < -order || p > order) throw std::out_of_range("aperture set: harmonic outside [-P, P]");
    return static_cast<std::size_t>(p + order);
  }

  double mean_at(int p) const { return mean[index(p)]; }
  double peak_at(int p) const { return peak[index(p)]; }
  double& mean_at(int p) { return mean[index(p)]; }
  double& peak_at(int p) { return peak[index(p)]; }

  /// Sideband frequency of harmonic p (signed, rad/s).
  double sideband_freq(int p) const { return observation_freq + p * mod_freq; }

  void validate() const {
    if (order < 0) throw std::invalid_argument("aperture set: negative order");
    const std::size_t n = static_cast<std::size_t>(2 * order + 1);
    if (peak.size() != n || mean.size() != n)
      throw std::invalid_argument("aperture set: storage does not match order");
    for (double v : peak)
      if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("aperture set: peak apertures must be finite and >= 0");
    for (double v : mean)
      if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("aperture set: mean apertures must be finite and >= 0");
  }
};

}  // namespace xfnoise
