// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "xfnoise/aperture.hpp"
#include "xfnoise/core.hpp"
#include "xfnoise/environment.hpp"
#include "xfnoise/noise.hpp"

namespace xfnoise {

/// How the hypothetical time-varying loading scales the dipole's apertures.
///  - directive:  signal-direction aperture scaled by alpha, sphere average
///                unchanged (pattern sharpened, no added gain).
///  - amplifying: signal-direction aperture and sphere average both scaled by
///                alpha (gain ahead of an unchanged pattern); the first
///                harmonics inherit the same gain, so beta stays the coupling
///                level relative to the in-band term.
enum class ToyMode { directive, amplifying };

/// Demonstrative receiver: a D = 1.5 small dipole with first-harmonic
/// cross-frequency coupling controlled by two scalars.
struct ToyConfig {
  double alpha = 1.0;      ///< in-band aperture scaling, >= 0
  double beta = 0.0;       ///< relative first-harmonic coupling, >= 0
  double eta_tau = 1.0;    ///< mismatch-efficiency product, (0, 1]
  ToyMode mode = ToyMode::directive;
  SpectralEnvironment environment;
  double mod_ratio = 0.5;  ///< modulation frequency / carrier

  void validate() const {
    if (!(alpha >= 0.0)) throw std::invalid_argument("toy: alpha must be >= 0");
    if (!(beta >= 0.0)) throw std::invalid_argument("toy: beta must be >= 0");
    if (!(eta_tau > 0.0 && eta_tau <= 1.0))
      throw std::invalid_argument("toy: eta*tau must lie in (0, 1]");
    if (!(mod_ratio > 0.0)) throw std::invalid_argument("toy: modulation ratio must be positive");
    environment.validate();
  }

  double dipole_peak_aperture() const {
    const double lam = two_pi * constants::c0 / environment.carrier;
    return eta_tau * 1.5 * lam * lam / (4.0 * pi);
  }

  double dipole_mean_aperture() const {
    const double lam = two_pi * constants::c0 / environment.carrier;
    return eta_tau * lam * lam / (4.0 * pi);
  }
};

/// Aperture set with harmonics p in {-1, 0, +1} populated per the mode.
inline HarmonicApertureSet build_aperture_set(const ToyConfig& cfg) {
  cfg.validate();
  const double w0 = cfg.environment.carrier;
  const double abar = cfg.dipole_mean_aperture();

  HarmonicApertureSet set(w0, cfg.mod_ratio * w0, 1);
  set.peak_at(0) = cfg.alpha * cfg.dipole_peak_aperture();
  if (cfg.mode == ToyMode::directive) {
    set.mean_at(0) = abar;
    set.mean_at(1) = cfg.beta * abar;
    set.mean_at(-1) = cfg.beta * abar;
  } else {
    set.mean_at(0) = cfg.alpha * abar;
    set.mean_at(1) = cfg.alpha * cfg.beta * abar;
    set.mean_at(-1) = cfg.alpha * cfg.beta * abar;
  }
  return set;
}

/// SNR of the time-varying receiver over the LTI dipole baseline, linear.
inline double snr_ratio(const ToyConfig& cfg) {
  const HarmonicApertureSet set = build_aperture_set(cfg);
  const double tv = snr_tv(cfg.environment, set);
  const double lti = snr_lti(cfg.environment, cfg.dipole_peak_aperture(), cfg.eta_tau);
  return tv / lti;
}

/// dB ratio grid over (alpha, beta), row-major with alpha as the outer axis.
struct RatioGrid {
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<double> db;  ///< db[i * betas.size() + j]

  double at(std::size_t i, std::size_t j) const { return db[i * betas.size() + j]; }
};

inline RatioGrid snr_ratio_grid(const std::vector<double>& alphas,
                                const std::vector<double>& betas, const ToyConfig& base) {
  if (alphas.empty() || betas.empty())
    throw std::invalid_argument("snr_ratio_grid: empty parameter grid");
  RatioGrid grid;
  grid.alphas = alphas;
  grid.betas = betas;
  grid.db.resize(alphas.size() * betas.size());
  ToyConfig cfg = base;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    for (std::size_t j = 0; j < betas.size(); ++j) {
      cfg.alpha = alphas[i];
      cfg.beta = betas[j];
      grid.db[i * betas.size() + j] = to_db(snr_ratio(cfg));
    }
  }
  return grid;
}

/// Log-spaced grid, inclusive of both endpoints.
inline std::vector<double> log_space(double lo, double hi, int points) {
  if (points < 1 || !(lo > 0.0) || !(hi > 0.0))
    throw std::invalid_argument("log_space: need positive bounds and at least one point");
  std::vector<double> out(static_cast<std::size_t>(points));
  if (points == 1) {
    out[0] = lo;
    return out;
  }
  const double llo = std::log10(lo), lhi = std::log10(hi);
  for (int i = 0; i < points; ++i)
    out[static_cast<std::size_t>(i)] = std::pow(10.0, llo + (lhi - llo) * i / (points - 1));
  return out;
}

inline std::vector<double> lin_space(double lo, double hi, int points) {
  if (points < 1) throw std::invalid_argument("lin_space: need at least one point");
  std::vector<double> out(static_cast<std::size_t>(points));
  if (points == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < points; ++i)
    out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  return out;
}

}  // namespace xfnoise
