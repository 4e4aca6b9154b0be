// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "xfnoise/core.hpp"

namespace xfnoise::pamp {

/// Thevenin model of a small receiving loop terminated through a pumped
/// series capacitor into a resistive load R_L = load_ratio * R_a.
/// The rest capacitance resonates the antenna inductance at design_freq;
/// the capacitance is C0 * (1 + 2*M*cos(pump_freq*t + pump_phase)).
struct TVCircuitModel {
  double antenna_resistance = 0.0;  ///< R_a, ohm
  double antenna_inductance = 0.0;  ///< L_a, H
  double load_ratio = 1.0;          ///< r, dimensionless
  double rest_capacitance = 0.0;    ///< C0, F
  double modulation_depth = 0.0;    ///< M in [0, 1/2)
  double pump_freq = 0.0;           ///< rad/s
  double pump_phase = 0.0;          ///< rad
  double design_freq = 0.0;         ///< w0, rad/s
  double field_amplitude = 1.0;     ///< incident E0, V/m

  double load_resistance() const { return load_ratio * antenna_resistance; }
  double loop_resistance() const { return antenna_resistance + load_resistance(); }

  double capacitance_at(double t) const {
    return rest_capacitance * (1.0 + 2.0 * modulation_depth * std::cos(pump_freq * t + pump_phase));
  }

  /// Power flux density of the incident plane wave, W/m^2.
  double incident_flux() const {
    return field_amplitude * field_amplitude / (2.0 * constants::eta0);
  }

  void validate() const {
    if (!(antenna_resistance > 0.0) || !(antenna_inductance > 0.0) || !(rest_capacitance > 0.0))
      throw std::invalid_argument("circuit model: R_a, L_a, C0 must be positive");
    if (!(load_ratio > 0.0)) throw std::invalid_argument("circuit model: load ratio must be positive");
    if (!(modulation_depth >= 0.0 && modulation_depth < 0.5))
      throw std::invalid_argument("circuit model: modulation depth must lie in [0, 1/2)");
    if (!(pump_freq > 0.0) || !(design_freq > 0.0))
      throw std::invalid_argument("circuit model: pump and design frequencies must be positive");
    if (!(field_amplitude > 0.0))
      throw std::invalid_argument("circuit model: field amplitude must be positive");
    const double res = rest_capacitance * design_freq * design_freq * antenna_inductance;
    if (std::abs(res - 1.0) > 1e-9)
      throw std::invalid_argument("circuit model: C0 must resonate L_a at the design frequency");
  }
};

/// 36 mm loop receiver values with the pump at twice the 300 MHz design
/// frequency.
inline TVCircuitModel parametric_loop_model(double load_ratio = 1.1,
                                            double modulation_depth = 5e-4) {
  TVCircuitModel m;
  m.antenna_resistance = 0.0523;
  m.antenna_inductance = 104.9e-9;
  m.design_freq = two_pi * 300.0e6;
  m.rest_capacitance = 1.0 / (m.design_freq * m.design_freq * m.antenna_inductance);
  m.pump_freq = 2.0 * m.design_freq;
  m.load_ratio = load_ratio;
  m.modulation_depth = modulation_depth;
  m.validate();
  return m;
}

/// Small-antenna directivity pattern.
inline double directivity(double theta) {
  const double s = std::sin(theta);
  return 1.5 * s * s;
}

/// Open-circuit voltage amplitude E0 * (2*c0/omega) * sqrt(R_a * D / 120), V.
inline double voc_amplitude(const TVCircuitModel& model, double omega, double theta) {
  if (!(omega > 0.0)) throw std::domain_error("voc_amplitude: frequency must be positive");
  return model.field_amplitude * (2.0 * constants::c0 / omega) *
         std::sqrt(model.antenna_resistance * directivity(theta) / 120.0);
}

/// Decay ratio of the elastance Fourier series: |S_m| ~ S_0 * rho^|m|.
inline double elastance_decay_ratio(double depth) {
  if (depth <= 0.0) return 0.0;
  return (1.0 - std::sqrt(1.0 - 4.0 * depth * depth)) / (2.0 * depth);
}

/// Fourier coefficients S_m of the elastance 1/C(t) for |m| <= truncation,
/// indexed m + truncation, referenced to zero pump phase (the assembly stage
/// applies the pump phase).  Computed by a dense DFT of the sampled
/// reciprocal; coefficients below the DFT noise floor are zeroed.  Throws
/// when the geometric tail left above the truncation exceeds 1e-15 of S_0.
inline std::vector<double> elastance_coefficients(const TVCircuitModel& model, int truncation) {
  if (truncation < 0) throw std::invalid_argument("elastance_coefficients: negative truncation");
  const double rho = elastance_decay_ratio(model.modulation_depth);
  const double tail = rho > 0.0 ? std::pow(rho, truncation) : 0.0;
  if (tail > 1e-15)
    throw std::domain_error("elastance_coefficients: truncation too small for this depth");

  constexpr int n = 1 << 14;
  std::vector<double> samples(n);
  for (int i = 0; i < n; ++i) {
    const double x = two_pi * i / n;
    samples[static_cast<std::size_t>(i)] =
        1.0 / (model.rest_capacitance * (1.0 + 2.0 * model.modulation_depth * std::cos(x)));
  }
  std::vector<double> coeff(static_cast<std::size_t>(2 * truncation + 1), 0.0);
  for (int m = 0; m <= truncation; ++m) {
    long double acc = 0.0L;
    for (int i = 0; i < n; ++i)
      acc += static_cast<long double>(samples[static_cast<std::size_t>(i)]) *
             std::cos(two_pi * m * i / n);
    const double value = static_cast<double>(acc / n);
    coeff[static_cast<std::size_t>(truncation + m)] = value;
    coeff[static_cast<std::size_t>(truncation - m)] = value;  // 1/C(t) is even
  }
  const double floor = 1e-13 * std::abs(coeff[static_cast<std::size_t>(truncation)]);
  for (double& c : coeff)
    if (std::abs(c) < floor) c = 0.0;
  return coeff;
}

}  // namespace xfnoise::pamp
