// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "xfnoise/core.hpp"
#include "xfnoise/pamp/model.hpp"

namespace xfnoise::pamp {

/// Reduced fraction approximating a positive real ratio by continued
/// fractions.  Throws if no fraction within `tol` (relative) exists below
/// the denominator cap; drive and pump must share a common period for
/// leakage-free extraction.
struct RationalRatio {
  long long num = 0;
  long long den = 1;
};

inline RationalRatio approximate_ratio(double x, long long max_den = 1000000, double tol = 1e-9) {
  if (!(x > 0.0)) throw std::invalid_argument("approximate_ratio: ratio must be positive");
  long long h0 = 1, h1 = static_cast<long long>(std::floor(x));
  long long k0 = 0, k1 = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= tol * x)
      return {h1, k1};
    if (frac < 1e-15) break;
    const double inv = 1.0 / frac;
    const long long a = static_cast<long long>(std::floor(inv));
    frac = inv - std::floor(inv);
    const long long h2 = a * h1 + h0;
    const long long k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
  }
  if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= tol * x) return {h1, k1};
  throw std::domain_error("approximate_ratio: drive and pump are incommensurate");
}

struct TransientOptions {
  int samples_per_shortest = 1024;  ///< time steps per shortest period present
  double min_window = 2e-6;         ///< analysis window length floor, s
  /// Successive-window agreement for the adaptive driver.  The pumped slow
  /// mode decays by only ~10% per window, so the residual left at stopping
  /// time is roughly ten times this value; 1e-4 keeps extracted amplitudes
  /// within ~0.2%.
  double window_tol = 1e-4;
  int max_windows = 2000;           ///< adaptive marching cap
};

/// Discretization of one continuous-wave drive of the pumped loop.  The time
/// step divides the common period of drive and pump exactly, and analysis
/// windows are integer numbers of common periods, so the extraction DFT bins
/// are leakage-free by construction.
struct TransientRun {
  double drive_freq = 0.0;       ///< rad/s, physical tone
  double drive_phase = 0.0;      ///< rad, relative to the pump zero phase
  double drive_amplitude = 0.0;  ///< V
  double dt = 0.0;               ///< s
  double common_period = 0.0;    ///< s
  long long samples_per_common = 0;
  int window_periods = 0;   ///< common periods per analysis window
  int settle_periods = 0;   ///< minimum settle before extraction
  int record_periods = 0;   ///< periods recorded by march()
};

inline TransientRun plan_transient_run(const TVCircuitModel& model, double drive_freq,
                                       double drive_phase, double drive_amplitude,
                                       const TransientOptions& opt = {}) {
  model.validate();
  if (!(drive_freq > 0.0)) throw std::invalid_argument("transient: drive frequency must be positive");
  if (opt.samples_per_shortest < 16)
    throw std::invalid_argument("transient: need at least 16 samples per period");

  const double t_drive = two_pi / drive_freq;
  const double t_pump = two_pi / model.pump_freq;
  // cap the common period at 2e4 pump periods (~33 us here); beyond that a
  // leakage-free rectangular window is impractical and the drive is treated
  // as incommensurate
  const RationalRatio ratio = approximate_ratio(drive_freq / model.pump_freq, 20000);

  TransientRun run;
  run.drive_freq = drive_freq;
  run.drive_phase = drive_phase;
  run.drive_amplitude = drive_amplitude;
  run.common_period = static_cast<double>(ratio.den) * t_pump;  // == num * t_drive
  const double dt_raw = std::min(t_drive, t_pump) / opt.samples_per_shortest;
  run.samples_per_common = static_cast<long long>(std::ceil(run.common_period / dt_raw));
  run.dt = run.common_period / static_cast<double>(run.samples_per_common);
  run.window_periods =
      std::max(1, static_cast<int>(std::ceil(opt.min_window / run.common_period)));
  const double settle_time = std::max(10.0 * 2.0 * model.antenna_inductance /
                                          model.loop_resistance(),
                                      200.0 * t_pump);
  run.settle_periods = std::max(1, static_cast<int>(std::ceil(settle_time / run.common_period)));
  run.record_periods = 2 * run.window_periods + 1;
  return run;
}

namespace detail {

struct MarchState {
  double i_prev = 0.0;
  long double charge_sum = 0.0L;  ///< sum of all previous current samples
};

/// March one common period.  The drive, pump, and extraction kernels repeat
/// exactly over the common period, so their phasors reset at each period
/// boundary instead of accumulating rotation error.  Optionally records
/// samples and accumulates sum_n i_n * exp(-j*wobs*t_n) for the window DFT.
inline void march_period(const TVCircuitModel& model, const TransientRun& run, MarchState& st,
                         double* record, std::complex<double>* dft, double wobs) {
  const double dt = run.dt;
  const double inv_a = 1.0 / (model.antenna_inductance / dt + model.loop_resistance());
  const double l_over_dt = model.antenna_inductance / dt;
  const double guard = 1e12 * std::max(1.0, run.drive_amplitude / model.loop_resistance());

  std::complex<double> zd = std::polar(1.0, run.drive_phase);
  const std::complex<double> rd = std::polar(1.0, run.drive_freq * dt);
  std::complex<double> zm = std::polar(1.0, model.pump_phase);
  const std::complex<double> rm = std::polar(1.0, model.pump_freq * dt);
  std::complex<double> zo(1.0, 0.0);
  const std::complex<double> ro = std::polar(1.0, -wobs * dt);

  for (long long n = 0; n < run.samples_per_common; ++n) {
    const double v = run.drive_amplitude * zd.real();
    const double cap =
        model.rest_capacitance * (1.0 + 2.0 * model.modulation_depth * zm.real());
    const double i =
        (v + l_over_dt * st.i_prev - (dt / cap) * static_cast<double>(st.charge_sum)) * inv_a;
    if (!std::isfinite(i) || std::abs(i) > guard)
      throw std::runtime_error("transient marching diverged (parametric oscillation or "
                               "time step too large)");
    st.charge_sum += i;
    st.i_prev = i;
    if (record) record[n] = i;
    if (dft) *dft += i * zo;
    zd *= rd;
    zm *= rm;
    zo *= ro;
  }
}

}  // namespace detail

/// Current trace over `record_periods` common periods after the settle
/// phase.  Samples start at an integer multiple of the common period.
struct TransientTrace {
  double dt = 0.0;
  double start_time = 0.0;
  double common_period = 0.0;
  long long samples_per_common = 0;
  int window_periods = 0;
  std::vector<double> current;  ///< A
};

inline TransientTrace march(const TVCircuitModel& model, const TransientRun& run) {
  if (!(run.dt > 0.0) || run.samples_per_common <= 0)
    throw std::invalid_argument("march: run is not planned");
  detail::MarchState st;
  for (int k = 0; k < run.settle_periods; ++k)
    detail::march_period(model, run, st, nullptr, nullptr, 0.0);

  TransientTrace trace;
  trace.dt = run.dt;
  trace.start_time = run.settle_periods * run.common_period;
  trace.common_period = run.common_period;
  trace.samples_per_common = run.samples_per_common;
  trace.window_periods = run.window_periods;
  trace.current.resize(static_cast<std::size_t>(run.record_periods) *
                       static_cast<std::size_t>(run.samples_per_common));
  for (int k = 0; k < run.record_periods; ++k)
    detail::march_period(model, run, st,
                         trace.current.data() +
                             static_cast<std::size_t>(k) *
                                 static_cast<std::size_t>(run.samples_per_common),
                         nullptr, 0.0);
  return trace;
}

enum class ExtractionWindow { rectangular, hann };

/// Peak amplitude of the tone at `wobs` over an analysis window of
/// `n_periods` common periods starting `first_period` periods into the
/// trace.  The rectangular window must hold an integer number of cycles of
/// wobs (leakage-free by construction); the Hann taper drops that
/// requirement and exists for incommensurate diagnostics only.
inline double window_amplitude(const TransientTrace& trace, double wobs, int first_period,
                               int n_periods,
                               ExtractionWindow window = ExtractionWindow::rectangular) {
  const long long n = static_cast<long long>(n_periods) * trace.samples_per_common;
  const long long off = static_cast<long long>(first_period) * trace.samples_per_common;
  if (off < 0 || off + n > static_cast<long long>(trace.current.size()) || n <= 0)
    throw std::out_of_range("window_amplitude: window outside the recorded trace");
  if (window == ExtractionWindow::rectangular) {
    const double cycles = wobs * n_periods * trace.common_period / two_pi;
    if (std::abs(cycles - std::round(cycles)) > 1e-6)
      throw std::domain_error("window_amplitude: window is not an integer number of cycles");
  }
  std::complex<double> acc = 0.0;
  double weight_sum = 0.0;
  for (long long k = 0; k < n; ++k) {
    const double wgt = window == ExtractionWindow::rectangular
                           ? 1.0
                           : 0.5 * (1.0 - std::cos(two_pi * static_cast<double>(k) /
                                                   static_cast<double>(n)));
    const double t = trace.start_time + static_cast<double>(off + k) * trace.dt;
    acc += wgt * trace.current[static_cast<std::size_t>(off + k)] *
           std::complex<double>(std::cos(wobs * t), -std::sin(wobs * t));
    weight_sum += wgt;
  }
  return 2.0 * std::abs(acc) / weight_sum;
}

/// Aperture from a recorded trace: load power of the extracted tone at the
/// observation frequency over the incident flux.  Requires two successive
/// windows to agree, otherwise the run has not reached steady state.
inline double extract_aperture(const TransientTrace& trace, const TVCircuitModel& model,
                               double observe_freq, double flux, double window_tol = 1e-3) {
  if (!(flux > 0.0)) throw std::invalid_argument("extract_aperture: flux must be positive");
  const int total_periods =
      static_cast<int>(trace.current.size() / static_cast<std::size_t>(trace.samples_per_common));
  const int w = trace.window_periods;
  if (total_periods < 2 * w)
    throw std::invalid_argument("extract_aperture: trace shorter than two analysis windows");
  const double a0 = window_amplitude(trace, observe_freq, total_periods - 2 * w, w);
  const double a1 = window_amplitude(trace, observe_freq, total_periods - w, w);
  if (std::abs(a1 - a0) > window_tol * a1 + 1e-300)
    throw std::runtime_error("extract_aperture: successive windows disagree; steady state "
                             "not reached");
  const double p_load = model.load_resistance() * a1 * a1 / 2.0;
  return p_load / flux;
}

/// Cross-frequency aperture by adaptive time marching: drive the loop with a
/// tone at |observe_freq + p*pump_freq|, march until successive windows of
/// the extracted amplitude at the observation frequency agree, and convert
/// load power to aperture.  `phase` is the incident tone phase against the
/// pump reference, matching the conversion-matrix convention.
inline double transient_aperture(const TVCircuitModel& model, double observe_freq, int p,
                                 double theta, double phase = 0.0,
                                 const TransientOptions& opt = {}) {
  model.validate();
  const double wp = observe_freq + p * model.pump_freq;
  if (wp == 0.0) throw std::domain_error("transient_aperture: sideband frequency is zero");
  const double wd = std::abs(wp);
  const double amp = voc_amplitude(model, wd, theta);
  TransientRun run = plan_transient_run(model, wd, phase, amp, opt);

  const int settle_windows = (run.settle_periods + run.window_periods - 1) / run.window_periods;
  detail::MarchState st;
  double prev = -1.0;
  for (int w = 0; w < opt.max_windows; ++w) {
    std::complex<double> dft = 0.0;
    for (int k = 0; k < run.window_periods; ++k)
      detail::march_period(model, run, st, nullptr, &dft, observe_freq);
    const double a = 2.0 * std::abs(dft) /
                     static_cast<double>(run.window_periods * run.samples_per_common);
    if (w + 1 >= settle_windows && prev >= 0.0 &&
        std::abs(a - prev) <= opt.window_tol * a + 1e-300) {
      const double p_load = model.load_resistance() * a * a / 2.0;
      return p_load / model.incident_flux();
    }
    prev = a;
  }
  throw std::runtime_error("transient_aperture: no steady state within the window cap");
}

/// Min/mean/max of the transient aperture over a uniform incident-phase grid
/// (the degenerate-point envelope).
struct TransientEnvelope {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

inline TransientEnvelope transient_aperture_envelope(const TVCircuitModel& model,
                                                     double observe_freq, int p, double theta,
                                                     int n_phase,
                                                     const TransientOptions& opt = {}) {
  if (n_phase < 1) throw std::invalid_argument("transient_aperture_envelope: need phases");
  TransientEnvelope env;
  for (int i = 0; i < n_phase; ++i) {
    const double a =
        transient_aperture(model, observe_freq, p, theta, two_pi * i / n_phase, opt);
    env.mean += a;
    if (i == 0) {
      env.min = env.max = a;
    } else {
      env.min = std::min(env.min, a);
      env.max = std::max(env.max, a);
    }
  }
  env.mean /= n_phase;
  return env;
}

}  // namespace xfnoise::pamp
