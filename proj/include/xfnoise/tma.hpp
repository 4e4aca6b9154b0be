// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "xfnoise/core.hpp"
#include "xfnoise/sphere.hpp"

namespace xfnoise {

/// Ideal time-modulated array: isotropic elements behind periodic on/off
/// switches feeding a weighted combiner.  On-times and durations are
/// normalized to the switching period.  With element_length or
/// load_impedance unset the aperture prefactor eta0*l^2/Z0 is taken as
/// 1 m^2; all dB ratios are independent of it.
struct TMAConfig {
  std::vector<Vec3> positions;                  ///< m
  std::vector<std::complex<double>> weights;
  std::vector<double> on_times;                 ///< t_k / T in [0, 1)
  std::vector<double> durations;                ///< tau_k / T in (0, 1]
  double period = 0.0;                          ///< T, s
  double element_length = 0.0;                  ///< m; 0 selects normalized mode
  double load_impedance = 0.0;                  ///< ohm; 0 selects normalized mode
  int order = 5;                                ///< retained harmonic order P

  std::size_t elements() const { return positions.size(); }
  double mod_freq() const { return two_pi / period; }

  double prefactor() const {
    if (element_length > 0.0 && load_impedance > 0.0)
      return constants::eta0 * element_length * element_length / load_impedance;
    return 1.0;
  }

  /// Instantaneous switch state of element k, periodic with wrap-around.
  double gate(std::size_t k, double t) const {
    double frac = t / period - std::floor(t / period);
    const double on = on_times[k];
    const double off = on + durations[k];
    if (off <= 1.0) return (frac >= on && frac < off) ? 1.0 : 0.0;
    return (frac >= on || frac < off - 1.0) ? 1.0 : 0.0;
  }

  void validate() const {
    const std::size_t n = elements();
    if (n == 0) throw std::invalid_argument("tma: need at least one element");
    if (weights.size() != n || on_times.size() != n || durations.size() != n)
      throw std::invalid_argument("tma: per-element arrays must have matching lengths");
    if (!(period > 0.0)) throw std::invalid_argument("tma: period must be positive");
    if (order < 0) throw std::invalid_argument("tma: harmonic order must be >= 0");
    for (std::size_t k = 0; k < n; ++k) {
      if (!(on_times[k] >= 0.0 && on_times[k] < 1.0))
        throw std::invalid_argument("tma: normalized on-times must lie in [0, 1)");
      if (!(durations[k] > 0.0 && durations[k] <= 1.0))
        throw std::invalid_argument("tma: normalized durations must lie in (0, 1]");
    }
  }
};

/// Uniform linear array along x with half-wavelength-style spacing and a
/// staggered schedule: element k switches on at mod((k-1)/stagger, 1) for a
/// 1/stagger duty cycle.  The switching period is rate_divisor carrier
/// cycles: T = 2*pi*rate_divisor / carrier.
inline TMAConfig staggered_linear_array(int n_elements, double carrier, double rate_divisor,
                                        double spacing_wavelengths = 0.5, int stagger = 4,
                                        int order = 5) {
  if (n_elements < 1) throw std::invalid_argument("staggered_linear_array: need elements");
  if (!(carrier > 0.0) || !(rate_divisor > 0.0))
    throw std::invalid_argument("staggered_linear_array: carrier and rate divisor must be positive");
  if (stagger < 1) throw std::invalid_argument("staggered_linear_array: stagger must be >= 1");
  const double lam = two_pi * constants::c0 / carrier;
  TMAConfig cfg;
  cfg.period = two_pi * rate_divisor / carrier;
  cfg.order = order;
  for (int k = 1; k <= n_elements; ++k) {
    cfg.positions.push_back({k * spacing_wavelengths * lam, 0.0, 0.0});
    cfg.weights.push_back(1.0);
    cfg.on_times.push_back(std::fmod(static_cast<double>(k - 1) / stagger, 1.0));
    cfg.durations.push_back(1.0 / stagger);
  }
  cfg.validate();
  return cfg;
}

/// Fourier coefficient of a unit gate opening at on_time for duration
/// (both normalized): tau * sinc(pi*p*tau) * exp(-j*pi*p*(2*t + tau)).
inline std::complex<double> switch_coefficient(double on_time, double duration, int p) {
  const double mag = duration * sinc(pi * p * duration);
  const double phase = -pi * p * (2.0 * on_time + duration);
  return {mag * std::cos(phase), mag * std::sin(phase)};
}

/// Coefficients U_k^p for |p| <= P, indexed p + P.
inline std::vector<std::complex<double>> switch_spectrum(const TMAConfig& cfg, std::size_t k,
                                                         int max_order) {
  cfg.validate();
  if (k >= cfg.elements()) throw std::out_of_range("switch_spectrum: element index");
  std::vector<std::complex<double>> out(static_cast<std::size_t>(2 * max_order + 1));
  for (int p = -max_order; p <= max_order; ++p)
    out[static_cast<std::size_t>(p + max_order)] =
        switch_coefficient(cfg.on_times[k], cfg.durations[k], p);
  return out;
}

namespace detail {

/// Terms of the pairwise aperture sum with a caller-supplied pair kernel
/// (plane-wave phase for directional values, sinc for sphere averages).
/// The k/k' exchange symmetry makes the result real; the imaginary residue
/// is checked against the term magnitude scale and discarded.
template <class PairKernel>
double tma_pair_sum(const TMAConfig& cfg, int p, PairKernel&& kernel) {
  const std::size_t n = cfg.elements();
  std::vector<std::complex<double>> u(n);
  double scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    u[k] = cfg.weights[k] * switch_coefficient(cfg.on_times[k], cfg.durations[k], p);
    scale += std::abs(u[k]);
  }
  scale *= scale;
  std::complex<double> acc = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t kp = 0; kp < n; ++kp) acc += u[k] * std::conj(u[kp]) * kernel(k, kp);
  if (std::abs(acc.imag()) > 1e-12 * scale)
    throw std::runtime_error("tma: aperture sum has a non-negligible imaginary residue");
  return std::max(0.0, acc.real());
}

}  // namespace detail

/// Cross-frequency effective aperture A^p_eff(omega, khat), m^2.  `khat`
/// points from the array toward the source (direction of arrival).
inline double directional_aperture(const TMAConfig& cfg, double omega, int p, const Vec3& khat) {
  cfg.validate();
  const double wp = omega + p * cfg.mod_freq();
  if (!(wp > 0.0))
    throw std::domain_error("directional_aperture: harmonic frequency must be positive");
  const double sum = detail::tma_pair_sum(cfg, p, [&](std::size_t k, std::size_t kp) {
    const double phase = -wp * dot(khat, cfg.positions[k] - cfg.positions[kp]) / constants::c0;
    return std::complex<double>(std::cos(phase), std::sin(phase));
  });
  return cfg.prefactor() * sum;
}

enum class MeanMethod { closed_form, quadrature };

/// Sphere average of A^p_eff.  The closed form uses the plane-wave identity
/// <exp(-j w khat.d / c)> = sinc(w |d| / c); the quadrature path exists as an
/// independent cross-check.
inline double mean_aperture(const TMAConfig& cfg, double omega, int p,
                            MeanMethod method = MeanMethod::closed_form,
                            const SphereQuadrature* quad = nullptr) {
  cfg.validate();
  const double wp = omega + p * cfg.mod_freq();
  if (!(wp > 0.0)) throw std::domain_error("mean_aperture: harmonic frequency must be positive");
  if (method == MeanMethod::closed_form) {
    const double sum = detail::tma_pair_sum(cfg, p, [&](std::size_t k, std::size_t kp) {
      const double d = norm(cfg.positions[k] - cfg.positions[kp]);
      return std::complex<double>(sinc(wp * d / constants::c0), 0.0);
    });
    return cfg.prefactor() * sum;
  }
  const SphereQuadrature& q = quad ? *quad : default_sphere_rule();
  return sphere_average([&](const Vec3& k) { return directional_aperture(cfg, omega, p, k); }, q);
}

/// Narrowband filtered noise temperature: a brick-wall stage keeps harmonics
/// |p| <= filter_order, all at a common wavelength and background level.
/// `ratio_db` is the increase over the filter_order = 0 case.
struct FilteredNoiseTemperature {
  double temperature;  ///< K
  double ratio_db;
};

inline FilteredNoiseTemperature filtered_noise_temperature(const TMAConfig& cfg, double omega0,
                                                           int filter_order, double brightness0) {
  cfg.validate();
  if (filter_order < 0)
    throw std::invalid_argument("filtered_noise_temperature: filter order must be >= 0");
  if (!(brightness0 >= 0.0))
    throw std::invalid_argument("filtered_noise_temperature: negative brightness");
  const double lam0 = two_pi * constants::c0 / omega0;
  const double base = mean_aperture(cfg, omega0, 0);
  double sum = base;
  for (int p = 1; p <= filter_order; ++p) {
    sum += mean_aperture(cfg, omega0, p);
    sum += mean_aperture(cfg, omega0, -p);
  }
  FilteredNoiseTemperature out;
  out.temperature = 4.0 * pi * brightness0 * sum / lam0;
  out.ratio_db = to_db(sum / base);
  return out;
}

/// Aperture extracted from a direct time-domain synthesis of the manifold
/// output voltage under a monochromatic plane wave at the p-th harmonic,
/// averaged over incident phase.  Cross-checks the pairwise-sum path; the
/// synthesis assumes real element weights.
inline double time_domain_aperture(const TMAConfig& cfg, double omega, int p, const Vec3& khat,
                                   int n_phase = 4) {
  cfg.validate();
  if (n_phase < 1) throw std::invalid_argument("time_domain_aperture: need phase samples");
  const double wm = cfg.mod_freq();
  const double win = omega + p * wm;
  if (!(win > 0.0))
    throw std::domain_error("time_domain_aperture: harmonic frequency must be positive");
  for (const auto& w : cfg.weights)
    if (w.imag() != 0.0)
      throw std::invalid_argument("time_domain_aperture: synthesis supports real weights only");

  // 64 samples per shortest retained period over 8 switching periods; the
  // span is an integer number of cycles of every retained tone.
  const double wmax = std::max(win, std::abs(omega) + cfg.order * wm);
  const double span = 8.0 * cfg.period;
  const double dt_raw = (two_pi / wmax) / 64.0;
  const long long n = static_cast<long long>(std::ceil(span / dt_raw));
  const double dt = span / static_cast<double>(n);
  if (1.0 / dt < 16.0 * wmax / two_pi)
    throw std::runtime_error("time_domain_aperture: sample rate below the aliasing guard");

  const std::size_t ne = cfg.elements();
  std::vector<double> advance(ne);  // wave from khat reaches far elements first
  for (std::size_t k = 0; k < ne; ++k)
    advance[k] = dot(khat, cfg.positions[k]) / constants::c0;

  double mean_f = 0.0;
  for (int ip = 0; ip < n_phase; ++ip) {
    const double phi = two_pi * ip / n_phase;
    std::complex<double> acc = 0.0;
    for (long long s = 0; s < n; ++s) {
      const double t = s * dt;
      double v = 0.0;
      for (std::size_t k = 0; k < ne; ++k) {
        if (cfg.gate(k, t) == 0.0) continue;
        v += cfg.weights[k].real() * std::cos(win * (t + advance[k]) + phi);
      }
      acc += v * std::complex<double>(std::cos(omega * t), -std::sin(omega * t));
    }
    const double amp = 2.0 * std::abs(acc) / static_cast<double>(n);
    mean_f += amp * amp;
  }
  return cfg.prefactor() * mean_f / n_phase;
}

}  // namespace xfnoise
