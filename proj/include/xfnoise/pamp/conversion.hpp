// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "xfnoise/aperture.hpp"
#include "xfnoise/core.hpp"
#include "xfnoise/environment.hpp"
#include "xfnoise/noise.hpp"
#include "xfnoise/pamp/model.hpp"
#include "xfnoise/sphere.hpp"

namespace xfnoise::pamp {

/// Conversion impedance system of the pumped series loop at one observation
/// frequency.  Row/column q corresponds to the signed sideband frequency
/// omega + q * pump_freq; negative sidebands carry the conjugate phasors of
/// physical tones at |frequency|.
struct ConversionSystem {
  int order = 0;                        ///< P
  double observation_freq = 0.0;        ///< rad/s
  double mod_freq = 0.0;                ///< pump, rad/s
  std::vector<double> sideband_freqs;   ///< signed, index q + P
  Eigen::MatrixXcd impedance;           ///< (2P+1) x (2P+1), ohm
  std::vector<double> elastance;        ///< S_m, index m + truncation
  int truncation = 0;

  int idx(int p) const {
    if (p < -order || p > order)
      throw std::out_of_range("conversion system: harmonic outside [-P, P]");
    return p + order;
  }
  double sideband(int p) const { return sideband_freqs[static_cast<std::size_t>(idx(p))]; }
};

/// KVL stamp over charge harmonics: diagonal R + j*w_p*L, elastance coupling
/// S_{p-p'} / (j*w_{p'}).  Fails when any sideband frequency vanishes (the
/// capacitor stamp is singular there).
inline ConversionSystem assemble_conversion_matrix(const TVCircuitModel& model, double omega,
                                                   int order, int truncation = 8) {
  model.validate();
  if (order < 0) throw std::invalid_argument("assemble_conversion_matrix: order must be >= 0");
  if (!(omega > 0.0))
    throw std::invalid_argument("assemble_conversion_matrix: observation frequency must be positive");

  ConversionSystem sys;
  sys.order = order;
  sys.observation_freq = omega;
  sys.mod_freq = model.pump_freq;
  sys.truncation = truncation;
  sys.elastance = elastance_coefficients(model, truncation);

  const int n = 2 * order + 1;
  sys.sideband_freqs.resize(static_cast<std::size_t>(n));
  for (int p = -order; p <= order; ++p) {
    const double wp = omega + p * model.pump_freq;
    if (wp == 0.0)
      throw std::domain_error("assemble_conversion_matrix: a sideband frequency is zero");
    sys.sideband_freqs[static_cast<std::size_t>(p + order)] = wp;
  }

  const std::complex<double> j(0.0, 1.0);
  const double r_total = model.loop_resistance();
  sys.impedance = Eigen::MatrixXcd::Zero(n, n);
  for (int p = -order; p <= order; ++p) {
    const double wp = sys.sideband(p);
    for (int q = -order; q <= order; ++q) {
      const int m = p - q;
      std::complex<double> z = 0.0;
      if (p == q) z += r_total + j * wp * model.antenna_inductance;
      if (std::abs(m) <= truncation) {
        const double s = sys.elastance[static_cast<std::size_t>(m + truncation)];
        if (s != 0.0) {
          const std::complex<double> phase =
              std::polar(1.0, m * model.pump_phase);
          z += s * phase / (j * sys.sideband(q));
        }
      }
      sys.impedance(p + order, q + order) = z;
    }
  }
  return sys;
}

namespace detail {

struct FactorizedSystem {
  ConversionSystem sys;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu;

  explicit FactorizedSystem(ConversionSystem s) : sys(std::move(s)), lu(sys.impedance) {
    // rcond() is NaN for an exactly singular factorization; fail on that too
    if (!(lu.rcond() >= 1e-14))
      throw std::runtime_error("conversion matrix is numerically singular "
                               "(parametric oscillation threshold exceeded)");
  }
};

/// Slot index whose sideband frequency is the negative image of slot p, if
/// that frequency lies on the truncated grid (the degenerate alignment).
inline int conjugate_partner(const ConversionSystem& sys, int p) {
  const double wp = sys.sideband(p);
  for (int q = -sys.order; q <= sys.order; ++q) {
    if (q == p) continue;
    const double wq = sys.sideband(q);
    if (std::abs(wq + wp) <= 1e-9 * std::abs(wp)) return q;
  }
  return p;  // no partner
}

/// Excitation for a physical tone at |sideband(p)| with the given phase
/// relative to the pump zero crossing.  The slot matching +|w| carries
/// v*exp(+j*phase), the slot matching -|w| (degenerate alignment only)
/// carries v*exp(-j*phase).
inline Eigen::VectorXcd tone_excitation(const ConversionSystem& sys, double amplitude, int p,
                                        double phase, int partner) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * sys.order + 1);
  const double wp = sys.sideband(p);
  const double sign_p = wp > 0.0 ? 1.0 : -1.0;
  v(sys.idx(p)) = std::polar(amplitude, sign_p * phase);
  if (partner != p) v(sys.idx(partner)) = std::polar(amplitude, -sign_p * phase);
  return v;
}

}  // namespace detail

/// Cross-frequency aperture at one (observation, harmonic, direction) point.
/// At the degenerate alignment the response depends on the incident phase;
/// min/max span the sampled phase grid and mean is the phase average.  Away
/// from degeneracy the three values coincide.
struct CrossAperture {
  double mean = 0.0;  ///< m^2
  double min = 0.0;   ///< m^2
  double max = 0.0;   ///< m^2
  bool degenerate = false;
};

namespace detail {

inline double aperture_from_current(const TVCircuitModel& model, std::complex<double> i0) {
  const double p_load = model.load_resistance() * std::norm(i0) / 2.0;
  return p_load / model.incident_flux();
}

inline CrossAperture cross_aperture_impl(const FactorizedSystem& f, const TVCircuitModel& model,
                                         int p, double theta, int n_phase) {
  const ConversionSystem& sys = f.sys;
  const double wp = sys.sideband(p);
  const double v = voc_amplitude(model, std::abs(wp), theta);
  const int partner = conjugate_partner(sys, p);
  const int obs = sys.idx(0);

  CrossAperture out;
  out.degenerate = partner != p;
  if (!out.degenerate) {
    const Eigen::VectorXcd rhs = tone_excitation(sys, v, p, 0.0, partner);
    const double a = aperture_from_current(model, f.lu.solve(rhs)(obs));
    out.mean = out.min = out.max = a;
    return out;
  }
  if (n_phase < 1) throw std::invalid_argument("cross_aperture: need at least one phase sample");
  double acc = 0.0;
  double lo = 0.0, hi = 0.0;
  for (int i = 0; i < n_phase; ++i) {
    const double phase = two_pi * i / n_phase;
    const Eigen::VectorXcd rhs = tone_excitation(sys, v, p, phase, partner);
    const double a = aperture_from_current(model, f.lu.solve(rhs)(obs));
    acc += a;
    if (i == 0) {
      lo = hi = a;
    } else {
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
  }
  out.mean = acc / n_phase;
  out.min = lo;
  out.max = hi;
  return out;
}

}  // namespace detail

/// True when the conjugate image of sideband p lands on the truncated
/// harmonic grid, i.e. a pure tone there excites two slots coherently and
/// the response depends on the incident phase.
inline bool degenerate_alignment(const TVCircuitModel& model, double omega, int p,
                                 int order = 4) {
  const double wp = omega + p * model.pump_freq;
  for (int q = -order; q <= order; ++q) {
    if (q == p) continue;
    if (std::abs((omega + q * model.pump_freq) + wp) <= 1e-9 * std::abs(wp)) return true;
  }
  return false;
}

/// Phase-averaged cross-frequency aperture of the pumped loop, with the
/// degenerate min/max envelope.
inline CrossAperture cross_aperture(const TVCircuitModel& model, double omega, int p,
                                    double theta, int order = 4, int n_phase = 16,
                                    int truncation = 8) {
  detail::FactorizedSystem f(assemble_conversion_matrix(model, omega, order, truncation));
  return detail::cross_aperture_impl(f, model, p, theta, n_phase);
}

/// Aperture at one explicit incident phase (degenerate diagnostics).
inline double cross_aperture_at_phase(const TVCircuitModel& model, double omega, int p,
                                      double theta, double phase, int order = 4,
                                      int truncation = 8) {
  detail::FactorizedSystem f(assemble_conversion_matrix(model, omega, order, truncation));
  const ConversionSystem& sys = f.sys;
  const double v = voc_amplitude(model, std::abs(sys.sideband(p)), theta);
  const int partner = detail::conjugate_partner(sys, p);
  const Eigen::VectorXcd rhs = detail::tone_excitation(sys, v, p, phase, partner);
  return detail::aperture_from_current(model, f.lu.solve(rhs)(sys.idx(0)));
}

/// One frequency point of a sweep: the sphere-averaged aperture set (2/3 of
/// the pattern peak for the sin^2 directivity) plus per-harmonic envelopes.
struct PampSpectrumPoint {
  double omega = 0.0;
  HarmonicApertureSet apertures;       ///< means for every |p| <= order, folded
  std::vector<CrossAperture> samples;  ///< peak-direction values, index p + order
};

/// Sweep of phase-averaged aperture sets.  Requested harmonics outside
/// p_set keep zero apertures; all are solved at the same matrix order.
inline PampSpectrumPoint aperture_point(const TVCircuitModel& model, double omega,
                                        const std::vector<int>& p_set, int order = 4,
                                        int n_phase = 16, int truncation = 8) {
  detail::FactorizedSystem f(assemble_conversion_matrix(model, omega, order, truncation));
  PampSpectrumPoint point;
  point.omega = omega;
  point.apertures = HarmonicApertureSet(omega, model.pump_freq, order);
  point.apertures.fold_negative = true;
  point.samples.assign(static_cast<std::size_t>(2 * order + 1), CrossAperture{});
  for (int p : p_set) {
    const CrossAperture a = detail::cross_aperture_impl(f, model, p, pi / 2.0, n_phase);
    point.samples[static_cast<std::size_t>(point.apertures.index(p))] = a;
    point.apertures.mean_at(p) = (2.0 / 3.0) * a.mean;
    if (p == 0) point.apertures.peak_at(0) = a.mean;
  }
  return point;
}

inline std::vector<int> all_harmonics(int order) {
  std::vector<int> out;
  for (int p = -order; p <= order; ++p) out.push_back(p);
  return out;
}

inline std::vector<PampSpectrumPoint> aperture_spectrum(const TVCircuitModel& model,
                                                        const std::vector<double>& omega_grid,
                                                        const std::vector<int>& p_set,
                                                        int order = 4, int n_phase = 16,
                                                        int truncation = 8) {
  std::vector<PampSpectrumPoint> out;
  out.reserve(omega_grid.size());
  for (double w : omega_grid)
    out.push_back(aperture_point(model, w, p_set, order, n_phase, truncation));
  return out;
}

/// Noise temperature via the stationary-noise covariance route:
///   C^V_p = (2*eta0*k_B*T_b^p / lambda_p^2) * integral v_k v_k^H dOmega,
///   C^I   = Z^-1 (sum_p C^V_p) Z^-H,  T_A = R_L/(2 k_B) * [C^I]_00.
/// Noise in different sidebands is uncorrelated, so C^V is diagonal here
/// (one lumped port).  Negative sidebands read the background at |w_p|.
inline double covariance_noise_temperature(const TVCircuitModel& model, double omega,
                                           const SpectralEnvironment& env,
                                           const SphereQuadrature& quad, int order = 4,
                                           int truncation = 8) {
  detail::FactorizedSystem f(assemble_conversion_matrix(model, omega, order, truncation));
  const ConversionSystem& sys = f.sys;
  quad.validate();

  const int n = 2 * order + 1;
  Eigen::VectorXd cv_diag(n);
  for (int p = -order; p <= order; ++p) {
    const double wd = std::abs(sys.sideband(p));
    const double tb = env.brightness_at(wd);
    // integral over the sphere of |v_oc|^2 per unit incident field
    double integral = 0.0;
    for (std::size_t i = 0; i < quad.size(); ++i) {
      const double sin2 = std::max(0.0, 1.0 - quad.nodes[i].z * quad.nodes[i].z);
      const double v = (2.0 * constants::c0 / wd) *
                       std::sqrt(model.antenna_resistance * 1.5 * sin2 / 120.0);
      integral += quad.weights[i] * v * v;
    }
    const double inv_lambda = wd / (two_pi * constants::c0);
    cv_diag(sys.idx(p)) =
        2.0 * constants::eta0 * constants::k_B * tb * inv_lambda * inv_lambda * integral;
  }

  const Eigen::MatrixXcd zinv = f.lu.inverse();
  double ci00 = 0.0;
  for (int q = 0; q < n; ++q) ci00 += std::norm(zinv(sys.idx(0), q)) * cv_diag(q);
  return model.load_resistance() / (2.0 * constants::k_B) * ci00;
}

/// Noise temperature from the aperture route: the folded aperture set fed
/// through the generic harmonic-sum engine.
inline double aperture_sum_noise_temperature(const TVCircuitModel& model, double omega,
                                             const SpectralEnvironment& env, int order = 4,
                                             int n_phase = 16, int truncation = 8) {
  const PampSpectrumPoint point =
      aperture_point(model, omega, all_harmonics(order), order, n_phase, truncation);
  return tv_noise_temperature_iso(point.apertures, env);
}

}  // namespace xfnoise::pamp
