// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace xfnoise {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

namespace constants {

/// Boltzmann constant, J/K.
inline constexpr double k_B = 1.38e-23;

/// Vacuum speed of light, m/s.
inline constexpr double c0 = 299792458.0;

/// Freespace wave impedance, ohm.  Kept at exactly 120*pi so that the
/// small-antenna open-circuit voltage law (which embeds the constant 120)
/// reproduces A_eff = lambda^2 D / (4 pi) at conjugate match.
inline constexpr double eta0 = 120.0 * std::numbers::pi;

}  // namespace constants

/// Plain 3-vector for far-field directions and element positions.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
  return {v.x / n, v.y / n, v.z / n};
}

/// Unit vector from polar angle theta (from +z) and azimuth phi.
inline Vec3 unit_from_angles(double theta, double phi) {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

/// sinc x = sin x / x with the removable singularity filled in.
inline double sinc(double x) {
  if (std::abs(x) < 1e-8) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

inline double to_db(double power_ratio) { return 10.0 * std::log10(power_ratio); }

inline double hz_to_rad(double f_hz) { return two_pi * f_hz; }
inline double rad_to_hz(double w) { return w / two_pi; }

}  // namespace xfnoise
