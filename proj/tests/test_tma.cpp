// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "xfnoise/tma.hpp"

using namespace xfnoise;
using Catch::Approx;

namespace {

constexpr double w0 = two_pi * 3.0e8;

// Independent oracle for a gate Fourier coefficient: composite 12-point
// Gauss-Legendre on the on-interval of exp(-j*2*pi*p*x).
std::complex<double> gate_coefficient_numeric(double on, double tau, int p) {
  static const double gx[6] = {0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
                               0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
  static const double gw[6] = {0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
                               0.1600783285433462, 0.1069393259953184, 0.0471753363865118};
  const int panels = std::max(8, 6 * std::abs(p));
  std::complex<double> acc = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = on + tau * i / panels;
    const double b = on + tau * (i + 1) / panels;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int g = 0; g < 6; ++g) {
      for (double s : {-gx[g], gx[g]}) {
        const double x = mid + half * s;
        acc += gw[g] * half * std::polar(1.0, -two_pi * p * x);
      }
    }
  }
  return acc;
}

// Independent oracle for the directional aperture: fresh double sum with the
// numeric gate coefficients.
double directional_oracle(const TMAConfig& cfg, double omega, int p, const Vec3& khat) {
  const double wp = omega + p * cfg.mod_freq();
  std::complex<double> acc = 0.0;
  for (std::size_t k = 0; k < cfg.elements(); ++k) {
    for (std::size_t q = 0; q < cfg.elements(); ++q) {
      const std::complex<double> uk = gate_coefficient_numeric(cfg.on_times[k], cfg.durations[k], p);
      const std::complex<double> uq = gate_coefficient_numeric(cfg.on_times[q], cfg.durations[q], p);
      const double phase = wp * dot(khat, cfg.positions[k] - cfg.positions[q]) / constants::c0;
      acc += cfg.weights[k] * std::conj(cfg.weights[q]) * uk * std::conj(uq) *
             std::polar(1.0, -phase);
    }
  }
  return cfg.prefactor() * acc.real();
}

}  // namespace

TEST_CASE("always-on switch has only a DC coefficient", "[tma]") {
  CHECK(switch_coefficient(0.0, 1.0, 0) == std::complex<double>(1.0, 0.0));
  for (int p = 1; p <= 6; ++p) {
    CHECK(std::abs(switch_coefficient(0.0, 1.0, p)) < 1e-15);
    CHECK(std::abs(switch_coefficient(0.0, 1.0, -p)) < 1e-15);
  }
}

TEST_CASE("quarter gate coefficient matches the closed form and the integral", "[tma]") {
  const std::complex<double> got = switch_coefficient(0.0, 0.25, 1);
  const std::complex<double> want = 0.25 * sinc(pi / 4.0) * std::polar(1.0, -pi / 4.0);
  CHECK(std::abs(got - want) < 1e-15);
  CHECK(std::abs(got - gate_coefficient_numeric(0.0, 0.25, 1)) < 1e-12);
}

TEST_CASE("gate coefficients obey conjugate symmetry and match the integral", "[tma]") {
  std::mt19937 rng(7u);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double on = 0.999 * u01(rng);
    const double tau = 0.05 + 0.95 * u01(rng) * (1.0 - 0.05);
    for (int p = 0; p <= 7; ++p) {
      const auto up = switch_coefficient(on, tau, p);
      const auto um = switch_coefficient(on, tau, -p);
      CHECK(std::abs(um - std::conj(up)) < 1e-14);
      CHECK(std::abs(up - gate_coefficient_numeric(on, tau, p)) < 1e-12);
      CHECK(std::abs(up) <= tau + 1e-14);
    }
  }
}

TEST_CASE("switch_spectrum DC term equals the duty cycle", "[tma]") {
  const TMAConfig cfg = staggered_linear_array(8, w0, 1000.0);
  for (std::size_t k = 0; k < cfg.elements(); ++k) {
    const auto spec = switch_spectrum(cfg, k, 4);
    CHECK(std::abs(spec[4] - std::complex<double>(0.25, 0.0)) < 1e-15);
  }
}

TEST_CASE("single-element aperture is direction independent", "[tma]") {
  TMAConfig cfg;
  cfg.positions = {{0.3, -0.1, 2.0}};
  cfg.weights = {{0.8, 0.0}};
  cfg.on_times = {0.2};
  cfg.durations = {0.5};
  cfg.period = 1e-6;
  const double a1 = directional_aperture(cfg, w0, 2, {0.0, 0.0, 1.0});
  const double a2 = directional_aperture(cfg, w0, 2, normalized({1.0, 1.0, -0.3}));
  const double want = std::norm(cfg.weights[0]) * std::norm(switch_coefficient(0.2, 0.5, 2));
  CHECK(a1 == Approx(want).epsilon(1e-13));
  CHECK(a2 == Approx(want).epsilon(1e-13));
}

TEST_CASE("broadside aperture is the coherent switch sum", "[tma]") {
  const TMAConfig cfg = staggered_linear_array(8, w0, 1000.0);
  for (int p : {0, 1, 4}) {
    std::complex<double> coherent = 0.0;
    for (std::size_t k = 0; k < cfg.elements(); ++k)
      coherent += cfg.weights[k] * switch_coefficient(cfg.on_times[k], cfg.durations[k], p);
    const double got = directional_aperture(cfg, w0, p, {0.0, 0.0, 1.0});
    CHECK(got == Approx(std::norm(coherent)).margin(1e-12));
  }
}

TEST_CASE("directional aperture matches an independent double sum", "[tma]") {
  const TMAConfig cfg = staggered_linear_array(8, w0, 1000.0);
  const Vec3 endfire{1.0, 0.0, 0.0};
  const Vec3 broadside{0.0, 0.0, 1.0};
  const Vec3 skew = normalized({0.5, -1.0, 0.25});
  for (int p : {0, 1, -2}) {
    for (const Vec3& k : {endfire, broadside, skew}) {
      const double got = directional_aperture(cfg, w0, p, k);
      CHECK(got == Approx(directional_oracle(cfg, w0, p, k)).margin(1e-10));
    }
  }
}

TEST_CASE("random configurations keep apertures real and nonnegative", "[tma]") {
  std::mt19937 rng(99u);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    TMAConfig cfg;
    const int n = 2 + static_cast<int>(u01(rng) * 5);
    for (int k = 0; k < n; ++k) {
      cfg.positions.push_back({u01(rng), u01(rng), u01(rng)});
      cfg.weights.push_back(std::polar(0.2 + u01(rng), two_pi * u01(rng)));
      cfg.on_times.push_back(0.99 * u01(rng));
      cfg.durations.push_back(0.05 + 0.9 * u01(rng));
    }
    cfg.period = 1e-7;
    const Vec3 khat = normalized({u01(rng) - 0.5, u01(rng) - 0.5, u01(rng) - 0.5});
    const int p = static_cast<int>(u01(rng) * 7) - 3;
    double a = 0.0;
    REQUIRE_NOTHROW(a = directional_aperture(cfg, w0, p, khat));
    CHECK(a >= 0.0);
  }
}

TEST_CASE("closed-form and quadrature sphere averages agree", "[tma]") {
  const TMAConfig cfg = staggered_linear_array(8, w0, 1000.0);
  for (int p : {0, 1, -1, 2, -2}) {
    const double cf = mean_aperture(cfg, w0, p, MeanMethod::closed_form);
    const double qd = mean_aperture(cfg, w0, p, MeanMethod::quadrature);
    CHECK(std::abs(qd - cf) <= 1e-6 * cf);
    // doubling the rule changes the quadrature value below 1e-8
    const SphereQuadrature dense = build_product_rule(128, 256);
    const double qd2 = mean_aperture(cfg, w0, p, MeanMethod::quadrature, &dense);
    CHECK(std::abs(qd2 - qd) <= 1e-8 * std::max(1.0, qd));
  }
}

TEST_CASE("two always-on elements at half-wavelength spacing", "[tma]") {
  const double lam = two_pi * constants::c0 / w0;
  TMAConfig cfg;
  cfg.positions = {{0.0, 0.0, 0.0}, {lam / 2.0, 0.0, 0.0}};
  cfg.weights = {1.0, 1.0};
  cfg.on_times = {0.0, 0.0};
  cfg.durations = {1.0, 1.0};
  cfg.period = 1000.0 * two_pi / w0;
  // cross terms carry sinc(pi) = 0, diagonal terms sinc(0) = 1
  CHECK(mean_aperture(cfg, w0, 0) == Approx(2.0).epsilon(1e-12));
  CHECK(mean_aperture(cfg, w0, 0, MeanMethod::quadrature) == Approx(2.0).epsilon(1e-6));
}

TEST_CASE("filtered noise ratios reproduce the staggered-array values", "[tma]") {
  const TMAConfig cfg = staggered_linear_array(8, w0, 1000.0);
  const auto p0 = filtered_noise_temperature(cfg, w0, 0, 290.0);
  CHECK(p0.ratio_db == Approx(0.0).margin(1e-12));
  const auto p1 = filtered_noise_temperature(cfg, w0, 1, 290.0);
  const auto p2 = filtered_noise_temperature(cfg, w0, 2, 290.0);
  CHECK(p1.ratio_db == Approx(4.18).margin(0.05));
  CHECK(p2.ratio_db == Approx(5.35).margin(0.05));
  // partial sums of nonnegative terms never decrease
  double prev = 0.0;
  for (int pf = 0; pf <= 5; ++pf) {
    const double db = filtered_noise_temperature(cfg, w0, pf, 290.0).ratio_db;
    CHECK(db >= prev - 1e-12);
    prev = db;
  }
}

TEST_CASE("aperture averages converge for slow modulation", "[tma]") {
  // The cross terms scale as p/M, so each doubling of M halves the change.
  // Measured changes between M=1000 and M=2000: 0.05% at |p|=1, 0.69% at
  // |p|=2 (the |p|=2 harmonic carries proportionally larger cross terms).
  const TMAConfig a = staggered_linear_array(8, w0, 1000.0);
  const TMAConfig b = staggered_linear_array(8, w0, 2000.0);
  const TMAConfig c = staggered_linear_array(8, w0, 4000.0);
  for (int p = -2; p <= 2; ++p) {
    const double ma = mean_aperture(a, w0, p);
    const double mb = mean_aperture(b, w0, p);
    const double mc = mean_aperture(c, w0, p);
    CHECK(std::abs(mb - ma) <= (std::abs(p) <= 1 ? 5e-3 : 1e-2) * ma);
    if (p != 0) CHECK(std::abs(mc - mb) < 0.6 * std::abs(mb - ma));
  }
  // the two-cycle schedule never becomes a static array
  const TMAConfig slow = staggered_linear_array(8, w0, 1.0e6);
  CHECK(mean_aperture(slow, w0, 1) > 0.3);
  CHECK(mean_aperture(slow, w0, -1) > 0.3);
}

TEST_CASE("gate harmonics decay with |p|", "[tma]") {
  const TMAConfig cfg = staggered_linear_array(8, w0, 1000.0);
  const double base = mean_aperture(cfg, w0, 0);
  CHECK(mean_aperture(cfg, w0, 41) < 1e-3 * base);
  CHECK(std::abs(switch_coefficient(0.1, 0.25, 200)) < 1e-3);
}

TEST_CASE("time-domain synthesis matches the harmonic formula", "[tma]") {
  std::mt19937 rng(20260811u);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (double divisor : {50.0, 200.0}) {
    const TMAConfig cfg = staggered_linear_array(8, w0, divisor);
    for (int trial = 0; trial < 3; ++trial) {
      const int p = static_cast<int>(u01(rng) * 5) - 2;
      const Vec3 khat = normalized({u01(rng) - 0.5, u01(rng) - 0.5, u01(rng) - 0.5});
      const double fd = directional_aperture(cfg, w0, p, khat);
      const double td = time_domain_aperture(cfg, w0, p, khat, 4);
      CHECK(td == Approx(fd).margin(0.01 * std::max(fd, 1e-6)));
    }
  }
}

TEST_CASE("always-on array reduces to the classic array factor", "[tma]") {
  const double lam = two_pi * constants::c0 / w0;
  TMAConfig cfg;
  for (int k = 0; k < 4; ++k) {
    cfg.positions.push_back({k * lam / 2.0, 0.0, 0.0});
    cfg.weights.push_back(1.0);
    cfg.on_times.push_back(0.0);
    cfg.durations.push_back(1.0);
  }
  cfg.period = 100.0 * two_pi / w0;
  for (const Vec3& khat : {Vec3{0.0, 0.0, 1.0}, normalized({1.0, 0.2, 0.4})}) {
    std::complex<double> af = 0.0;
    for (int k = 0; k < 4; ++k)
      af += std::polar(1.0, -w0 * dot(khat, cfg.positions[static_cast<std::size_t>(k)]) /
                                constants::c0);
    CHECK(directional_aperture(cfg, w0, 0, khat) == Approx(std::norm(af)).margin(1e-10));
    CHECK(time_domain_aperture(cfg, w0, 0, khat, 2) == Approx(std::norm(af)).margin(1e-3));
  }
}

TEST_CASE("nonpositive harmonic frequencies are rejected", "[tma]") {
  const TMAConfig cfg = staggered_linear_array(4, w0, 2.0);
  CHECK_THROWS_AS(directional_aperture(cfg, w0, -3, {0.0, 0.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(mean_aperture(cfg, w0, -3), std::domain_error);
  CHECK_THROWS_AS(time_domain_aperture(cfg, w0, -3, {0.0, 0.0, 1.0}), std::domain_error);
}

TEST_CASE("invalid array configurations are rejected", "[tma]") {
  TMAConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = staggered_linear_array(4, w0, 100.0);
  cfg.durations[2] = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = staggered_linear_array(4, w0, 100.0);
  cfg.on_times[1] = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
