// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "xfnoise/sphere.hpp"

using namespace xfnoise;

namespace {

// Independent oracle: composite Simpson in theta, periodic trapezoid in phi.
template <class F>
double grid_integral(F&& f, int n_theta = 2000, int n_phi = 1000) {
  double acc = 0.0;
  for (int i = 0; i <= n_theta; ++i) {
    const double th = pi * i / n_theta;
    const double w = (i == 0 || i == n_theta) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    double inner = 0.0;
    for (int j = 0; j < n_phi; ++j) inner += f(unit_from_angles(th, two_pi * j / n_phi));
    acc += w * std::sin(th) * inner * (two_pi / n_phi);
  }
  return acc * (pi / n_theta) / 3.0;
}

}  // namespace

TEST_CASE("product rule weights sum to 4*pi and pass validation", "[sphere]") {
  for (auto [nt, np] : {std::pair{4, 8}, {17, 3}, {64, 128}}) {
    const SphereQuadrature q = build_product_rule(nt, np);
    REQUIRE_NOTHROW(q.validate());
    double sum = 0.0;
    for (double w : q.weights) sum += w;
    CHECK(sum == Catch::Approx(4.0 * pi).epsilon(1e-13));
  }
}

TEST_CASE("nonpositive node counts are rejected", "[sphere]") {
  CHECK_THROWS_AS(build_product_rule(0, 8), std::invalid_argument);
  CHECK_THROWS_AS(build_product_rule(8, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_product_rule(-3, -1), std::invalid_argument);
}

TEST_CASE("unit integrand integrates to 4*pi", "[sphere]") {
  const SphereQuadrature q = build_product_rule(8, 16);
  CHECK(sphere_integral([](const Vec3&) { return 1.0; }, q) ==
        Catch::Approx(4.0 * pi).epsilon(1e-14));
}

TEST_CASE("sin^2(theta) integrates to 8*pi/3", "[sphere]") {
  const SphereQuadrature q = build_product_rule(16, 16);
  const double got = sphere_integral([](const Vec3& k) { return 1.0 - k.z * k.z; }, q);
  CHECK(got == Catch::Approx(8.0 * pi / 3.0).epsilon(1e-14));
  // equivalently the mean of the D = 1.5 pattern is unity
  const double mean = sphere_average([](const Vec3& k) { return 1.5 * (1.0 - k.z * k.z); }, q);
  CHECK(mean == Catch::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("plane-wave factor integrates to 4*pi*sinc(k*d)", "[sphere]") {
  const SphereQuadrature q = default_sphere_rule();
  const Vec3 dhat = normalized({0.3, -0.5, 0.81});

  for (double a : {0.7, 2.37, 6.1}) {
    auto f = [&](const Vec3& k) { return std::cos(a * dot(k, dhat)); };
    const double got = sphere_integral(f, q);
    CHECK(got == Catch::Approx(4.0 * pi * sinc(a)).epsilon(1e-12));
    CHECK(got == Catch::Approx(grid_integral(f)).margin(1e-9));
  }

  // zero crossing at k*d = pi
  auto f = [&](const Vec3& k) { return std::cos(pi * dot(k, dhat)); };
  CHECK(std::abs(sphere_integral(f, q)) < 1e-12 * 4.0 * pi);
}

TEST_CASE("sphere_average of a constant is the constant", "[sphere]") {
  const SphereQuadrature q = build_product_rule(6, 7);
  CHECK(sphere_average([](const Vec3&) { return -3.25; }, q) ==
        Catch::Approx(-3.25).epsilon(1e-14));
}

TEST_CASE("element-pair phase average matches the sinc identity", "[sphere]") {
  // <exp(-j*w*khat.(r-r'))/c> over the sphere equals sinc(w*|r-r'|/c);
  // checked against the quadrature of the real part plus grid refinement.
  const double w = two_pi * 3.0e8;
  const Vec3 r1{0.7, 0.0, 0.0}, r2{0.0, 0.2, -0.4};
  const double dist = norm(r1 - r2);
  auto f = [&](const Vec3& k) { return std::cos(w * dot(k, r1 - r2) / constants::c0); };

  const double coarse = sphere_average(f, build_product_rule(64, 128));
  const double fine = sphere_average(f, build_product_rule(128, 256));
  CHECK(coarse == Catch::Approx(sinc(w * dist / constants::c0)).margin(1e-12));
  CHECK(std::abs(coarse - fine) < 1e-12);
}

TEST_CASE("doubling node counts leaves band-limited averages fixed", "[sphere]") {
  auto pattern = [](const Vec3& k) {
    return 1.0 + 0.4 * k.x - 0.9 * k.y * k.z + 1.7 * k.z * k.z * k.x * k.x;
  };
  const double a = sphere_average(pattern, build_product_rule(8, 16));
  const double b = sphere_average(pattern, build_product_rule(16, 32));
  CHECK(std::abs(a - b) < 1e-12 * std::abs(a));
}

TEST_CASE("averages are rotation invariant for smooth patterns", "[sphere]") {
  std::mt19937 rng(20260811u);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  // random orthonormal frame
  Vec3 e1 = normalized({u(rng), u(rng), u(rng)});
  Vec3 t{u(rng), u(rng), u(rng)};
  Vec3 e2 = normalized(t - dot(t, e1) * e1);
  Vec3 e3{e1.y * e2.z - e1.z * e2.y, e1.z * e2.x - e1.x * e2.z, e1.x * e2.y - e1.y * e2.x};

  auto f = [](const Vec3& k) { return std::exp(0.8 * k.z) * std::cos(1.3 * k.x - 0.2 * k.y); };
  auto rotated = [&](const Vec3& k) {
    return f({e1.x * k.x + e2.x * k.y + e3.x * k.z, e1.y * k.x + e2.y * k.y + e3.y * k.z,
              e1.z * k.x + e2.z * k.y + e3.z * k.z});
  };
  const SphereQuadrature q = default_sphere_rule();
  CHECK(sphere_average(rotated, q) == Catch::Approx(sphere_average(f, q)).margin(1e-8));
}

TEST_CASE("empty quadrature is rejected", "[sphere]") {
  SphereQuadrature q;
  CHECK_THROWS_AS(sphere_average([](const Vec3&) { return 1.0; }, q), std::invalid_argument);
}
