// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "xfnoise/core.hpp"

namespace xfnoise {

/// Quadrature rule on the unit sphere.  Weights are in steradians and sum
/// to 4*pi; `order` is the polynomial degree the rule integrates exactly.
struct SphereQuadrature {
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  int order = 0;

  std::size_t size() const { return nodes.size(); }

  void validate() const {
    if (nodes.empty() || nodes.size() != weights.size())
      throw std::invalid_argument("sphere quadrature is empty or inconsistent");
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!(weights[i] > 0.0)) throw std::invalid_argument("sphere quadrature weight not positive");
      if (std::abs(norm(nodes[i]) - 1.0) > 1e-12)
        throw std::invalid_argument("sphere quadrature node not on the unit sphere");
      sum += weights[i];
    }
    if (std::abs(sum - 4.0 * pi) > 1e-12 * 4.0 * pi)
      throw std::invalid_argument("sphere quadrature weights do not sum to 4*pi");
  }
};

namespace detail {

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton.
    double xi = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = xi;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
      const double dx = p1 / dp;
      xi -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // One more evaluation of P_{n-1} for the weight.
    double p0 = 1.0, p1 = xi;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
    const double wi = 2.0 / ((1.0 - xi * xi) * dp * dp);
    x[static_cast<std::size_t>(i)] = -xi;
    w[static_cast<std::size_t>(i)] = wi;
    x[static_cast<std::size_t>(n - 1 - i)] = xi;
    w[static_cast<std::size_t>(n - 1 - i)] = wi;
  }
}

}  // namespace detail

/// Product rule: Gauss-Legendre in cos(theta) times a uniform grid in phi.
/// Exact for spherical polynomials up to degree min(2*n_theta-1, n_phi-1).
inline SphereQuadrature build_product_rule(int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1)
    throw std::invalid_argument("build_product_rule: node counts must be positive");
  std::vector<double> ct, wt;
  detail::gauss_legendre(n_theta, ct, wt);

  SphereQuadrature q;
  q.order = std::min(2 * n_theta - 1, n_phi - 1);
  q.nodes.reserve(static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_phi));
  q.weights.reserve(q.nodes.capacity());
  const double wphi = two_pi / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double c = ct[static_cast<std::size_t>(i)];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = wphi * j;
      q.nodes.push_back({s * std::cos(phi), s * std::sin(phi), c});
      q.weights.push_back(wt[static_cast<std::size_t>(i)] * wphi);
    }
  }
  return q;
}

/// Default rule used throughout: dense enough for array phase factors at
/// several-wavelength element separations.
inline const SphereQuadrature& default_sphere_rule() {
  static const SphereQuadrature q = build_product_rule(64, 128);
  return q;
}

/// (4*pi)^-1 * sum_i w_i f(k_i).
template <class F>
double sphere_average(F&& f, const SphereQuadrature& quad) {
  quad.validate();
  double acc = 0.0;
  for (std::size_t i = 0; i < quad.size(); ++i) acc += quad.weights[i] * f(quad.nodes[i]);
  return acc / (4.0 * pi);
}

/// sum_i w_i f(k_i) over the full sphere.
template <class F>
double sphere_integral(F&& f, const SphereQuadrature& quad) {
  quad.validate();
  double acc = 0.0;
  for (std::size_t i = 0; i < quad.size(); ++i) acc += quad.weights[i] * f(quad.nodes[i]);
  return acc;
}

}  // namespace xfnoise
