#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "axielast/geometry.hpp"

namespace axielast {

// Point/weight set on the reference triangle (edge rules store the 1D
// coordinate in x[0] with x[1] = 0). All points are strictly interior to
// the reference element so 1/r factors stay finite on axis triangles;
// weights are positive and sum to the reference measure.
struct QuadratureRule {
  std::vector<Eigen::Vector2d> points;
  std::vector<double> weights;
  int exactness = 0;
  bool edge_rule = false;

  int size() const { return int(points.size()); }
};

// Interior rule integrating all polynomials of total degree <= exactness.
// Supported range: 0 <= exactness <= 20.
QuadratureRule triangle_gauss_rule(int exactness);

// Gauss-Legendre rule on (0,1); exact for degree 2*npoints - 1. npoints in 1..5.
QuadratureRule edge_gauss_rule(int npoints);

// Gauss-Legendre nodes/weights on (0,1) for any order (internal oracle use).
std::vector<std::array<double, 2>> gauss_legendre_01(int n);

// Closed form of the radially weighted monomial integral over the reference
// triangle: s!t!/(s+t+3)! * [r1*(s+1) + r2*(t+1) + (s+t+3)*include_one],
// i.e. the integral of xi^s eta^t (r1 xi + r2 eta + include_one).
double exact_weighted_monomial(int s, int t, double r1, double r2, bool include_one);

// Integral of f over the mapped triangle with the cylindrical measure r dr dz:
// sum_q w_q f(F(q)) r(q) |J|. Hard error on a non-finite integrand value.
template <class F>
double integrate_weighted(const AffineMap& map, const QuadratureRule& rule, F&& f) {
  double acc = 0.0;
  for (int q = 0; q < rule.size(); ++q) {
    const Eigen::Vector2d x = map.map(rule.points[q][0], rule.points[q][1]);
    const double v = f(x[0], x[1]);
    if (!std::isfinite(v))
      throw std::runtime_error("integrate_weighted: non-finite integrand value");
    acc += rule.weights[q] * v * x[0];
  }
  return acc * map.det;
}

}  // namespace axielast
