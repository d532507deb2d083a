#pragma once

#include <array>
#include <functional>

#include <Eigen/Dense>

#include "axielast/fe_space.hpp"
#include "axielast/poly.hpp"

namespace axielast {

using TensorField = std::function<Eigen::Matrix2d(double, double)>;
using ScalarField = std::function<double(double, double)>;

// Interpolant of a stress pair in the element spaces: BDM_k coefficients per
// tensor row (row 0 first) plus P_k coefficients for the hoop component, with
// a condition estimate of the local DOF system.
struct InterpolationResult {
  Eigen::VectorXd stress_coeffs;  // 2 * n_vec, element-local basis coefficients
  Eigen::VectorXd hoop_coeffs;    // n_pk
  double condition = 0.0;
};

// Degree-k stress interpolation (k = 1, 2): r-weighted normal moments against
// (P_k)^2 on every edge, plus for k = 2 the r-weighted interior moments
// against constant tensors and x_perp tensor p0. Edge conditions on axis
// edges are vacuous (r = 0 there); those DOFs are pinned to zero. The hoop
// component is the plain L2 projection onto P_k (the radial weight cancels).
// Throws std::runtime_error when the local system is singular.
InterpolationResult interpolate_stress(int k, const AffineMap& map, const ElementBasis& basis,
                                       const TensorField& tau, const ScalarField& tau_theta);

// Interior-moment matrix of the degree-2 projection on the reference triangle
// in the (r1*, r2*) parametrization, assembled from the closed-form weighted
// monomial integrals, together with its determinant and the closed-form
// determinant polynomial.
struct MtResult {
  Eigen::Matrix<double, 6, 6> matrix;
  double det = 0.0;
  double closed_form_det = 0.0;
};

MtResult mt_matrix(double r1_star, double r2_star);
// Requires r0 > 0 (the r_star parametrization); throws otherwise.
MtResult mt_matrix(const AffineMap& map);

// |LHS - RHS| of the element identity for the rotation-coupling form,
// with both sides evaluated by quadrature:
//   LHS = (tau_rz - tau_zr, p) + ((div_axi(tau, tau_theta)) ^ x, p)
//   RHS = boundary normal-moment term - (tau : x_perp grad p) - (tau_theta z p)_unweighted.
// Polynomial inputs are given in physical (r,z) coordinates; tau is row-major
// (rr, rz, zr, zz). The triangle must keep r > 0 at all quadrature points.
double c_identity_residual(const AffineMap& map, const std::array<Poly2, 4>& tau,
                           const Poly2& tau_theta, const Poly2& p, int exactness = 12);

}  // namespace axielast
