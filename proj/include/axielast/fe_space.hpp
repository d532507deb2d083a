#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "axielast/geometry.hpp"
#include "axielast/poly.hpp"

namespace axielast {

// One reference edge of the triangle (0,0),(1,0),(0,1); edge m runs from
// vertex m to vertex (m+1)%3, normal is the outward unit normal.
struct RefEdge {
  Eigen::Vector2d a, b, normal;
  double length;
  Eigen::Vector2d point(double t) const { return a + t * (b - a); }
};
const std::array<RefEdge, 3>& reference_edges();

// Reference BDM_k basis (vector polynomials of full degree k) together with
// the discontinuous P_k scalar basis used for the remaining fields.
//
// Degrees of freedom, in function order:
//   - edge-major: for edge m and Gauss point j the normal value
//     (phi . n)(q_{m,j}), giving the Lagrangian property (phi_i . n)(q_j) = delta_ij;
//   - interior (k >= 2): moments against gradients of monomials of degree
//     1..k-1 and against curls of the cubic bubble times monomials of degree
//     <= k-2, a unisolvent completion validated at build time.
struct ElementBasis {
  int degree = 1;
  int n_edge_pts = 2;      // k+1 Gauss points per edge
  int n_vec = 6;           // (k+1)(k+2) vector functions
  int n_interior = 0;      // k^2 - 1
  int n_pk = 3;            // dim P_k
  int n_pkm1 = 1;          // dim P_{k-1}

  std::vector<std::array<Poly2, 2>> vec_funcs;  // edge dofs first, then interior
  std::vector<Poly2> vec_divs;                  // reference Cartesian divergences
  std::vector<Poly2> pk_funcs;                  // monomials of degree <= k;
                                                // the first n_pkm1 span P_{k-1}
  std::vector<double> edge_points;              // the k+1 Gauss parameters on (0,1)

  int edge_dof(int edge, int j) const { return edge * n_edge_pts + j; }
  int interior_dof(int i) const { return 3 * n_edge_pts + i; }
};

// Throws std::runtime_error if the DOF functional system is singular.
ElementBasis reference_basis(int k);

struct PiolaValue {
  Eigen::Vector2d value;
  double divergence;  // Cartesian 2D divergence of the mapped field
};

// Contravariant Piola transform: value = J v / det, divergence = ref_div / det.
inline PiolaValue piola(const AffineMap& map, const Eigen::Vector2d& ref_value,
                        double ref_div) {
  return {map.jacobian * ref_value / map.det, ref_div / map.det};
}

// Reference to one global degree of freedom together with the scatter weight
// relating the element-local basis coefficient to the global value (sign from
// the global edge normal convention, scale from edge lengths).
struct DofRef {
  int index = -1;
  double weight = 1.0;
};

// Global numbering for the four-field system: two BDM_k stress rows with
// shared edge DOFs, then element-local blocks for the hoop stress (P_k),
// the pseudo-displacement w (two P_{k-1} components) and the rotation
// multiplier p (P_{k-1}). Stress DOFs on axis edges are constrained to zero
// and eliminated from the free numbering.
struct DofLayout {
  int degree = 1;
  int n_vec = 6, n_interior = 0, n_edge_pts = 2, n_pk = 3, n_pkm1 = 1;
  int n_edges = 0, n_tris = 0;

  std::array<int, 2> row_edge_base{0, 0};
  std::array<int, 2> row_interior_base{0, 0};
  int hoop_base = 0, disp_base = 0, rot_base = 0;
  int total = 0;

  // per triangle: 2*n_vec stress DofRefs, row-major (row 0 functions first)
  std::vector<std::vector<DofRef>> stress_dofs;
  std::vector<char> constrained;  // over all DOFs
  std::vector<int> free_index;    // -1 where constrained
  int n_free = 0;

  int hoop_dof(int t, int i) const { return hoop_base + t * n_pk + i; }
  int disp_dof(int t, int comp, int i) const {
    return disp_base + t * 2 * n_pkm1 + comp * n_pkm1 + i;
  }
  int rot_dof(int t, int i) const { return rot_base + t * n_pkm1 + i; }
};

DofLayout build_dof_layout(const Mesh& mesh, int k);

// Discrete fields at one reference point of a triangle. The axisymmetric
// divergence is the Cartesian row divergence plus the 1/r couplings
// ((sigma_rr - sigma_theta)/r on row 1, sigma_zr/r on row 2); evaluating
// exactly on the axis with a nonzero numerator yields non-finite entries.
struct FieldSample {
  Eigen::Matrix2d stress = Eigen::Matrix2d::Zero();
  double hoop = 0.0;
  Eigen::Vector2d div_axi = Eigen::Vector2d::Zero();
  Eigen::Vector2d displacement = Eigen::Vector2d::Zero();
  double rotation = 0.0;
};

FieldSample eval_discrete_field(const Mesh& mesh, const ElementBasis& basis,
                                const DofLayout& layout, const Eigen::VectorXd& coeffs,
                                int tri, double xi, double eta);

}  // namespace axielast
