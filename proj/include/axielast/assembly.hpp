#pragma once

#include <iosfwd>

#include <Eigen/Sparse>

#include "axielast/fe_space.hpp"
#include "axielast/manufactured.hpp"
#include "axielast/params.hpp"
#include "axielast/quadrature.hpp"

namespace axielast {

// Element matrices of the stabilized forms. The stress block is ordered
// row-0 BDM functions, row-1 BDM functions, hoop P_k functions; the
// displacement block is component-major over the P_{k-1} basis.
struct ElementBlocks {
  Eigen::MatrixXd a;  // stress x stress
  Eigen::MatrixXd b;  // stress x displacement
  Eigen::MatrixXd c;  // stress x rotation
};

ElementBlocks element_blocks(const ElementBasis& basis, const AffineMap& map,
                             const MaterialParams& params, const QuadratureRule& rule);

struct ElementRhs {
  Eigen::VectorXd stress;        // gamma * (f, div_axi tau)
  Eigen::VectorXd displacement;  // (f, v)
  Eigen::VectorXd rotation;      // (f ^ x, q)
};

ElementRhs element_rhs(const ElementBasis& basis, const AffineMap& map,
                       const MaterialParams& params, const ManufacturedCase& mc,
                       const QuadratureRule& rule);

// Assembly quadrature default: degree 2k+4 plus the configured bump, capped
// at the supported triangle-rule range.
int assembly_exactness(int k, int quad_bump);

struct SaddleSystem {
  Eigen::SparseMatrix<double> matrix;  // symmetric indefinite, free DOFs only
  Eigen::VectorXd rhs;
  DofLayout layout;
};

SaddleSystem assemble(const Mesh& mesh, int k, const MaterialParams& params,
                      const ManufacturedCase& mc, int quad_bump = 0);

struct SolutionFields {
  Eigen::VectorXd coeffs;   // full-length vector, constrained DOFs restored as zeros
  double residual = 0.0;    // relative residual of the linear solve
};

// Sparse direct factorization; enforces a relative residual <= 1e-9.
SolutionFields solve(const SaddleSystem& system);

// Coordinate text dump "i j value" of the free-DOF matrix.
void dump_matrix(const SaddleSystem& system, std::ostream& os);

// Stress-block operators over free stress DOFs with assembly quadrature:
// the a-form block and the Gram matrix of the Sigma norm
// ||div_axi||^2 + ||sigma||^2 + ||hoop||^2 (all r-weighted).
struct StressOperators {
  Eigen::SparseMatrix<double> a_block;
  Eigen::SparseMatrix<double> sigma_gram;
  std::vector<int> free_stress_index;  // global DOF -> stress-free id, -1 elsewhere
  int n_free_stress = 0;
};

StressOperators build_stress_operators(const Mesh& mesh, int k, const MaterialParams& params,
                                       int quad_bump = 0);

// The b+c coupling block together with the norms needed to evaluate the
// discrete inf-sup constant: rows are displacement+rotation DOFs, columns
// free stress DOFs; uq_mass is the weighted L2 mass of (w, p).
struct CouplingOperators {
  Eigen::SparseMatrix<double> coupling;
  Eigen::SparseMatrix<double> sigma_gram;
  Eigen::SparseMatrix<double> uq_mass;
  int n_free_stress = 0;
  int n_uq = 0;
};

CouplingOperators build_coupling_operators(const Mesh& mesh, int k, int quad_bump = 0);

}  // namespace axielast
