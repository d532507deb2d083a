#pragma once

#include <string>
#include <vector>

#include "axielast/assembly.hpp"
#include "axielast/manufactured.hpp"

namespace axielast {

struct ErrorTriple {
  double sigma_err = 0.0;  // Sigma-norm error of the stress pair
  double u_err = 0.0;      // weighted L2 error of the recovered displacement w + x_perp p
  double asym_err = 0.0;   // weighted Frobenius norm of the skew part of the stress error
};

// Error quadrature uses degree 2k+6 plus the bump so measurement noise stays
// below the discretization error.
ErrorTriple compute_errors(const Mesh& mesh, const ElementBasis& basis, const DofLayout& layout,
                           const SolutionFields& solution, const ManufacturedCase& mc,
                           int quad_bump = 0);

// log(e0/e1) / log(h0/h1); the h sequence 1/4, 1/6, ... is not dyadic.
double convergence_rate(double e0, double e1, double h0, double h1);

struct ErrorReport {
  struct Row {
    int n = 0;
    double h = 0.0, sigma_err = 0.0, u_err = 0.0, asym_err = 0.0;
  };
  std::vector<Row> rows;
  std::vector<double> sigma_rate, u_rate, asym_rate;  // consecutive, size rows-1
  bool aborted = false;   // solver failure left the report partial
  std::string error;
};

ErrorReport convergence_study(const ManufacturedCase& mc, int k, const std::vector<int>& ns,
                              const MaterialParams& params,
                              Diagonal diagonal = Diagonal::north_east, int quad_bump = 0);

// Smallest singular value of the b+c coupling block, normalized by the
// Sigma norm on the stress side and the weighted L2 norms on (w, p).
double discrete_infsup_constant(const Mesh& mesh, int k, int quad_bump = 0);

}  // namespace axielast
