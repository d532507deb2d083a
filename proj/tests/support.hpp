#pragma once

// Shared helpers for the test suites: random triangles, local least-squares
// fits of smooth fields into the element spaces, and global coefficient
// vectors built from exactly representable fields.

#include <functional>
#include <random>

#include <Eigen/Dense>

#include "axielast/fe_space.hpp"
#include "axielast/geometry.hpp"
#include "axielast/quadrature.hpp"

namespace testsupport {

using namespace axielast;

// Well-shaped random triangle with r >= rmin, in canonical vertex order.
inline AffineMap random_triangle(std::mt19937& rng, double rmin = 0.2, double scale = 1.5) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (;;) {
    Eigen::Vector2d a(rmin + scale * unif(rng), -1.0 + 2.0 * unif(rng));
    Eigen::Vector2d b = a + scale * Eigen::Vector2d(unif(rng) - 0.2, unif(rng) - 0.5);
    Eigen::Vector2d c = a + scale * Eigen::Vector2d(unif(rng) - 0.2, unif(rng) - 0.5);
    const double det = (b - a)[0] * (c - a)[1] - (b - a)[1] * (c - a)[0];
    if (det < 0.0) std::swap(b, c);
    double lmax = std::max({(b - a).norm(), (c - a).norm(), (c - b).norm()});
    if (std::abs(det) < 0.2 * lmax * lmax) continue;
    if (a[0] < rmin || b[0] < rmin || c[0] < rmin) continue;
    // rotate so the minimal-r vertex comes first
    Eigen::Vector2d v[3] = {a, b, c};
    int best = 0;
    for (int i = 1; i < 3; ++i)
      if (v[i][0] < v[best][0] || (v[i][0] == v[best][0] && v[i][1] < v[best][1])) best = i;
    return affine_from_vertices(v[best], v[(best + 1) % 3], v[(best + 2) % 3]);
  }
}

// Least-squares fit of a vector field's Piola pull-back onto the reference
// BDM basis; exact when the pull-back is a polynomial of degree <= k.
inline Eigen::VectorXd fit_vector_field(const ElementBasis& basis, const AffineMap& map,
                                        const std::function<Eigen::Vector2d(double, double)>& f) {
  const QuadratureRule rule = triangle_gauss_rule(2 * basis.degree + 4);
  Eigen::MatrixXd A(2 * rule.size(), basis.n_vec);
  Eigen::VectorXd b(2 * rule.size());
  for (int q = 0; q < rule.size(); ++q) {
    const double xi = rule.points[q][0], eta = rule.points[q][1];
    const Eigen::Vector2d x = map.map(xi, eta);
    for (int j = 0; j < basis.n_vec; ++j) {
      const Eigen::Vector2d v(basis.vec_funcs[j][0].eval(xi, eta),
                              basis.vec_funcs[j][1].eval(xi, eta));
      const Eigen::Vector2d pv = map.jacobian * v / map.det;
      A(2 * q, j) = pv[0];
      A(2 * q + 1, j) = pv[1];
    }
    const Eigen::Vector2d fv = f(x[0], x[1]);
    b(2 * q) = fv[0];
    b(2 * q + 1) = fv[1];
  }
  return A.colPivHouseholderQr().solve(b);
}

// Least-squares fit of a scalar field onto the reference P_k monomials.
inline Eigen::VectorXd fit_scalar_field(const ElementBasis& basis, const AffineMap& map,
                                        const std::function<double(double, double)>& f,
                                        int nfuncs) {
  const QuadratureRule rule = triangle_gauss_rule(2 * basis.degree + 4);
  Eigen::MatrixXd A(rule.size(), nfuncs);
  Eigen::VectorXd b(rule.size());
  for (int q = 0; q < rule.size(); ++q) {
    const double xi = rule.points[q][0], eta = rule.points[q][1];
    const Eigen::Vector2d x = map.map(xi, eta);
    for (int j = 0; j < nfuncs; ++j) A(q, j) = basis.pk_funcs[j].eval(xi, eta);
    b(q) = f(x[0], x[1]);
  }
  return A.colPivHouseholderQr().solve(b);
}

// Global coefficient vector representing smooth exactly-representable fields:
// per-element fits written through the scatter weights. Fields that are not
// representable produce per-element least-squares approximations.
struct GlobalFields {
  std::function<Eigen::Matrix2d(double, double)> stress = nullptr;
  std::function<double(double, double)> hoop = nullptr;
  std::function<Eigen::Vector2d(double, double)> displacement = nullptr;
  std::function<double(double, double)> rotation = nullptr;
};

inline Eigen::VectorXd fit_global(const Mesh& mesh, const ElementBasis& basis,
                                  const DofLayout& layout, const GlobalFields& fields) {
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(layout.total);
  for (int t = 0; t < layout.n_tris; ++t) {
    const AffineMap map = canonical_affine(mesh, t);
    if (fields.stress) {
      for (int row = 0; row < 2; ++row) {
        auto row_field = [&, row](double r, double z) {
          return Eigen::Vector2d(fields.stress(r, z).row(row).transpose());
        };
        const Eigen::VectorXd local = fit_vector_field(basis, map, row_field);
        for (int f = 0; f < basis.n_vec; ++f) {
          const DofRef& ref = layout.stress_dofs[t][row * basis.n_vec + f];
          coeffs[ref.index] = local[f] / ref.weight;
        }
      }
    }
    if (fields.hoop) {
      const Eigen::VectorXd local = fit_scalar_field(basis, map, fields.hoop, layout.n_pk);
      for (int i = 0; i < layout.n_pk; ++i) coeffs[layout.hoop_dof(t, i)] = local[i];
    }
    if (fields.displacement) {
      for (int c = 0; c < 2; ++c) {
        auto comp = [&, c](double r, double z) { return fields.displacement(r, z)[c]; };
        const Eigen::VectorXd local = fit_scalar_field(basis, map, comp, layout.n_pkm1);
        for (int i = 0; i < layout.n_pkm1; ++i) coeffs[layout.disp_dof(t, c, i)] = local[i];
      }
    }
    if (fields.rotation) {
      const Eigen::VectorXd local = fit_scalar_field(basis, map, fields.rotation, layout.n_pkm1);
      for (int i = 0; i < layout.n_pkm1; ++i) coeffs[layout.rot_dof(t, i)] = local[i];
    }
  }
  return coeffs;
}

// Evaluate an interpolant's stress tensor and hoop value at a reference point.
inline Eigen::Matrix2d interp_stress_at(const ElementBasis& basis, const AffineMap& map,
                                        const Eigen::VectorXd& stress_coeffs, double xi,
                                        double eta) {
  Eigen::Matrix2d out;
  for (int row = 0; row < 2; ++row) {
    Eigen::Vector2d rv = Eigen::Vector2d::Zero();
    for (int f = 0; f < basis.n_vec; ++f)
      rv += stress_coeffs[row * basis.n_vec + f] *
            Eigen::Vector2d(basis.vec_funcs[f][0].eval(xi, eta),
                            basis.vec_funcs[f][1].eval(xi, eta));
    out.row(row) = (map.jacobian * rv / map.det).transpose();
  }
  return out;
}

inline double interp_hoop_at(const ElementBasis& basis, const Eigen::VectorXd& hoop_coeffs,
                             double xi, double eta) {
  double v = 0.0;
  for (int i = 0; i < int(hoop_coeffs.size()); ++i)
    v += hoop_coeffs[i] * basis.pk_funcs[i].eval(xi, eta);
  return v;
}

// Residuals of the three interpolation orthogonality conditions, re-evaluated
// with quadrature rules different from the ones defining the operator:
//   interior: (tau - Pi tau) : (grad U_h + x_perp grad Q_h) over the element,
//   edge:     ((tau - Pi tau).n) . (U_h + x_perp Q_h) moments on each edge,
//   scalar:   (tau_theta - pi tau_theta) against z Q_h and U_h components.
struct ProjectionResiduals {
  double interior = 0.0, edge = 0.0, scalar = 0.0;
};

inline ProjectionResiduals projection_condition_residuals(
    int k, const AffineMap& map, const ElementBasis& basis, const Eigen::VectorXd& stress_coeffs,
    const Eigen::VectorXd& hoop_coeffs,
    const std::function<Eigen::Matrix2d(double, double)>& tau,
    const std::function<double(double, double)>& tau_theta) {
  ProjectionResiduals out;

  // interior conditions: nontrivial only for k >= 2 (gradients of U_h, Q_h)
  if (k >= 2) {
    const QuadratureRule tri = triangle_gauss_rule(14);
    for (int cond = 0; cond < 6; ++cond) {
      double acc = 0.0;
      for (int q = 0; q < tri.size(); ++q) {
        const double xi = tri.points[q][0], eta = tri.points[q][1];
        const Eigen::Vector2d x = map.map(xi, eta);
        Eigen::Matrix2d psi = Eigen::Matrix2d::Zero();
        if (cond < 4)
          psi(cond / 2, cond % 2) = 1.0;
        else {
          psi(0, cond - 4) = x[1];
          psi(1, cond - 4) = -x[0];
        }
        const Eigen::Matrix2d diff =
            tau(x[0], x[1]) - interp_stress_at(basis, map, stress_coeffs, xi, eta);
        acc += tri.weights[q] * map.det * x[0] * (diff.array() * psi.array()).sum();
      }
      out.interior = std::max(out.interior, std::abs(acc));
    }
  }

  // edge conditions against (P_k(edge))^2 moments
  const auto quad = gauss_legendre_01(8);
  for (int m = 0; m < 3; ++m) {
    const RefEdge& re = reference_edges()[m];
    const Eigen::Vector2d pa = map.map(re.a[0], re.a[1]);
    const Eigen::Vector2d pb = map.map(re.b[0], re.b[1]);
    const double len = (pb - pa).norm();
    const Eigen::Vector2d d = pb - pa;
    const Eigen::Vector2d n_phys = Eigen::Vector2d(d[1], -d[0]).normalized();
    for (int a = 0; a <= k; ++a)
      for (int comp = 0; comp < 2; ++comp) {
        double acc = 0.0;
        for (const auto& qw : quad) {
          const Eigen::Vector2d rq = re.point(qw[0]);
          const Eigen::Vector2d x = pa + qw[0] * (pb - pa);
          const Eigen::Matrix2d diff =
              tau(x[0], x[1]) - interp_stress_at(basis, map, stress_coeffs, rq[0], rq[1]);
          acc += len * qw[1] * (diff * n_phys)[comp] * std::pow(qw[0], a) * x[0];
        }
        out.edge = std::max(out.edge, std::abs(acc));
      }
  }

  // scalar conditions: weight cancels, test against z*P_{k-1} and P_{k-1}
  {
    const QuadratureRule tri = triangle_gauss_rule(14);
    for (int i = 0; i < basis.n_pkm1; ++i) {
      for (int with_z = 0; with_z < 2; ++with_z) {
        double acc = 0.0;
        for (int q = 0; q < tri.size(); ++q) {
          const double xi = tri.points[q][0], eta = tri.points[q][1];
          const Eigen::Vector2d x = map.map(xi, eta);
          const double diff =
              tau_theta(x[0], x[1]) - interp_hoop_at(basis, hoop_coeffs, xi, eta);
          const double test = basis.pk_funcs[i].eval(xi, eta) * (with_z ? x[1] : 1.0);
          acc += tri.weights[q] * map.det * diff * test;
        }
        out.scalar = std::max(out.scalar, std::abs(acc));
      }
    }
  }
  return out;
}

}  // namespace testsupport
