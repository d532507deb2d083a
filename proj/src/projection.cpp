#include "axielast/projection.hpp"

#include <cmath>
#include <stdexcept>

#include "axielast/quadrature.hpp"

namespace axielast {

namespace {

// Cardinal polynomial through the rule's Gauss parameters: 1 at g_j, 0 at others.
double cardinal(const std::vector<double>& g, int j, double t) {
  double v = 1.0;
  for (int l = 0; l < int(g.size()); ++l)
    if (l != j) v *= (t - g[l]) / (g[j] - g[l]);
  return v;
}

Eigen::Vector2d outward_normal(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const Eigen::Vector2d d = b - a;
  return Eigen::Vector2d(d[1], -d[0]).normalized();
}

}  // namespace

InterpolationResult interpolate_stress(int k, const AffineMap& map, const ElementBasis& basis,
                                       const TensorField& tau, const ScalarField& tau_theta) {
  if (k != 1 && k != 2)
    throw std::invalid_argument("interpolate_stress: k must be 1 or 2");
  if (basis.degree != k)
    throw std::invalid_argument("interpolate_stress: basis degree mismatch");

  const int nv = basis.n_vec;
  const int n = 2 * nv;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);

  const auto edge_quad = gauss_legendre_01(10);
  int row = 0;
  for (int m = 0; m < 3; ++m) {
    const RefEdge& re = reference_edges()[m];
    const Eigen::Vector2d pa = map.map(re.a[0], re.a[1]);
    const Eigen::Vector2d pb = map.map(re.b[0], re.b[1]);
    const bool axis_edge = pa[0] == 0.0 && pb[0] == 0.0;
    const double len_phys = (pb - pa).norm();
    const Eigen::Vector2d n_phys = outward_normal(pa, pb);

    for (int j = 0; j <= k; ++j) {
      for (int comp = 0; comp < 2; ++comp, ++row) {
        if (axis_edge) {  // conditions vacuous for r = 0; pin the DOF instead
          A(row, comp * nv + basis.edge_dof(m, j)) = 1.0;
          continue;
        }
        for (const auto& qw : edge_quad) {
          const double t = qw[0], w = qw[1];
          const Eigen::Vector2d qr = re.point(t);
          const Eigen::Vector2d x = pa + t * (pb - pa);
          const double card = cardinal(basis.edge_points, j, t);
          // reference-side moments of the mapped basis (Piola edge identity)
          for (int f = 0; f < nv; ++f) {
            const Eigen::Vector2d v(basis.vec_funcs[f][0].eval(qr[0], qr[1]),
                                    basis.vec_funcs[f][1].eval(qr[0], qr[1]));
            A(row, comp * nv + f) +=
                re.length * w * v.dot(re.normal) * card * map.r(qr[0], qr[1]);
          }
          const Eigen::Vector2d tn = tau(x[0], x[1]) * n_phys;
          rhs(row) += len_phys * w * tn[comp] * card * x[0];
        }
      }
    }
  }

  if (k == 2) {
    const QuadratureRule tri = triangle_gauss_rule(12);
    for (int cond = 0; cond < 6; ++cond, ++row) {
      for (int q = 0; q < tri.size(); ++q) {
        const double xi = tri.points[q][0], eta = tri.points[q][1];
        const Eigen::Vector2d x = map.map(xi, eta);
        const double wdet = tri.weights[q] * map.det * x[0];
        // test tensors: E11, E12, E21, E22, then x_perp tensor e1/e2
        Eigen::Matrix2d psi = Eigen::Matrix2d::Zero();
        if (cond < 4)
          psi(cond / 2, cond % 2) = 1.0;
        else {
          const int c = cond - 4;
          psi(0, c) = x[1];
          psi(1, c) = -x[0];
        }
        for (int rowc = 0; rowc < 2; ++rowc)
          for (int f = 0; f < nv; ++f) {
            const Eigen::Vector2d v(basis.vec_funcs[f][0].eval(xi, eta),
                                    basis.vec_funcs[f][1].eval(xi, eta));
            const Eigen::Vector2d pv = map.jacobian * v / map.det;
            A(row, rowc * nv + f) += wdet * pv.dot(psi.row(rowc));
          }
        const Eigen::Matrix2d tv = tau(x[0], x[1]);
        rhs(row) += wdet * (tv.array() * psi.array()).sum();
      }
    }
  }
  if (row != n) throw std::runtime_error("interpolate_stress: condition count mismatch");

  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible())
    throw std::runtime_error("interpolate_stress: singular local DOF system");

  InterpolationResult out;
  out.stress_coeffs = lu.solve(rhs);
  const Eigen::MatrixXd inv = lu.inverse();
  out.condition = A.cwiseAbs().colwise().sum().maxCoeff() *
                  inv.cwiseAbs().colwise().sum().maxCoeff();

  // hoop component: plain L2 projection onto P_k (radial weight cancels)
  const int npk = basis.n_pk;
  Eigen::MatrixXd mass(npk, npk);
  for (int i = 0; i < npk; ++i)
    for (int j = 0; j < npk; ++j)
      mass(i, j) = map.det * (basis.pk_funcs[i] * basis.pk_funcs[j]).integral();
  Eigen::VectorXd mrhs = Eigen::VectorXd::Zero(npk);
  const QuadratureRule tri = triangle_gauss_rule(14);
  for (int q = 0; q < tri.size(); ++q) {
    const double xi = tri.points[q][0], eta = tri.points[q][1];
    const Eigen::Vector2d x = map.map(xi, eta);
    const double wdet = tri.weights[q] * map.det;
    const double tv = tau_theta(x[0], x[1]);
    for (int i = 0; i < npk; ++i) mrhs(i) += wdet * tv * basis.pk_funcs[i].eval(xi, eta);
  }
  out.hoop_coeffs = mass.ldlt().solve(mrhs);
  return out;
}

namespace {

double weighted_integral(const Poly2& f, double r1s, double r2s) {
  double acc = 0.0;
  for (int d = 0; d <= f.deg; ++d)
    for (int b = 0; b <= d; ++b) {
      const double c = f.c[Poly2::index(d - b, b)];
      if (c != 0.0) acc += c * exact_weighted_monomial(d - b, b, r1s, r2s, true);
    }
  return acc;
}

}  // namespace

MtResult mt_matrix(double r1_star, double r2_star) {
  const double g2 = 0.5 + std::sqrt(3.0) / 6.0;
  const Poly2 xi = Poly2::monomial(1, 0), eta = Poly2::monomial(0, 1);
  const Poly2 one = Poly2::monomial(0, 0);
  const Poly2 lam = one + (-1.0) * (xi + eta);  // 1 - xi - eta

  // Interior zero-normal-trace functions, unnormalized as in the projection
  // matrix derivation.
  std::array<std::array<Poly2, 2>, 3> phi;
  phi[0] = {lam * (g2 * xi), lam * ((g2 - 1.0) * eta)};
  phi[1] = {xi * (g2 * xi + eta + (-g2) * one), xi * ((g2 - 1.0) * eta)};
  phi[2] = {eta * ((g2 - 1.0) * xi), eta * (xi + g2 * eta + (-g2) * one)};

  MtResult out;
  for (int j = 0; j < 3; ++j) {
    // constant tensor tests (scaled by 5!), then x_perp-type tests (by 6!/2)
    out.matrix(0, j) = 120.0 * weighted_integral(phi[j][0], r1_star, r2_star);
    out.matrix(1, j) = 120.0 * weighted_integral(phi[j][1], r1_star, r2_star);
    out.matrix(0, 3 + j) = out.matrix(1, 3 + j) = 0.0;
    out.matrix(2, j) = out.matrix(3, j) = 0.0;
    out.matrix(2, 3 + j) = 120.0 * weighted_integral(phi[j][0], r1_star, r2_star);
    out.matrix(3, 3 + j) = 120.0 * weighted_integral(phi[j][1], r1_star, r2_star);
    out.matrix(4, j) = 360.0 * weighted_integral(phi[j][0] * eta, r1_star, r2_star);
    out.matrix(4, 3 + j) = -360.0 * weighted_integral(phi[j][0] * xi, r1_star, r2_star);
    out.matrix(5, j) = 360.0 * weighted_integral(phi[j][1] * eta, r1_star, r2_star);
    out.matrix(5, 3 + j) = -360.0 * weighted_integral(phi[j][1] * xi, r1_star, r2_star);
  }
  out.det = out.matrix.determinant();

  const double a = r1_star, b = r2_star;
  out.closed_form_det = (1.0 / 36.0) * (a + b + 3.0) * (2.0 * a + b + 5.0) *
                        (a + 2.0 * b + 5.0) * (2.0 * a + 2.0 * b + 5.0) *
                        (a * a + 4.0 * a * b + b * b + 10.0 * a + 10.0 * b + 15.0);
  return out;
}

MtResult mt_matrix(const AffineMap& map) {
  if (!map.r0_positive)
    throw std::invalid_argument("mt_matrix: requires r0 > 0 for the r_star parametrization");
  return mt_matrix(map.r_star[0], map.r_star[1]);
}

double c_identity_residual(const AffineMap& map, const std::array<Poly2, 4>& tau,
                           const Poly2& tau_theta, const Poly2& p, int exactness) {
  // physical-coordinate derivatives
  const Poly2 d_rr_r = tau[0].dxi(), d_rz_z = tau[1].deta();
  const Poly2 d_zr_r = tau[2].dxi(), d_zz_z = tau[3].deta();
  const Poly2 p_r = p.dxi(), p_z = p.deta();

  const QuadratureRule tri = triangle_gauss_rule(exactness);
  double lhs = 0.0, interior = 0.0, unweighted = 0.0;
  for (int q = 0; q < tri.size(); ++q) {
    const Eigen::Vector2d x = map.map(tri.points[q][0], tri.points[q][1]);
    const double r = x[0], z = x[1];
    const double w = tri.weights[q] * map.det;
    const double th = tau_theta.eval(r, z), pv = p.eval(r, z);
    const double d1 = d_rr_r.eval(r, z) + d_rz_z.eval(r, z) + (tau[0].eval(r, z) - th) / r;
    const double d2 = d_zr_r.eval(r, z) + d_zz_z.eval(r, z) + tau[2].eval(r, z) / r;
    lhs += w * r * ((tau[1].eval(r, z) - tau[2].eval(r, z)) * pv + (d1 * z - d2 * r) * pv);
    interior += w * r *
                (z * (tau[0].eval(r, z) * p_r.eval(r, z) + tau[1].eval(r, z) * p_z.eval(r, z)) -
                 r * (tau[2].eval(r, z) * p_r.eval(r, z) + tau[3].eval(r, z) * p_z.eval(r, z)));
    unweighted += w * th * z * pv;
  }

  double boundary = 0.0;
  const auto edge_quad = gauss_legendre_01(8);
  for (int m = 0; m < 3; ++m) {
    const RefEdge& re = reference_edges()[m];
    const Eigen::Vector2d pa = map.map(re.a[0], re.a[1]);
    const Eigen::Vector2d pb = map.map(re.b[0], re.b[1]);
    const double len = (pb - pa).norm();
    const Eigen::Vector2d nrm = outward_normal(pa, pb);
    for (const auto& qw : edge_quad) {
      const Eigen::Vector2d x = pa + qw[0] * (pb - pa);
      const double r = x[0], z = x[1];
      Eigen::Matrix2d tv;
      tv << tau[0].eval(r, z), tau[1].eval(r, z), tau[2].eval(r, z), tau[3].eval(r, z);
      const Eigen::Vector2d tn = tv * nrm;
      boundary += len * qw[1] * (tn[0] * z - tn[1] * r) * p.eval(r, z) * r;
    }
  }
  return std::abs(lhs - (boundary - interior - unweighted));
}

}  // namespace axielast
