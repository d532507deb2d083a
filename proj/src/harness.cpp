#include "axielast/harness.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

namespace axielast {

ErrorTriple compute_errors(const Mesh& mesh, const ElementBasis& basis, const DofLayout& layout,
                           const SolutionFields& solution, const ManufacturedCase& mc,
                           int quad_bump) {
  const int target = 2 * layout.degree + 6 + quad_bump;
  const QuadratureRule rule = triangle_gauss_rule(target > 20 ? 20 : target);
  const Eigen::VectorXd& u = solution.coeffs;
  const int nq = rule.size(), np = layout.n_pkm1;

  double sigma2 = 0.0, disp2 = 0.0, asym2 = 0.0;
  std::vector<std::vector<Eigen::Vector2d>> vv(nq, std::vector<Eigen::Vector2d>(basis.n_vec));
  std::vector<std::vector<double>> vd(nq, std::vector<double>(basis.n_vec));
  std::vector<std::vector<double>> pk(nq, std::vector<double>(basis.n_pk));
  for (int q = 0; q < nq; ++q) {
    const double xi = rule.points[q][0], eta = rule.points[q][1];
    for (int f = 0; f < basis.n_vec; ++f) {
      vv[q][f] = {basis.vec_funcs[f][0].eval(xi, eta), basis.vec_funcs[f][1].eval(xi, eta)};
      vd[q][f] = basis.vec_divs[f].eval(xi, eta);
    }
    for (int i = 0; i < basis.n_pk; ++i) pk[q][i] = basis.pk_funcs[i].eval(xi, eta);
  }

  std::vector<Eigen::Vector2d> u_rec(nq);
  std::vector<double> wr_q(nq);
  for (int t = 0; t < layout.n_tris; ++t) {
    const AffineMap map = canonical_affine(mesh, t);
    const auto& refs = layout.stress_dofs[t];

    // The recovered displacement w_h + x_perp p_h is represented in the
    // displacement space U_h before measuring the error; the raw recovery is
    // piecewise affine and superconverges past the tabulated rates.
    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(np, np);
    Eigen::MatrixXd mrhs = Eigen::MatrixXd::Zero(np, 2);

    for (int q = 0; q < nq; ++q) {
      const double xi = rule.points[q][0], eta = rule.points[q][1];
      const Eigen::Vector2d x = map.map(xi, eta);
      wr_q[q] = rule.weights[q] * map.det * x[0];

      double rot_h = 0.0;
      Eigen::Vector2d w_h = Eigen::Vector2d::Zero();
      for (int c = 0; c < 2; ++c)
        for (int i = 0; i < np; ++i) w_h[c] += u[layout.disp_dof(t, c, i)] * pk[q][i];
      for (int i = 0; i < np; ++i) rot_h += u[layout.rot_dof(t, i)] * pk[q][i];
      u_rec[q] = w_h + rot_h * Eigen::Vector2d(x[1], -x[0]);

      for (int i = 0; i < np; ++i) {
        for (int j = 0; j < np; ++j) mass(i, j) += wr_q[q] * pk[q][i] * pk[q][j];
        mrhs.row(i) += wr_q[q] * pk[q][i] * u_rec[q].transpose();
      }
    }
    const Eigen::MatrixXd proj = mass.ldlt().solve(mrhs);

    for (int q = 0; q < nq; ++q) {
      const double xi = rule.points[q][0], eta = rule.points[q][1];
      const Eigen::Vector2d x = map.map(xi, eta);
      const double r = x[0], z = x[1];
      const double wr = wr_q[q];

      Eigen::Matrix2d sig_h = Eigen::Matrix2d::Zero();
      Eigen::Vector2d cart_div = Eigen::Vector2d::Zero();
      for (int row = 0; row < 2; ++row) {
        Eigen::Vector2d rv = Eigen::Vector2d::Zero();
        double rd = 0.0;
        for (int f = 0; f < basis.n_vec; ++f) {
          const DofRef& ref = refs[row * basis.n_vec + f];
          const double c = ref.weight * u[ref.index];
          rv += c * vv[q][f];
          rd += c * vd[q][f];
        }
        const PiolaValue pv = piola(map, rv, rd);
        sig_h.row(row) = pv.value.transpose();
        cart_div[row] = pv.divergence;
      }
      double hoop_h = 0.0;
      for (int i = 0; i < basis.n_pk; ++i) hoop_h += u[layout.hoop_dof(t, i)] * pk[q][i];

      const Eigen::Vector2d div_h(cart_div[0] + (sig_h(0, 0) - hoop_h) / r,
                                  cart_div[1] + sig_h(1, 0) / r);

      const Eigen::Matrix2d sig_e = mc.stress(r, z);
      const double hoop_e = mc.hoop(r, z);
      const Eigen::Vector2d div_e = mc.body_force(r, z);  // divergence of the true pair
      const Eigen::Vector2d u_e = mc.displacement(r, z);
      Eigen::Vector2d u_h = Eigen::Vector2d::Zero();
      for (int i = 0; i < np; ++i) u_h += proj.row(i).transpose() * pk[q][i];

      sigma2 += wr * ((div_e - div_h).squaredNorm() + (sig_e - sig_h).squaredNorm() +
                      (hoop_e - hoop_h) * (hoop_e - hoop_h));
      disp2 += wr * (u_e - u_h).squaredNorm();
      const double qskew = 0.5 * (sig_h(0, 1) - sig_h(1, 0));  // true stress is symmetric
      asym2 += wr * 2.0 * qskew * qskew;
    }
  }
  ErrorTriple out;
  out.sigma_err = std::sqrt(sigma2);
  out.u_err = std::sqrt(disp2);
  out.asym_err = std::sqrt(asym2);
  if (!std::isfinite(out.sigma_err) || !std::isfinite(out.u_err) || !std::isfinite(out.asym_err))
    throw std::runtime_error("compute_errors: non-finite norm");
  return out;
}

double convergence_rate(double e0, double e1, double h0, double h1) {
  return std::log(e0 / e1) / std::log(h0 / h1);
}

ErrorReport convergence_study(const ManufacturedCase& mc, int k, const std::vector<int>& ns,
                              const MaterialParams& params, Diagonal diagonal, int quad_bump) {
  if (ns.empty()) throw std::invalid_argument("convergence_study: empty n list");
  for (size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 1) throw std::invalid_argument("convergence_study: n must be >= 1");
    if (i > 0 && ns[i] <= ns[i - 1])
      throw std::invalid_argument("convergence_study: n list must be strictly increasing");
  }

  ErrorReport report;
  const ElementBasis basis = reference_basis(k);
  for (int n : ns) {
    try {
      const Mesh mesh = build_unit_square_mesh(n, diagonal);
      const SaddleSystem sys = assemble(mesh, k, params, mc, quad_bump);
      const SolutionFields sol = solve(sys);
      const ErrorTriple err = compute_errors(mesh, basis, sys.layout, sol, mc, quad_bump);
      report.rows.push_back({n, 1.0 / n, err.sigma_err, err.u_err, err.asym_err});
    } catch (const std::exception& e) {
      report.aborted = true;
      report.error = e.what();
      break;
    }
  }
  for (size_t i = 0; i + 1 < report.rows.size(); ++i) {
    const auto& a = report.rows[i];
    const auto& b = report.rows[i + 1];
    report.sigma_rate.push_back(convergence_rate(a.sigma_err, b.sigma_err, a.h, b.h));
    report.u_rate.push_back(convergence_rate(a.u_err, b.u_err, a.h, b.h));
    report.asym_rate.push_back(convergence_rate(a.asym_err, b.asym_err, a.h, b.h));
  }
  return report;
}

double discrete_infsup_constant(const Mesh& mesh, int k, int quad_bump) {
  const CouplingOperators ops = build_coupling_operators(mesh, k, quad_bump);

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> gram(ops.sigma_gram);
  if (gram.info() != Eigen::Success)
    throw std::runtime_error("discrete_infsup_constant: Sigma Gram factorization failed");

  const Eigen::MatrixXd bt = Eigen::MatrixXd(ops.coupling).transpose();
  const Eigen::MatrixXd x = gram.solve(bt);
  const Eigen::MatrixXd schur = Eigen::MatrixXd(ops.coupling) * x;
  const Eigen::MatrixXd mass = Eigen::MatrixXd(ops.uq_mass);

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(schur, mass);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("discrete_infsup_constant: eigensolver failed");
  const double lmin = eig.eigenvalues()(0);
  return std::sqrt(lmin > 0.0 ? lmin : 0.0);
}

}  // namespace axielast
