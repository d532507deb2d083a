#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "axielast/assembly.hpp"
#include "axielast/harness.hpp"
#include "support.hpp"

using namespace axielast;
using namespace testsupport;

namespace {

// local stress-block coefficient vector from (stress, hoop) fields
Eigen::VectorXd local_stress_coeffs(const ElementBasis& basis, const AffineMap& map,
                                    const std::function<Eigen::Matrix2d(double, double)>& sig,
                                    const std::function<double(double, double)>& hoop) {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(2 * basis.n_vec + basis.n_pk);
  for (int row = 0; row < 2; ++row) {
    auto rf = [&, row](double r, double z) {
      return Eigen::Vector2d(sig(r, z).row(row).transpose());
    };
    y.segment(row * basis.n_vec, basis.n_vec) = fit_vector_field(basis, map, rf);
  }
  y.segment(2 * basis.n_vec, basis.n_pk) = fit_scalar_field(basis, map, hoop, basis.n_pk);
  return y;
}

ManufacturedCase force_only(std::function<Eigen::Vector2d(double, double)> f) {
  ManufacturedCase mc;
  mc.id = "force-only";
  mc.body_force = std::move(f);
  return mc;
}

}  // namespace

TEST_CASE("element a-form hand value") {
  // mu=1/2, lambda=1, gamma=0, sigma=tau=I, hoop=1 on (1,0),(2,0),(1,1):
  // integrand 2 + 1 - (1/4) 3*3 = 0.75, times int r = 2/3
  const ElementBasis basis = reference_basis(1);
  const AffineMap map = affine_from_vertices({1, 0}, {2, 0}, {1, 1});
  MaterialParams params;
  params.gamma = 0.0;
  const ElementBlocks blocks = element_blocks(basis, map, params, triangle_gauss_rule(6));
  const Eigen::VectorXd y = local_stress_coeffs(
      basis, map, [](double, double) { return Eigen::Matrix2d::Identity(); },
      [](double, double) { return 1.0; });
  CHECK(y.dot(blocks.a * y) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("element b-form hand value") {
  // tau=0, hoop=r, v=(1,0): -int hoop v_r dr dz = -int r = -2/3
  const ElementBasis basis = reference_basis(1);
  const AffineMap map = affine_from_vertices({1, 0}, {2, 0}, {1, 1});
  const ElementBlocks blocks = element_blocks(basis, map, {}, triangle_gauss_rule(6));
  const Eigen::VectorXd y = local_stress_coeffs(
      basis, map, [](double, double) { return Eigen::Matrix2d::Zero(); },
      [](double r, double) { return r; });
  Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * basis.n_pkm1);
  v[0] = 1.0;  // constant (1, 0)
  CHECK(y.dot(blocks.b * v) == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("element c-form hand value") {
  // tau_12 = 1 (others 0), q = 1: (tau, S2(1)) = int tau_12 r = 2/3; the
  // divergence of this field vanishes so the wedge term drops out
  const ElementBasis basis = reference_basis(1);
  const AffineMap map = affine_from_vertices({1, 0}, {2, 0}, {1, 1});
  const ElementBlocks blocks = element_blocks(basis, map, {}, triangle_gauss_rule(6));
  const Eigen::VectorXd y = local_stress_coeffs(
      basis, map,
      [](double, double) {
        Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
        m(0, 1) = 1.0;
        return m;
      },
      [](double, double) { return 0.0; });
  Eigen::VectorXd q = Eigen::VectorXd::Zero(basis.n_pkm1);
  q[0] = 1.0;
  CHECK(y.dot(blocks.c * q) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("element rhs hand values") {
  const ElementBasis basis = reference_basis(1);
  const AffineMap map = affine_from_vertices({1, 0}, {2, 0}, {1, 1});
  const QuadratureRule rule = triangle_gauss_rule(6);

  const ElementRhs zero =
      element_rhs(basis, map, {}, force_only([](double, double) {
                    return Eigen::Vector2d::Zero();
                  }),
                  rule);
  CHECK(zero.stress.norm() == 0.0);
  CHECK(zero.displacement.norm() == 0.0);
  CHECK(zero.rotation.norm() == 0.0);

  // f = (0,1), q = 1: rhs_p = int (0*z - 1*r) r dr dz = -int r^2 = -11/12
  const ElementRhs r1 =
      element_rhs(basis, map, {}, force_only([](double, double) {
                    return Eigen::Vector2d(0, 1);
                  }),
                  rule);
  CHECK(r1.rotation[0] == doctest::Approx(-11.0 / 12.0).epsilon(1e-13));

  // f = (1,0), v = (1,0): rhs_w = int r = 2/3
  const ElementRhs r2 =
      element_rhs(basis, map, {}, force_only([](double, double) {
                    return Eigen::Vector2d(1, 0);
                  }),
                  rule);
  CHECK(r2.displacement[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-13));

  CHECK_THROWS_AS(element_rhs(basis, map, {}, force_only([](double, double) {
                                return Eigen::Vector2d(std::nan(""), 0);
                              }),
                              rule),
                  std::runtime_error);
}

TEST_CASE("assembled system structure") {
  const Mesh mesh = build_unit_square_mesh(1);
  MaterialParams params;
  const ManufacturedCase mc = manufactured_case(1, params);
  const SaddleSystem sys = assemble(mesh, 1, params, mc);
  CHECK(sys.matrix.rows() == 28);  // 32 DOFs minus 4 constrained

  const Eigen::MatrixXd m = Eigen::MatrixXd(sys.matrix);
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  CHECK(asym <= 1e-12 * m.cwiseAbs().maxCoeff());

  // saddle structure: (w,w), (w,p), (p,p) blocks are zero
  const DofLayout& L = sys.layout;
  for (int g1 = L.disp_base; g1 < L.total; ++g1)
    for (int g2 = L.disp_base; g2 < L.total; ++g2)
      CHECK(m(L.free_index[g1], L.free_index[g2]) == 0.0);

  std::ostringstream os;
  dump_matrix(sys, os);
  CHECK(os.str().find(' ') != std::string::npos);

  CHECK_THROWS_AS(assemble(Mesh{}, 1, params, mc), std::invalid_argument);
}

TEST_CASE("zero force yields zero solution; scaling is linear") {
  const Mesh mesh = build_unit_square_mesh(2);
  MaterialParams params;

  ManufacturedCase zero = force_only([](double, double) { return Eigen::Vector2d::Zero(); });
  const SolutionFields s0 = solve(assemble(mesh, 1, params, zero));
  CHECK(s0.coeffs.norm() == 0.0);

  const ManufacturedCase mc = manufactured_case(1, params);
  ManufacturedCase doubled = mc;
  doubled.body_force = [&mc](double r, double z) {
    return Eigen::Vector2d(2.0 * mc.body_force(r, z));
  };
  const SolutionFields s1 = solve(assemble(mesh, 1, params, mc));
  const SolutionFields s2 = solve(assemble(mesh, 1, params, doubled));
  CHECK((s2.coeffs - 2.0 * s1.coeffs).norm() <= 1e-10 * s2.coeffs.norm());
  CHECK(s1.residual <= 1e-9);
}

TEST_CASE("stress block is coercive") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const Mesh mesh = build_unit_square_mesh(2);
  const StressOperators ops = build_stress_operators(mesh, 1, {});
  for (int it = 0; it < 30; ++it) {
    Eigen::VectorXd y(ops.n_free_stress);
    for (int i = 0; i < y.size(); ++i) y[i] = unif(rng);
    const double ay = y.dot(ops.a_block * y);
    const double gy = y.dot(ops.sigma_gram * y);
    CHECK(ay > 0.0);
    CHECK(ay >= 0.24 * gy);
  }
}

namespace {

// Residual of the discrete equations at the interpolant of an exact case,
// corrected by the outer-boundary moment that the homogeneous-Dirichlet
// assembly drops.
double interpolant_residual(const Mesh& mesh, int k, const MaterialParams& params,
                            const ManufacturedCase& mc) {
  const ElementBasis basis = reference_basis(k);
  const SaddleSystem sys = assemble(mesh, k, params, mc);
  const DofLayout& L = sys.layout;

  GlobalFields fields;
  fields.stress = mc.stress;
  fields.hoop = mc.hoop;
  fields.rotation = mc.rotation;
  fields.displacement = [&mc](double r, double z) {
    return Eigen::Vector2d(mc.displacement(r, z) -
                           mc.rotation(r, z) * Eigen::Vector2d(z, -r));
  };
  const Eigen::VectorXd full = fit_global(mesh, basis, L, fields);
  Eigen::VectorXd x(L.n_free);
  for (int g = 0; g < L.total; ++g)
    if (L.free_index[g] >= 0) x[L.free_index[g]] = full[g];

  // boundary term sum over outer edges of (u . (Phi_I . n)) r ds
  Eigen::VectorXd bnd = Eigen::VectorXd::Zero(L.n_free);
  const auto quad = gauss_legendre_01(8);
  for (int t = 0; t < L.n_tris; ++t) {
    const AffineMap map = canonical_affine(mesh, t);
    for (int m = 0; m < 3; ++m) {
      const Edge& e = mesh.edges[mesh.tri_edges[t][m]];
      if (e.tri[1] >= 0 || e.tag != EdgeTag::outer) continue;
      const RefEdge& re = reference_edges()[m];
      for (int row = 0; row < 2; ++row) {
        for (int j = 0; j < L.n_edge_pts; ++j) {
          const DofRef& ref = L.stress_dofs[t][row * basis.n_vec + basis.edge_dof(m, j)];
          const int fi = L.free_index[ref.index];
          if (fi < 0) continue;
          double acc = 0.0;
          for (const auto& qw : quad) {
            const Eigen::Vector2d rq = re.point(qw[0]);
            const Eigen::Vector2d xq = map.map(rq[0], rq[1]);
            const Eigen::Vector2d v(basis.vec_funcs[basis.edge_dof(m, j)][0].eval(rq[0], rq[1]),
                                    basis.vec_funcs[basis.edge_dof(m, j)][1].eval(rq[0], rq[1]));
            acc += re.length * qw[1] * v.dot(re.normal) * mc.displacement(xq[0], xq[1])[row] *
                   map.r(rq[0], rq[1]);
          }
          bnd[fi] += ref.weight * acc;
        }
      }
    }
  }
  return (sys.matrix * x - sys.rhs - bnd).norm() / (1.0 + bnd.norm());
}

}  // namespace

TEST_CASE("interpolated exact polynomial cases satisfy the discrete equations") {
  const Mesh mesh = build_unit_square_mesh(2);
  MaterialParams params;

  // rigid translation: u = w = (0, 1), everything else zero
  ManufacturedCase rigid;
  rigid.id = "rigid";
  rigid.displacement = [](double, double) { return Eigen::Vector2d(0, 1); };
  rigid.stress = [](double, double) { return Eigen::Matrix2d::Zero(); };
  rigid.hoop = [](double, double) { return 0.0; };
  rigid.rotation = [](double, double) { return 0.0; };
  rigid.body_force = [](double, double) { return Eigen::Vector2d::Zero(); };
  for (int k : {1, 2, 3}) CHECK(interpolant_residual(mesh, k, params, rigid) < 1e-9);

  // linear-displacement case with constant stress, compatible with the axis
  // constraint: u = (r, 0.2 - 3z), sigma = diag(0, -4), hoop = 0, f = 0
  ManufacturedCase linear;
  linear.id = "linear";
  linear.displacement = [](double r, double z) { return Eigen::Vector2d(r, 0.2 - 3.0 * z); };
  linear.stress = [](double, double) {
    Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
    m(1, 1) = -4.0;
    return m;
  };
  linear.hoop = [](double, double) { return 0.0; };
  linear.rotation = [](double, double) { return 0.0; };
  linear.body_force = [](double, double) { return Eigen::Vector2d::Zero(); };
  for (int k : {2, 3}) CHECK(interpolant_residual(mesh, k, params, linear) < 1e-9);
}

TEST_CASE("sparse solve agrees with a dense factorization") {
  const Mesh mesh = build_unit_square_mesh(1);
  MaterialParams params;
  const ManufacturedCase mc = manufactured_case(1, params);
  const SaddleSystem sys = assemble(mesh, 1, params, mc);
  const SolutionFields sol = solve(sys);

  const Eigen::MatrixXd dense = Eigen::MatrixXd(sys.matrix);
  const Eigen::VectorXd x = Eigen::FullPivLU<Eigen::MatrixXd>(dense).solve(sys.rhs);
  Eigen::VectorXd sparse_x(sys.layout.n_free);
  for (int g = 0; g < sys.layout.total; ++g)
    if (sys.layout.free_index[g] >= 0) sparse_x[sys.layout.free_index[g]] = sol.coeffs[g];
  CHECK((sparse_x - x).norm() <= 1e-10 * x.norm());
}

TEST_CASE("discrete inf-sup constant is mesh-stable") {
  const double b2 = discrete_infsup_constant(build_unit_square_mesh(2), 1);
  const double b4 = discrete_infsup_constant(build_unit_square_mesh(4), 1);
  CHECK(b2 > 0.0);
  CHECK(b4 > 0.5 * b2);
}
