#include "axielast/assembly.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <Eigen/SparseLU>

namespace axielast {

namespace {

// Reference basis values at the points of a rule; map-independent.
struct RefTables {
  std::vector<std::vector<Eigen::Vector2d>> vec_val;  // [qp][f]
  std::vector<std::vector<double>> vec_div;           // [qp][f]
  std::vector<std::vector<double>> pk_val;            // [qp][i]
};

RefTables tabulate(const ElementBasis& basis, const QuadratureRule& rule) {
  RefTables t;
  const int nq = rule.size();
  t.vec_val.resize(nq);
  t.vec_div.resize(nq);
  t.pk_val.resize(nq);
  for (int q = 0; q < nq; ++q) {
    const double xi = rule.points[q][0], eta = rule.points[q][1];
    t.vec_val[q].resize(basis.n_vec);
    t.vec_div[q].resize(basis.n_vec);
    for (int f = 0; f < basis.n_vec; ++f) {
      t.vec_val[q][f] = {basis.vec_funcs[f][0].eval(xi, eta),
                         basis.vec_funcs[f][1].eval(xi, eta)};
      t.vec_div[q][f] = basis.vec_divs[f].eval(xi, eta);
    }
    t.pk_val[q].resize(basis.n_pk);
    for (int i = 0; i < basis.n_pk; ++i) t.pk_val[q][i] = basis.pk_funcs[i].eval(xi, eta);
  }
  return t;
}

// Stress-block entry at one quadrature point: the meridian tensor has a
// single nonzero row for BDM entries and is zero for hoop entries.
struct StressEntry {
  int row = -1;                 // 0/1 for BDM rows, -1 for hoop
  Eigen::Vector2d value{0, 0};  // the nonzero tensor row
  double theta = 0.0;
  double trace_plus_theta = 0.0;
  double skew = 0.0;            // contribution to sigma_12 - sigma_21
  Eigen::Vector2d div_axi{0, 0};
};

void fill_stress_entries(const ElementBasis& basis, const AffineMap& map,
                         const RefTables& tables, int q, double r,
                         std::vector<StressEntry>& entries) {
  const int nv = basis.n_vec;
  for (int f = 0; f < nv; ++f) {
    const PiolaValue pv = piola(map, tables.vec_val[q][f], tables.vec_div[q][f]);
    const double av = pv.divergence + pv.value[0] / r;
    StressEntry& e0 = entries[f];
    e0.row = 0;
    e0.value = pv.value;
    e0.theta = 0.0;
    e0.trace_plus_theta = pv.value[0];
    e0.skew = pv.value[1];
    e0.div_axi = {av, 0.0};
    StressEntry& e1 = entries[nv + f];
    e1.row = 1;
    e1.value = pv.value;
    e1.theta = 0.0;
    e1.trace_plus_theta = pv.value[1];
    e1.skew = -pv.value[0];
    e1.div_axi = {0.0, av};
  }
  for (int i = 0; i < basis.n_pk; ++i) {
    const double v = tables.pk_val[q][i];
    StressEntry& e = entries[2 * nv + i];
    e.row = -1;
    e.value = {0.0, 0.0};
    e.theta = v;
    e.trace_plus_theta = v;
    e.skew = 0.0;
    e.div_axi = {-v / r, 0.0};
  }
}

double frob(const StressEntry& a, const StressEntry& b) {
  double acc = a.theta * b.theta;
  if (a.row >= 0 && a.row == b.row) acc += a.value.dot(b.value);
  return acc;
}

}  // namespace

int assembly_exactness(int k, int quad_bump) {
  const int target = 2 * k + 4 + quad_bump;
  return target > 20 ? 20 : target;
}

namespace {

ElementBlocks element_blocks_impl(const ElementBasis& basis, const AffineMap& map,
                                  const MaterialParams& params, const QuadratureRule& rule,
                                  const RefTables& tables) {
  params.validate();
  const int nv = basis.n_vec, ns = 2 * nv + basis.n_pk;
  const int nu = 2 * basis.n_pkm1, np = basis.n_pkm1;
  const double inv2mu = 1.0 / (2.0 * params.mu);
  const double tf = params.trace_factor();

  ElementBlocks out;
  out.a = Eigen::MatrixXd::Zero(ns, ns);
  out.b = Eigen::MatrixXd::Zero(ns, nu);
  out.c = Eigen::MatrixXd::Zero(ns, np);

  std::vector<StressEntry> entries(ns);
  for (int q = 0; q < rule.size(); ++q) {
    const double xi = rule.points[q][0], eta = rule.points[q][1];
    const double r = map.r(xi, eta);
    const double z = map.map(xi, eta)[1];
    const double wr = rule.weights[q] * map.det * r;
    fill_stress_entries(basis, map, tables, q, r, entries);

    for (int s = 0; s < ns; ++s) {
      const StressEntry& es = entries[s];
      for (int t = s; t < ns; ++t) {
        const StressEntry& et = entries[t];
        const double val =
            wr * (inv2mu * (frob(es, et) - tf * es.trace_plus_theta * et.trace_plus_theta) +
                  params.gamma * es.div_axi.dot(et.div_axi));
        out.a(s, t) += val;
        if (t != s) out.a(t, s) += val;
      }
      for (int c = 0; c < 2; ++c) {
        const double dv = wr * es.div_axi[c];
        if (dv == 0.0) continue;
        for (int i = 0; i < np; ++i) out.b(s, c * np + i) += dv * tables.pk_val[q][i];
      }
      const double cw = wr * (es.skew + es.div_axi[0] * z - es.div_axi[1] * r);
      for (int i = 0; i < np; ++i) out.c(s, i) += cw * tables.pk_val[q][i];
    }
  }
  return out;
}

ElementRhs element_rhs_impl(const ElementBasis& basis, const AffineMap& map,
                            const MaterialParams& params, const ManufacturedCase& mc,
                            const QuadratureRule& rule, const RefTables& tables) {
  const int nv = basis.n_vec, ns = 2 * nv + basis.n_pk;
  const int nu = 2 * basis.n_pkm1, np = basis.n_pkm1;

  ElementRhs out;
  out.stress = Eigen::VectorXd::Zero(ns);
  out.displacement = Eigen::VectorXd::Zero(nu);
  out.rotation = Eigen::VectorXd::Zero(np);

  std::vector<StressEntry> entries(ns);
  for (int q = 0; q < rule.size(); ++q) {
    const double xi = rule.points[q][0], eta = rule.points[q][1];
    const Eigen::Vector2d x = map.map(xi, eta);
    const double r = x[0], z = x[1];
    const double wr = rule.weights[q] * map.det * r;
    const Eigen::Vector2d f = mc.body_force(r, z);
    if (!f.allFinite()) throw std::runtime_error("element_rhs: non-finite body force");
    fill_stress_entries(basis, map, tables, q, r, entries);

    if (params.gamma != 0.0)
      for (int s = 0; s < ns; ++s)
        out.stress[s] += wr * params.gamma * f.dot(entries[s].div_axi);
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < np; ++i)
        out.displacement[c * np + i] += wr * f[c] * tables.pk_val[q][i];
    const double wedge = f[0] * z - f[1] * r;
    for (int i = 0; i < np; ++i) out.rotation[i] += wr * wedge * tables.pk_val[q][i];
  }
  return out;
}

}  // namespace

ElementBlocks element_blocks(const ElementBasis& basis, const AffineMap& map,
                             const MaterialParams& params, const QuadratureRule& rule) {
  return element_blocks_impl(basis, map, params, rule, tabulate(basis, rule));
}

ElementRhs element_rhs(const ElementBasis& basis, const AffineMap& map,
                       const MaterialParams& params, const ManufacturedCase& mc,
                       const QuadratureRule& rule) {
  return element_rhs_impl(basis, map, params, mc, rule, tabulate(basis, rule));
}

SaddleSystem assemble(const Mesh& mesh, int k, const MaterialParams& params,
                      const ManufacturedCase& mc, int quad_bump) {
  if (mesh.triangles.empty()) throw std::invalid_argument("assemble: empty mesh");
  params.validate();

  const ElementBasis basis = reference_basis(k);
  const QuadratureRule rule = triangle_gauss_rule(assembly_exactness(k, quad_bump));
  const RefTables tables = tabulate(basis, rule);

  SaddleSystem sys;
  sys.layout = build_dof_layout(mesh, k);
  const DofLayout& L = sys.layout;
  const int ns = 2 * L.n_vec + L.n_pk;

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(size_t(L.n_tris) * ns * (ns + 6 * L.n_pkm1));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(L.n_free);

  std::vector<DofRef> local(ns);
  for (int t = 0; t < L.n_tris; ++t) {
    const AffineMap map = canonical_affine(mesh, t);
    const ElementBlocks blocks = element_blocks_impl(basis, map, params, rule, tables);
    const ElementRhs erhs = element_rhs_impl(basis, map, params, mc, rule, tables);

    for (int s = 0; s < 2 * L.n_vec; ++s) local[s] = L.stress_dofs[t][s];
    for (int i = 0; i < L.n_pk; ++i) local[2 * L.n_vec + i] = {L.hoop_dof(t, i), 1.0};

    for (int s = 0; s < ns; ++s) {
      const int gs = L.free_index[local[s].index];
      if (gs < 0) continue;
      const double ws = local[s].weight;
      rhs[gs] += ws * erhs.stress[s];
      for (int s2 = 0; s2 < ns; ++s2) {
        const int gt = L.free_index[local[s2].index];
        if (gt < 0) continue;
        trip.emplace_back(gs, gt, ws * local[s2].weight * blocks.a(s, s2));
      }
      for (int c = 0; c < 2; ++c)
        for (int i = 0; i < L.n_pkm1; ++i) {
          const int gu = L.free_index[L.disp_dof(t, c, i)];
          const double v = ws * blocks.b(s, c * L.n_pkm1 + i);
          trip.emplace_back(gs, gu, v);
          trip.emplace_back(gu, gs, v);
        }
      for (int i = 0; i < L.n_pkm1; ++i) {
        const int gp = L.free_index[L.rot_dof(t, i)];
        const double v = ws * blocks.c(s, i);
        trip.emplace_back(gs, gp, v);
        trip.emplace_back(gp, gs, v);
      }
    }
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < L.n_pkm1; ++i)
        rhs[L.free_index[L.disp_dof(t, c, i)]] += erhs.displacement[c * L.n_pkm1 + i];
    for (int i = 0; i < L.n_pkm1; ++i)
      rhs[L.free_index[L.rot_dof(t, i)]] += erhs.rotation[i];
  }

  sys.matrix.resize(L.n_free, L.n_free);
  sys.matrix.setFromTriplets(trip.begin(), trip.end());
  sys.rhs = std::move(rhs);
  return sys;
}

namespace {

const char* block_name(const DofLayout& L, int dof) {
  if (dof < L.row_interior_base[0]) return "stress row 1 edge";
  if (dof < L.row_edge_base[1]) return "stress row 1 interior";
  if (dof < L.row_interior_base[1]) return "stress row 2 edge";
  if (dof < L.hoop_base) return "stress row 2 interior";
  if (dof < L.disp_base) return "hoop stress";
  if (dof < L.rot_base) return "displacement";
  return "rotation";
}

}  // namespace

SolutionFields solve(const SaddleSystem& system) {
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(system.matrix);
  lu.factorize(system.matrix);
  if (lu.info() != Eigen::Success) {
    // Identify a structurally empty column if one exists, to name the block.
    const DofLayout& L = system.layout;
    for (int g = 0; g < L.total; ++g) {
      const int fi = L.free_index[g];
      if (fi < 0) continue;
      if (system.matrix.outerIndexPtr()[fi] == system.matrix.outerIndexPtr()[fi + 1])
        throw std::runtime_error(std::string("solve: singular factorization, zero pivot in ") +
                                 block_name(L, g) + " block");
    }
    throw std::runtime_error("solve: singular factorization (" + lu.lastErrorMessage() + ")");
  }
  const Eigen::VectorXd x = lu.solve(system.rhs);
  const double bnorm = system.rhs.norm();
  const double res = (system.matrix * x - system.rhs).norm() / (bnorm > 0.0 ? bnorm : 1.0);
  if (!(res <= 1e-9))
    throw std::runtime_error("solve: residual " + std::to_string(res) + " exceeds 1e-9");

  SolutionFields out;
  out.residual = res;
  out.coeffs = Eigen::VectorXd::Zero(system.layout.total);
  for (int g = 0; g < system.layout.total; ++g) {
    const int fi = system.layout.free_index[g];
    if (fi >= 0) out.coeffs[g] = x[fi];
  }
  return out;
}

void dump_matrix(const SaddleSystem& system, std::ostream& os) {
  for (int col = 0; col < system.matrix.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(system.matrix, col); it; ++it)
      os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
}

namespace {

// Shared element loop for the stress-block verification operators.
template <class EmitA, class EmitG>
void stress_block_loop(const Mesh& mesh, const ElementBasis& basis, const DofLayout& L,
                       const MaterialParams& params, const QuadratureRule& rule,
                       EmitA&& emit_a, EmitG&& emit_gram) {
  const int ns = 2 * L.n_vec + L.n_pk;
  const double inv2mu = 1.0 / (2.0 * params.mu);
  const double tf = params.trace_factor();
  const RefTables tables = tabulate(basis, rule);
  std::vector<StressEntry> entries(ns);
  std::vector<DofRef> local(ns);

  for (int t = 0; t < L.n_tris; ++t) {
    const AffineMap map = canonical_affine(mesh, t);
    for (int s = 0; s < 2 * L.n_vec; ++s) local[s] = L.stress_dofs[t][s];
    for (int i = 0; i < L.n_pk; ++i) local[2 * L.n_vec + i] = {L.hoop_dof(t, i), 1.0};

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(ns, ns);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(ns, ns);
    for (int q = 0; q < rule.size(); ++q) {
      const double xi = rule.points[q][0], eta = rule.points[q][1];
      const double r = map.r(xi, eta);
      const double wr = rule.weights[q] * map.det * r;
      fill_stress_entries(basis, map, tables, q, r, entries);
      for (int s = 0; s < ns; ++s)
        for (int s2 = s; s2 < ns; ++s2) {
          const double fb = frob(entries[s], entries[s2]);
          const double dv = entries[s].div_axi.dot(entries[s2].div_axi);
          const double av =
              wr * (inv2mu * (fb - tf * entries[s].trace_plus_theta *
                                       entries[s2].trace_plus_theta) +
                    params.gamma * dv);
          const double gv = wr * (fb + dv);
          a(s, s2) += av;
          g(s, s2) += gv;
          if (s2 != s) {
            a(s2, s) += av;
            g(s2, s) += gv;
          }
        }
    }
    for (int s = 0; s < ns; ++s)
      for (int s2 = 0; s2 < ns; ++s2) {
        emit_a(local[s], local[s2], a(s, s2));
        emit_gram(local[s], local[s2], g(s, s2));
      }
  }
}

std::vector<int> stress_free_indexing(const DofLayout& L, int& n_free_stress) {
  std::vector<int> idx(L.total, -1);
  int next = 0;
  for (int g = 0; g < L.disp_base; ++g)
    if (!L.constrained[g]) idx[g] = next++;
  n_free_stress = next;
  return idx;
}

}  // namespace

StressOperators build_stress_operators(const Mesh& mesh, int k, const MaterialParams& params,
                                       int quad_bump) {
  const ElementBasis basis = reference_basis(k);
  const DofLayout L = build_dof_layout(mesh, k);
  const QuadratureRule rule = triangle_gauss_rule(assembly_exactness(k, quad_bump));

  StressOperators ops;
  ops.free_stress_index = stress_free_indexing(L, ops.n_free_stress);

  std::vector<Eigen::Triplet<double>> ta, tg;
  stress_block_loop(
      mesh, basis, L, params, rule,
      [&](const DofRef& a, const DofRef& b, double v) {
        const int i = ops.free_stress_index[a.index], j = ops.free_stress_index[b.index];
        if (i >= 0 && j >= 0) ta.emplace_back(i, j, a.weight * b.weight * v);
      },
      [&](const DofRef& a, const DofRef& b, double v) {
        const int i = ops.free_stress_index[a.index], j = ops.free_stress_index[b.index];
        if (i >= 0 && j >= 0) tg.emplace_back(i, j, a.weight * b.weight * v);
      });
  ops.a_block.resize(ops.n_free_stress, ops.n_free_stress);
  ops.a_block.setFromTriplets(ta.begin(), ta.end());
  ops.sigma_gram.resize(ops.n_free_stress, ops.n_free_stress);
  ops.sigma_gram.setFromTriplets(tg.begin(), tg.end());
  return ops;
}

CouplingOperators build_coupling_operators(const Mesh& mesh, int k, int quad_bump) {
  const ElementBasis basis = reference_basis(k);
  const DofLayout L = build_dof_layout(mesh, k);
  const QuadratureRule rule = triangle_gauss_rule(assembly_exactness(k, quad_bump));

  CouplingOperators ops;
  std::vector<int> sfree = stress_free_indexing(L, ops.n_free_stress);
  ops.n_uq = L.total - L.disp_base;

  std::vector<Eigen::Triplet<double>> tg, tc, tm;
  {
    const RefTables tables = tabulate(basis, rule);
    const int ns = 2 * L.n_vec + L.n_pk;
    std::vector<StressEntry> entries(ns);
    std::vector<DofRef> local(ns);
    for (int t = 0; t < L.n_tris; ++t) {
      const AffineMap map = canonical_affine(mesh, t);
      for (int s = 0; s < 2 * L.n_vec; ++s) local[s] = L.stress_dofs[t][s];
      for (int i = 0; i < L.n_pk; ++i) local[2 * L.n_vec + i] = {L.hoop_dof(t, i), 1.0};

      for (int q = 0; q < rule.size(); ++q) {
        const double xi = rule.points[q][0], eta = rule.points[q][1];
        const Eigen::Vector2d x = map.map(xi, eta);
        const double r = x[0], z = x[1];
        const double wr = rule.weights[q] * map.det * r;
        fill_stress_entries(basis, map, tables, q, r, entries);

        for (int s = 0; s < ns; ++s) {
          const int gs = sfree[local[s].index];
          if (gs < 0) continue;
          const double ws = local[s].weight;
          const StressEntry& es = entries[s];
          for (int s2 = 0; s2 < ns; ++s2) {
            const int gt = sfree[local[s2].index];
            if (gt < 0) continue;
            tg.emplace_back(gs, gt,
                            ws * local[s2].weight * wr *
                                (frob(es, entries[s2]) + es.div_axi.dot(entries[s2].div_axi)));
          }
          for (int c = 0; c < 2; ++c)
            for (int i = 0; i < L.n_pkm1; ++i)
              tc.emplace_back(L.disp_dof(t, c, i) - L.disp_base, gs,
                              ws * wr * es.div_axi[c] * tables.pk_val[q][i]);
          const double cw = wr * (es.skew + es.div_axi[0] * z - es.div_axi[1] * r);
          for (int i = 0; i < L.n_pkm1; ++i)
            tc.emplace_back(L.rot_dof(t, i) - L.disp_base, gs, ws * cw * tables.pk_val[q][i]);
        }
        for (int c = 0; c < 2; ++c)
          for (int i = 0; i < L.n_pkm1; ++i)
            for (int j = 0; j < L.n_pkm1; ++j)
              tm.emplace_back(L.disp_dof(t, c, i) - L.disp_base,
                              L.disp_dof(t, c, j) - L.disp_base,
                              wr * tables.pk_val[q][i] * tables.pk_val[q][j]);
        for (int i = 0; i < L.n_pkm1; ++i)
          for (int j = 0; j < L.n_pkm1; ++j)
            tm.emplace_back(L.rot_dof(t, i) - L.disp_base, L.rot_dof(t, j) - L.disp_base,
                            wr * tables.pk_val[q][i] * tables.pk_val[q][j]);
      }
    }
  }
  ops.sigma_gram.resize(ops.n_free_stress, ops.n_free_stress);
  ops.sigma_gram.setFromTriplets(tg.begin(), tg.end());
  ops.coupling.resize(ops.n_uq, ops.n_free_stress);
  ops.coupling.setFromTriplets(tc.begin(), tc.end());
  ops.uq_mass.resize(ops.n_uq, ops.n_uq);
  ops.uq_mass.setFromTriplets(tm.begin(), tm.end());
  return ops;
}

}  // namespace axielast
