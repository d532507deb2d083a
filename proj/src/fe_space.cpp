#include "axielast/fe_space.hpp"

#include <cmath>
#include <stdexcept>

#include "axielast/quadrature.hpp"

namespace axielast {

const std::array<RefEdge, 3>& reference_edges() {
  static const std::array<RefEdge, 3> edges = [] {
    std::array<RefEdge, 3> e;
    const Eigen::Vector2d v0(0, 0), v1(1, 0), v2(0, 1);
    const double s = 1.0 / std::sqrt(2.0);
    e[0] = {v0, v1, {0, -1}, 1.0};
    e[1] = {v1, v2, {s, s}, std::sqrt(2.0)};
    e[2] = {v2, v0, {-1, 0}, 1.0};
    return e;
  }();
  return edges;
}

ElementBasis reference_basis(int k) {
  if (k < 1 || k > 3) throw std::invalid_argument("reference_basis: k must be in 1..3");

  ElementBasis basis;
  basis.degree = k;
  basis.n_edge_pts = k + 1;
  basis.n_vec = (k + 1) * (k + 2);
  basis.n_interior = k * k - 1;
  basis.n_pk = Poly2::dim(k);
  basis.n_pkm1 = Poly2::dim(k - 1);

  for (const auto& nw : gauss_legendre_01(k + 1)) basis.edge_points.push_back(nw[0]);

  // Monomial vector candidates: (m,0) for all monomials of degree <= k, then (0,m).
  const int half = Poly2::dim(k);
  std::vector<std::array<Poly2, 2>> cand(basis.n_vec);
  {
    int i = 0;
    for (int d = 0; d <= k; ++d)
      for (int b = 0; b <= d; ++b, ++i) {
        cand[i] = {Poly2::monomial(d - b, b), Poly2()};
        cand[half + i] = {Poly2(), Poly2::monomial(d - b, b)};
      }
  }

  // DOF functionals applied to the candidates.
  Eigen::MatrixXd V(basis.n_vec, basis.n_vec);
  int row = 0;
  for (int e = 0; e < 3; ++e) {
    const RefEdge& edge = reference_edges()[e];
    for (int j = 0; j <= k; ++j, ++row) {
      const Eigen::Vector2d q = edge.point(basis.edge_points[j]);
      for (int c = 0; c < basis.n_vec; ++c) {
        const Eigen::Vector2d val(cand[c][0].eval(q[0], q[1]),
                                  cand[c][1].eval(q[0], q[1]));
        V(row, c) = val.dot(edge.normal);
      }
    }
  }
  const Poly2 bubble =
      Poly2::monomial(1, 1) + (-1.0) * (Poly2::monomial(2, 1) + Poly2::monomial(1, 2));
  for (int d = 1; d <= k - 1; ++d)
    for (int b = 0; b <= d; ++b, ++row) {
      const Poly2 grad_xi = Poly2::monomial(d - b, b).dxi();
      const Poly2 grad_eta = Poly2::monomial(d - b, b).deta();
      for (int c = 0; c < basis.n_vec; ++c)
        V(row, c) = (cand[c][0] * grad_xi).integral() + (cand[c][1] * grad_eta).integral();
    }
  for (int d = 0; d <= k - 2; ++d)
    for (int b = 0; b <= d; ++b, ++row) {
      const Poly2 f = bubble * Poly2::monomial(d - b, b);
      const Poly2 curl_xi = f.deta();
      const Poly2 curl_eta = (-1.0) * f.dxi();
      for (int c = 0; c < basis.n_vec; ++c)
        V(row, c) = (cand[c][0] * curl_xi).integral() + (cand[c][1] * curl_eta).integral();
    }
  if (row != basis.n_vec) throw std::runtime_error("reference_basis: functional count mismatch");

  Eigen::FullPivLU<Eigen::MatrixXd> lu(V);
  if (!lu.isInvertible())
    throw std::runtime_error("reference_basis: singular DOF functional system");
  const Eigen::MatrixXd C = lu.solve(Eigen::MatrixXd::Identity(basis.n_vec, basis.n_vec));

  basis.vec_funcs.resize(basis.n_vec);
  basis.vec_divs.resize(basis.n_vec);
  for (int j = 0; j < basis.n_vec; ++j) {
    Poly2 fx(k), fy(k);
    for (int m = 0; m < basis.n_vec; ++m) {
      const double w = C(m, j);
      if (w == 0.0) continue;
      for (int i = 0; i < int(cand[m][0].c.size()); ++i) fx.c[i] += w * cand[m][0].c[i];
      for (int i = 0; i < int(cand[m][1].c.size()); ++i) fy.c[i] += w * cand[m][1].c[i];
    }
    basis.vec_funcs[j] = {fx, fy};
    basis.vec_divs[j] = fx.dxi() + fy.deta();
  }

  basis.pk_funcs.reserve(basis.n_pk);
  for (int d = 0; d <= k; ++d)
    for (int b = 0; b <= d; ++b) basis.pk_funcs.push_back(Poly2::monomial(d - b, b));

  return basis;
}

DofLayout build_dof_layout(const Mesh& mesh, int k) {
  const ElementBasis basis = reference_basis(k);

  DofLayout L;
  L.degree = k;
  L.n_vec = basis.n_vec;
  L.n_interior = basis.n_interior;
  L.n_edge_pts = basis.n_edge_pts;
  L.n_pk = basis.n_pk;
  L.n_pkm1 = basis.n_pkm1;
  L.n_edges = int(mesh.edges.size());
  L.n_tris = int(mesh.triangles.size());

  const int edge_block = L.n_edges * L.n_edge_pts;
  const int int_block = L.n_tris * L.n_interior;
  L.row_edge_base[0] = 0;
  L.row_interior_base[0] = edge_block;
  L.row_edge_base[1] = edge_block + int_block;
  L.row_interior_base[1] = L.row_edge_base[1] + edge_block;
  L.hoop_base = L.row_interior_base[1] + int_block;
  L.disp_base = L.hoop_base + L.n_tris * L.n_pk;
  L.rot_base = L.disp_base + L.n_tris * 2 * L.n_pkm1;
  L.total = L.rot_base + L.n_tris * L.n_pkm1;

  L.stress_dofs.assign(L.n_tris, {});
  for (int t = 0; t < L.n_tris; ++t) {
    auto& refs = L.stress_dofs[t];
    refs.resize(2 * L.n_vec);
    for (int row = 0; row < 2; ++row) {
      for (int m = 0; m < 3; ++m) {
        const int ge = mesh.tri_edges[t][m];
        const Edge& E = mesh.edges[ge];
        const int va = mesh.triangles[t][m];
        const bool same_dir = (va == E.v0);
        const double len_phys = (mesh.vertices[E.v1] - mesh.vertices[E.v0]).norm();
        const double len_ref = reference_edges()[m].length;
        for (int j = 0; j < L.n_edge_pts; ++j) {
          const int gj = same_dir ? j : (L.n_edge_pts - 1 - j);
          DofRef ref;
          ref.index = L.row_edge_base[row] + ge * L.n_edge_pts + gj;
          ref.weight = (same_dir ? 1.0 : -1.0) * len_phys / len_ref;
          refs[row * L.n_vec + basis.edge_dof(m, j)] = ref;
        }
      }
      for (int i = 0; i < L.n_interior; ++i)
        refs[row * L.n_vec + basis.interior_dof(i)] = {
            L.row_interior_base[row] + t * L.n_interior + i, 1.0};
    }
  }

  L.constrained.assign(L.total, 0);
  for (int e = 0; e < L.n_edges; ++e) {
    if (mesh.edges[e].tag != EdgeTag::axis) continue;
    for (int row = 0; row < 2; ++row)
      for (int j = 0; j < L.n_edge_pts; ++j)
        L.constrained[L.row_edge_base[row] + e * L.n_edge_pts + j] = 1;
  }

  L.free_index.assign(L.total, -1);
  int next = 0;
  for (int i = 0; i < L.total; ++i)
    if (!L.constrained[i]) L.free_index[i] = next++;
  L.n_free = next;
  return L;
}

FieldSample eval_discrete_field(const Mesh& mesh, const ElementBasis& basis,
                                const DofLayout& layout, const Eigen::VectorXd& coeffs,
                                int tri, double xi, double eta) {
  const AffineMap map = canonical_affine(mesh, tri);
  FieldSample out;

  const auto& refs = layout.stress_dofs[tri];
  Eigen::Vector2d cart_div = Eigen::Vector2d::Zero();
  for (int row = 0; row < 2; ++row) {
    Eigen::Vector2d rv = Eigen::Vector2d::Zero();
    double rd = 0.0;
    for (int f = 0; f < layout.n_vec; ++f) {
      const DofRef& ref = refs[row * layout.n_vec + f];
      const double c = ref.weight * coeffs[ref.index];
      if (c == 0.0) continue;
      rv[0] += c * basis.vec_funcs[f][0].eval(xi, eta);
      rv[1] += c * basis.vec_funcs[f][1].eval(xi, eta);
      rd += c * basis.vec_divs[f].eval(xi, eta);
    }
    const PiolaValue pv = piola(map, rv, rd);
    out.stress.row(row) = pv.value.transpose();
    cart_div[row] = pv.divergence;
  }
  for (int i = 0; i < layout.n_pk; ++i)
    out.hoop += coeffs[layout.hoop_dof(tri, i)] * basis.pk_funcs[i].eval(xi, eta);
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < layout.n_pkm1; ++i)
      out.displacement[c] +=
          coeffs[layout.disp_dof(tri, c, i)] * basis.pk_funcs[i].eval(xi, eta);
  for (int i = 0; i < layout.n_pkm1; ++i)
    out.rotation += coeffs[layout.rot_dof(tri, i)] * basis.pk_funcs[i].eval(xi, eta);

  const double r = map.r(xi, eta);
  const double num0 = out.stress(0, 0) - out.hoop;
  const double num1 = out.stress(1, 0);
  out.div_axi[0] = cart_div[0] + (num0 == 0.0 && r == 0.0 ? 0.0 : num0 / r);
  out.div_axi[1] = cart_div[1] + (num1 == 0.0 && r == 0.0 ? 0.0 : num1 / r);
  return out;
}

}  // namespace axielast
