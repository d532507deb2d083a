#include "axielast/geometry.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>

namespace axielast {

namespace {

double tri_signed_area(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                       const Eigen::Vector2d& c) {
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
}

// Rotate the cyclic vertex order so vertex 0 minimizes r, ties broken by
// smaller z. Assumes the triple is already counter-clockwise.
std::array<int, 3> canonicalize(const std::vector<Eigen::Vector2d>& verts,
                                std::array<int, 3> t) {
  int best = 0;
  for (int i = 1; i < 3; ++i) {
    const Eigen::Vector2d& vi = verts[t[i]];
    const Eigen::Vector2d& vb = verts[t[best]];
    if (vi[0] < vb[0] || (vi[0] == vb[0] && vi[1] < vb[1])) best = i;
  }
  return {t[best], t[(best + 1) % 3], t[(best + 2) % 3]};
}

TriangleType classify(const std::vector<Eigen::Vector2d>& verts, const std::array<int, 3>& t) {
  int on_axis = 0;
  for (int i = 0; i < 3; ++i)
    if (verts[t[i]][0] == 0.0) ++on_axis;
  if (on_axis >= 2) return TriangleType::edge_on_axis;
  if (on_axis == 1) return TriangleType::vertex_on_axis;
  return TriangleType::off_axis;
}

}  // namespace

double Mesh::signed_area(int t) const {
  const auto& tv = triangles[t];
  return tri_signed_area(vertices[tv[0]], vertices[tv[1]], vertices[tv[2]]);
}

Mesh build_unit_square_mesh(int n, Diagonal diagonal) {
  if (n < 1) throw std::invalid_argument("build_unit_square_mesh: n must be >= 1");

  Mesh m;
  const int np = n + 1;
  m.vertices.reserve(np * np);
  for (int j = 0; j < np; ++j)
    for (int i = 0; i < np; ++i)
      m.vertices.emplace_back(double(i) / n, double(j) / n);

  auto vid = [np](int i, int j) { return j * np + i; };

  m.triangles.reserve(2 * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j);
      const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      if (diagonal == Diagonal::north_east) {
        m.triangles.push_back(canonicalize(m.vertices, {v00, v10, v11}));
        m.triangles.push_back(canonicalize(m.vertices, {v00, v11, v01}));
      } else {
        m.triangles.push_back(canonicalize(m.vertices, {v00, v10, v01}));
        m.triangles.push_back(canonicalize(m.vertices, {v10, v11, v01}));
      }
    }
  }

  // Unique edges keyed by sorted endpoints; index order = first appearance.
  std::map<std::pair<int, int>, int> edge_id;
  m.tri_edges.assign(m.triangles.size(), {-1, -1, -1});
  for (int t = 0; t < int(m.triangles.size()); ++t) {
    for (int e = 0; e < 3; ++e) {
      int a = m.triangles[t][e], b = m.triangles[t][(e + 1) % 3];
      auto key = std::minmax(a, b);
      auto it = edge_id.find(key);
      int id;
      if (it == edge_id.end()) {
        id = int(m.edges.size());
        edge_id.emplace(key, id);
        Edge ed;
        ed.v0 = key.first;
        ed.v1 = key.second;
        ed.tri[0] = t;
        ed.local[0] = e;
        m.edges.push_back(ed);
      } else {
        id = it->second;
        m.edges[id].tri[1] = t;
        m.edges[id].local[1] = e;
      }
      m.tri_edges[t][e] = id;
    }
  }

  for (Edge& ed : m.edges) {
    if (ed.tri[1] >= 0) {
      ed.tag = EdgeTag::interior;
    } else {
      const bool on_axis = m.vertices[ed.v0][0] == 0.0 && m.vertices[ed.v1][0] == 0.0;
      ed.tag = on_axis ? EdgeTag::axis : EdgeTag::outer;
    }
  }
  return m;
}

AffineMap affine_from_vertices(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                               const Eigen::Vector2d& c) {
  AffineMap map;
  map.offset = a;
  map.jacobian.col(0) = b - a;
  map.jacobian.col(1) = c - a;
  map.det = map.jacobian.determinant();
  if (!(map.det > 0.0))
    throw std::runtime_error("canonical_affine: degenerate or misoriented triangle");

  const double r0 = a[0], r1 = b[0], r2 = c[0];
  map.r0_positive = r0 > 0.0;
  if (map.r0_positive)
    map.r_star = {(r1 - r0) / r0, (r2 - r0) / r0};
  else
    map.r_star = {r1, r2};

  int on_axis = (r0 == 0.0) + (r1 == 0.0) + (r2 == 0.0);
  map.type = on_axis >= 2 ? TriangleType::edge_on_axis
             : on_axis == 1 ? TriangleType::vertex_on_axis
                            : TriangleType::off_axis;
  return map;
}

AffineMap canonical_affine(const Mesh& mesh, int tri) {
  if (tri < 0 || tri >= int(mesh.triangles.size()))
    throw std::invalid_argument("canonical_affine: triangle index out of range");
  const auto& t = mesh.triangles[tri];
  AffineMap map = affine_from_vertices(mesh.vertices[t[0]], mesh.vertices[t[1]],
                                       mesh.vertices[t[2]]);
  map.type = classify(mesh.vertices, t);
  return map;
}

std::vector<std::pair<int, EdgeTag>> boundary_edges(const Mesh& mesh) {
  std::vector<std::pair<int, EdgeTag>> out;
  for (int e = 0; e < int(mesh.edges.size()); ++e)
    if (mesh.edges[e].tri[1] < 0) out.emplace_back(e, mesh.edges[e].tag);
  return out;
}

void dump_mesh(const Mesh& mesh, std::ostream& os) {
  char buf[128];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g\n", v[0], v[1]);
    os << buf;
  }
  for (const auto& t : mesh.triangles) {
    std::snprintf(buf, sizeof buf, "t %d %d %d\n", t[0], t[1], t[2]);
    os << buf;
  }
  for (const auto& e : mesh.edges) {
    const char* tag = e.tag == EdgeTag::axis      ? "axis"
                      : e.tag == EdgeTag::outer   ? "outer"
                                                  : "interior";
    std::snprintf(buf, sizeof buf, "e %d %d %s\n", e.v0, e.v1, tag);
    os << buf;
  }
}

}  // namespace axielast
