#pragma once

#include <array>
#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace axielast {

enum class EdgeTag { interior, axis, outer };
enum class Diagonal { north_east, north_west };

// Axis-contact classification of a triangle in the meridian plane:
// a full edge on r = 0, a single vertex on r = 0, or no contact.
enum class TriangleType { edge_on_axis, vertex_on_axis, off_axis };

struct Edge {
  int v0 = -1, v1 = -1;               // endpoints, oriented v0 < v1
  std::array<int, 2> tri{-1, -1};     // owning triangles, tri[1] == -1 on boundary
  std::array<int, 2> local{-1, -1};   // local edge index within each owner
  EdgeTag tag = EdgeTag::interior;
};

// Triangulation of a meridian (r,z) domain. Triangle vertices are stored
// counter-clockwise with the first vertex minimizing r (ties: smaller z),
// so that r0 <= r1, r2 for every triangle. Local edge m runs from vertex m
// to vertex (m+1)%3. Immutable after construction.
struct Mesh {
  std::vector<Eigen::Vector2d> vertices;       // (r, z)
  std::vector<std::array<int, 3>> triangles;
  std::vector<Edge> edges;
  std::vector<std::array<int, 3>> tri_edges;   // per triangle: global edge index of local edge m

  double signed_area(int t) const;
};

// Uniform n x n grid on the unit square (0,1)^2, each cell split along the
// requested diagonal. The side r = 0 is tagged axis, the rest outer.
Mesh build_unit_square_mesh(int n, Diagonal diagonal = Diagonal::north_east);

// Affine map F(xi,eta) = jacobian*(xi,eta) + offset from the reference
// triangle (0,0),(1,0),(0,1) to a physical triangle, with the Appendix-style
// radial parameters: r_star = ((r1-r0)/r0, (r2-r0)/r0) when r0 > 0, or the
// raw (r1, r2) when r0 = 0.
struct AffineMap {
  Eigen::Matrix2d jacobian = Eigen::Matrix2d::Identity();
  Eigen::Vector2d offset = Eigen::Vector2d::Zero();
  double det = 1.0;
  std::array<double, 2> r_star{0.0, 0.0};
  bool r0_positive = false;
  TriangleType type = TriangleType::off_axis;

  Eigen::Vector2d map(double xi, double eta) const {
    return offset + jacobian * Eigen::Vector2d(xi, eta);
  }
  // radial coordinate of the mapped point; affine, >= 0 on the reference triangle
  double r(double xi, double eta) const {
    return offset[0] + jacobian(0, 0) * xi + jacobian(0, 1) * eta;
  }
};

// Map for triangle `tri` honoring the stored canonical vertex order.
// Throws std::runtime_error on a degenerate (non-positive area) triangle.
AffineMap canonical_affine(const Mesh& mesh, int tri);

// Builds an AffineMap directly from three vertices in canonical order.
AffineMap affine_from_vertices(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                               const Eigen::Vector2d& c);

// Every edge owned by exactly one triangle, with its axis/outer tag.
std::vector<std::pair<int, EdgeTag>> boundary_edges(const Mesh& mesh);

// Plain-text dump: "v r z", "t i0 i1 i2", "e i0 i1 tag" lines.
void dump_mesh(const Mesh& mesh, std::ostream& os);

}  // namespace axielast
