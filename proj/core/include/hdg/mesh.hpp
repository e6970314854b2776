// Conforming triangulations of the unit square with full edge connectivity.

#ifndef HDG_MESH_HPP
#define HDG_MESH_HPP

#include <array>
#include <iosfwd>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace hdg {

using Point = Eigen::Vector2d;

/// Direction of the diagonal splitting each grid square into two triangles.
enum class DiagonalPattern {
  diagonal,      ///< every square cut from (i,j) to (i+1,j+1)
  antidiagonal,  ///< every square cut from (i+1,j) to (i,j+1)
  alternating    ///< checkerboard of the two directions
};

DiagonalPattern parse_pattern(std::string_view name);
std::string_view to_string(DiagonalPattern pattern);

struct Vertex {
  int id = -1;
  Point x = Point::Zero();
};

/// Mesh edge. The normal points from the lower-id adjacent element to the
/// higher-id one, or outward on the boundary; the tangent is the normal
/// rotated by +90 degrees. The global parametrisation of the edge runs from
/// vertices[0] to vertices[1] (ascending vertex id).
struct Edge {
  int id = -1;
  std::array<int, 2> vertices{-1, -1};
  std::array<int, 2> elements{-1, -1};  ///< elements[1] == -1 on the boundary
  Point normal = Point::Zero();
  Point tangent = Point::Zero();
  double length = 0.0;
  bool is_boundary = false;

  Point point_at(double s, const std::vector<Vertex>& verts) const {
    return (1.0 - s) * verts[vertices[0]].x + s * verts[vertices[1]].x;
  }
};

/// Triangle with counterclockwise vertices; local edge i is opposite vertex i
/// and runs from vertex (i+1)%3 to vertex (i+2)%3.
struct Element {
  int id = -1;
  std::array<int, 3> vertices{-1, -1, -1};
  std::array<int, 3> edges{-1, -1, -1};
  /// sigma_{K,E}: normal_sign[i] * edge.normal is the outward normal of K.
  std::array<int, 3> normal_sign{1, 1, 1};
  /// +1 if the local direction of edge i matches its global parametrisation.
  std::array<int, 3> edge_direction{1, 1, 1};
  double diameter = 0.0;
  double area = 0.0;
};

/// F_K(xhat) = B xhat + b, mapping the reference triangle (0,0),(1,0),(0,1)
/// onto an element.
struct AffineMap {
  Eigen::Matrix2d B = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d B_inv = Eigen::Matrix2d::Identity();
  Point b = Point::Zero();
  double det = 1.0;

  Point operator()(const Point& xhat) const { return B * xhat + b; }
  Point to_reference(const Point& x) const { return B_inv * (x - b); }
};

/// Immutable after construction.
class Mesh {
 public:
  Mesh(std::vector<Vertex> vertices, std::vector<Element> elements, int level = 0);

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Element>& elements() const noexcept { return elements_; }

  const Vertex& vertex(int id) const { return vertices_[static_cast<std::size_t>(id)]; }
  const Edge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }
  const Element& element(int id) const { return elements_[static_cast<std::size_t>(id)]; }

  int num_vertices() const noexcept { return static_cast<int>(vertices_.size()); }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
  int num_elements() const noexcept { return static_cast<int>(elements_.size()); }
  int num_boundary_edges() const noexcept { return num_boundary_edges_; }
  int num_interior_edges() const noexcept { return num_edges() - num_boundary_edges_; }

  double h() const noexcept { return h_; }
  int level() const noexcept { return level_; }

  /// Outward unit normal of element K on its local edge i.
  Point outward_normal(const Element& K, int i) const {
    return static_cast<double>(K.normal_sign[i]) * edge(K.edges[i]).normal;
  }

  /// Element containing x (closed triangles; first match wins), or -1.
  int locate(const Point& x, double tol = 1e-12) const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<Element> elements_;
  int num_boundary_edges_ = 0;
  double h_ = 0.0;
  int level_ = 0;
};

/// Uniform n x n grid of the unit square, each square split into two triangles.
Mesh generate_structured(int n, DiagonalPattern pattern = DiagonalPattern::diagonal, int level = 0);

/// Mesh with 2^level subdivisions per side.
Mesh mesh_for_level(int level, DiagonalPattern pattern = DiagonalPattern::diagonal);

/// Meshes for levels 1..levels (h = 2^-1 ... 2^-levels).
std::vector<Mesh> refinement_sequence(int levels, DiagonalPattern pattern = DiagonalPattern::diagonal);

AffineMap affine_map(const Mesh& mesh, const Element& K);

/// Debug dump: "V E T", then vertices, edges and elements one per line.
void write_mesh_ascii(const Mesh& mesh, std::ostream& out);

}  // namespace hdg

#endif  // HDG_MESH_HPP
