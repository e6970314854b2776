#include "hdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace hdg {

DiagonalPattern parse_pattern(std::string_view name) {
  if (name == "diagonal") return DiagonalPattern::diagonal;
  if (name == "antidiagonal") return DiagonalPattern::antidiagonal;
  if (name == "alternating") return DiagonalPattern::alternating;
  throw std::invalid_argument("unknown mesh pattern '" + std::string(name) +
                              "' (expected diagonal, antidiagonal or alternating)");
}

std::string_view to_string(DiagonalPattern pattern) {
  switch (pattern) {
    case DiagonalPattern::diagonal: return "diagonal";
    case DiagonalPattern::antidiagonal: return "antidiagonal";
    case DiagonalPattern::alternating: return "alternating";
  }
  return "unknown";
}

namespace {

double signed_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

}  // namespace

Mesh::Mesh(std::vector<Vertex> vertices, std::vector<Element> elements, int level)
    : vertices_(std::move(vertices)), elements_(std::move(elements)), level_(level) {
  std::map<std::pair<int, int>, int> edge_index;

  for (std::size_t e = 0; e < elements_.size(); ++e) {
    Element& K = elements_[e];
    K.id = static_cast<int>(e);
    const Point& a = vertices_.at(static_cast<std::size_t>(K.vertices[0])).x;
    const Point& b = vertices_.at(static_cast<std::size_t>(K.vertices[1])).x;
    const Point& c = vertices_.at(static_cast<std::size_t>(K.vertices[2])).x;
    K.area = signed_area(a, b, c);
    if (!(K.area > 0.0)) {
      throw std::invalid_argument("element " + std::to_string(e) +
                                  " is degenerate or not counterclockwise");
    }
    K.diameter = std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
    h_ = std::max(h_, K.diameter);

    for (int i = 0; i < 3; ++i) {
      const int v_from = K.vertices[(i + 1) % 3];
      const int v_to = K.vertices[(i + 2) % 3];
      const auto key = std::minmax(v_from, v_to);
      K.edge_direction[i] = v_from < v_to ? 1 : -1;

      auto [it, inserted] = edge_index.try_emplace({key.first, key.second}, static_cast<int>(edges_.size()));
      if (inserted) {
        Edge E;
        E.id = it->second;
        E.vertices = {key.first, key.second};
        E.elements = {K.id, -1};
        const Point d = vertices_[static_cast<std::size_t>(v_to)].x - vertices_[static_cast<std::size_t>(v_from)].x;
        E.length = d.norm();
        // Counterclockwise traversal: outward normal is the direction rotated by -90 degrees.
        E.normal = Point(d.y(), -d.x()) / E.length;
        E.tangent = Point(-E.normal.y(), E.normal.x());
        edges_.push_back(E);
        K.normal_sign[i] = 1;
      } else {
        Edge& E = edges_[static_cast<std::size_t>(it->second)];
        if (E.elements[1] != -1) {
          throw std::invalid_argument("edge " + std::to_string(E.id) +
                                      " is shared by more than two elements");
        }
        E.elements[1] = K.id;
        K.normal_sign[i] = -1;
      }
      K.edges[i] = it->second;
    }
  }

  for (Edge& E : edges_) {
    E.is_boundary = E.elements[1] == -1;
    if (E.is_boundary) ++num_boundary_edges_;
  }
}

int Mesh::locate(const Point& x, double tol) const {
  for (const Element& K : elements_) {
    const AffineMap F = affine_map(*this, K);
    const Point xh = F.to_reference(x);
    if (xh.x() >= -tol && xh.y() >= -tol && xh.x() + xh.y() <= 1.0 + tol) return K.id;
  }
  return -1;
}

Mesh generate_structured(int n, DiagonalPattern pattern, int level) {
  if (n < 1) throw std::invalid_argument("generate_structured: n must be >= 1");

  std::vector<Vertex> vertices;
  vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      const int id = static_cast<int>(vertices.size());
      vertices.push_back({id, Point(static_cast<double>(i) / n, static_cast<double>(j) / n)});
    }
  }

  const auto vid = [n](int i, int j) { return i + (n + 1) * j; };
  std::vector<Element> elements;
  elements.reserve(static_cast<std::size_t>(2 * n * n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j), v11 = vid(i + 1, j + 1), v01 = vid(i, j + 1);
      const bool along_main = pattern == DiagonalPattern::diagonal ||
                              (pattern == DiagonalPattern::alternating && (i + j) % 2 == 0);
      Element lower, upper;
      if (along_main) {
        lower.vertices = {v00, v10, v11};
        upper.vertices = {v00, v11, v01};
      } else {
        lower.vertices = {v00, v10, v01};
        upper.vertices = {v10, v11, v01};
      }
      elements.push_back(lower);
      elements.push_back(upper);
    }
  }
  return Mesh(std::move(vertices), std::move(elements), level);
}

Mesh mesh_for_level(int level, DiagonalPattern pattern) {
  if (level < 0 || level > 14) throw std::invalid_argument("mesh level must lie in [0, 14]");
  return generate_structured(1 << level, pattern, level);
}

std::vector<Mesh> refinement_sequence(int levels, DiagonalPattern pattern) {
  if (levels < 1) throw std::invalid_argument("refinement_sequence: levels must be >= 1");
  std::vector<Mesh> meshes;
  meshes.reserve(static_cast<std::size_t>(levels));
  for (int l = 1; l <= levels; ++l) meshes.push_back(mesh_for_level(l, pattern));
  return meshes;
}

AffineMap affine_map(const Mesh& mesh, const Element& K) {
  const Point& x0 = mesh.vertex(K.vertices[0]).x;
  const Point& x1 = mesh.vertex(K.vertices[1]).x;
  const Point& x2 = mesh.vertex(K.vertices[2]).x;
  AffineMap F;
  F.B.col(0) = x1 - x0;
  F.B.col(1) = x2 - x0;
  F.b = x0;
  F.det = F.B.determinant();
  if (!(std::abs(F.det) > 0.0)) {
    throw std::invalid_argument("affine_map: element " + std::to_string(K.id) + " is degenerate");
  }
  F.B_inv = F.B.inverse();
  return F;
}

void write_mesh_ascii(const Mesh& mesh, std::ostream& out) {
  out << mesh.num_vertices() << ' ' << mesh.num_edges() << ' ' << mesh.num_elements() << '\n';
  out.precision(17);
  for (const Vertex& v : mesh.vertices()) out << v.id << ' ' << v.x.x() << ' ' << v.x.y() << '\n';
  for (const Edge& E : mesh.edges()) {
    out << E.id << ' ' << E.vertices[0] << ' ' << E.vertices[1] << ' ' << E.elements[0] << ' '
        << E.elements[1] << '\n';
  }
  for (const Element& K : mesh.elements()) {
    out << K.id << ' ' << K.vertices[0] << ' ' << K.vertices[1] << ' ' << K.vertices[2] << '\n';
  }
}

}  // namespace hdg
