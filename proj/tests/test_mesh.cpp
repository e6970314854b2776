#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "hdg/mesh.hpp"

namespace hdg {
namespace {

TEST(Mesh, SingleSquareCounts) {
  const Mesh mesh = generate_structured(1);
  EXPECT_EQ(mesh.num_vertices(), 4);
  EXPECT_EQ(mesh.num_elements(), 2);
  EXPECT_EQ(mesh.num_edges(), 5);
  EXPECT_EQ(mesh.num_boundary_edges(), 4);
}

TEST(Mesh, EulerRelation) {
  for (int n : {1, 2, 3, 7}) {
    for (auto pattern : {DiagonalPattern::diagonal, DiagonalPattern::antidiagonal, DiagonalPattern::alternating}) {
      const Mesh mesh = generate_structured(n, pattern);
      EXPECT_EQ(mesh.num_vertices(), (n + 1) * (n + 1));
      EXPECT_EQ(mesh.num_elements(), 2 * n * n);
      EXPECT_EQ(mesh.num_edges(), 3 * n * n + 2 * n);
      EXPECT_EQ(mesh.num_vertices() - mesh.num_edges() + mesh.num_elements(), 1);
      EXPECT_NEAR(mesh.h(), std::sqrt(2.0) / n, 1e-15);
    }
  }
}

TEST(Mesh, RejectsZeroSubdivisions) { EXPECT_THROW(generate_structured(0), std::invalid_argument); }

TEST(Mesh, ConnectivityWalk) {
  const Mesh mesh = generate_structured(4);
  // Count element incidences per edge by walking elements, independent of Edge::elements.
  std::vector<int> incidence(static_cast<std::size_t>(mesh.num_edges()), 0);
  for (const Element& K : mesh.elements()) {
    for (int e : K.edges) ++incidence[static_cast<std::size_t>(e)];
  }
  int boundary = 0;
  for (const Edge& E : mesh.edges()) {
    const Point a = mesh.vertex(E.vertices[0]).x, b = mesh.vertex(E.vertices[1]).x;
    const bool on_gamma = (std::abs(a.x() - b.x()) < 1e-14 && (std::abs(a.x()) < 1e-14 || std::abs(a.x() - 1) < 1e-14)) ||
                          (std::abs(a.y() - b.y()) < 1e-14 && (std::abs(a.y()) < 1e-14 || std::abs(a.y() - 1) < 1e-14));
    EXPECT_EQ(on_gamma, E.is_boundary);
    EXPECT_EQ(incidence[static_cast<std::size_t>(E.id)], E.is_boundary ? 1 : 2);
    if (E.is_boundary) ++boundary;
    EXPECT_LT(E.vertices[0], E.vertices[1]);
  }
  EXPECT_EQ(boundary, 16);
}

TEST(Mesh, OrientationInvariants) {
  for (auto pattern : {DiagonalPattern::diagonal, DiagonalPattern::antidiagonal, DiagonalPattern::alternating}) {
    const Mesh mesh = generate_structured(5, pattern);
    double area = 0.0;
    for (const Element& K : mesh.elements()) {
      area += K.area;
      std::array<Point, 3> x;
      for (int i = 0; i < 3; ++i) x[i] = mesh.vertex(K.vertices[i]).x;
      double diam = 0.0;
      for (int i = 0; i < 3; ++i) {
        diam = std::max(diam, (x[i] - x[(i + 1) % 3]).norm());
        // outward normal from vertex geometry: opposite vertex lies on the negative side
        const Point a = x[(i + 1) % 3], b = x[(i + 2) % 3];
        const Point d = b - a;
        Point n(d.y(), -d.x());
        n.normalize();
        EXPECT_LT((x[i] - a).dot(n), 0.0);
        const Edge& E = mesh.edge(K.edges[i]);
        EXPECT_NEAR(K.normal_sign[i] * E.normal.dot(n), 1.0, 1e-14);
        EXPECT_NEAR(E.normal.norm(), 1.0, 1e-15);
        EXPECT_NEAR(E.tangent.norm(), 1.0, 1e-15);
        EXPECT_EQ(E.normal.dot(E.tangent), 0.0);
      }
      EXPECT_DOUBLE_EQ(K.diameter, diam);
    }
    EXPECT_NEAR(area, 1.0, 1e-12);
    for (const Edge& E : mesh.edges()) {
      if (E.is_boundary) continue;
      const Element& a = mesh.element(E.elements[0]);
      const Element& b = mesh.element(E.elements[1]);
      EXPECT_LT(a.id, b.id);
      int sa = 0, sb = 0;
      for (int i = 0; i < 3; ++i) {
        if (a.edges[i] == E.id) sa = a.normal_sign[i];
        if (b.edges[i] == E.id) sb = b.normal_sign[i];
      }
      EXPECT_EQ(sa, -sb);
      EXPECT_EQ(sa, 1);
    }
  }
}

TEST(Mesh, AffineMapIdentityAndScaling) {
  {
    const Mesh mesh({{0, Point(0, 0)}, {1, Point(1, 0)}, {2, Point(0, 1)}}, {Element{.vertices = {0, 1, 2}}});
    const AffineMap F = affine_map(mesh, mesh.element(0));
    EXPECT_TRUE(F.B.isApprox(Eigen::Matrix2d::Identity()));
    EXPECT_DOUBLE_EQ(F.det, 1.0);
  }
  {
    const double h = 0.125;
    const Mesh mesh({{0, Point(0, 0)}, {1, Point(h, 0)}, {2, Point(0, h)}}, {Element{.vertices = {0, 1, 2}}});
    EXPECT_DOUBLE_EQ(affine_map(mesh, mesh.element(0)).det, h * h);
  }
}

TEST(Mesh, AffineMapReproducesRandomTriangle) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Point a(U(rng), U(rng)), b(U(rng), U(rng)), c(U(rng), U(rng));
    if ((b - a).x() * (c - a).y() - (c - a).x() * (b - a).y() < 0) std::swap(b, c);
    const Mesh mesh({{0, a}, {1, b}, {2, c}}, {Element{.vertices = {0, 1, 2}}});
    const AffineMap F = affine_map(mesh, mesh.element(0));
    EXPECT_LT((F(Point(0, 0)) - a).norm(), 1e-15);
    EXPECT_LT((F(Point(1, 0)) - b).norm(), 1e-15);
    EXPECT_LT((F(Point(0, 1)) - c).norm(), 1e-15);
    EXPECT_NEAR(F.det, 2.0 * mesh.element(0).area, 1e-14);
    EXPECT_GT(F.det, 0.0);
  }
}

TEST(Mesh, RejectsDegenerateOrClockwise) {
  EXPECT_THROW(Mesh({{0, Point(0, 0)}, {1, Point(1, 0)}, {2, Point(2, 0)}}, {Element{.vertices = {0, 1, 2}}}), std::invalid_argument);
  EXPECT_THROW(Mesh({{0, Point(0, 0)}, {1, Point(0, 1)}, {2, Point(1, 0)}}, {Element{.vertices = {0, 1, 2}}}), std::invalid_argument);
}

TEST(Mesh, RefinementSequence) {
  const auto meshes = refinement_sequence(3);
  ASSERT_EQ(meshes.size(), 3u);
  for (std::size_t l = 0; l < meshes.size(); ++l) {
    EXPECT_EQ(meshes[l].num_elements(), 2 * (1 << (l + 1)) * (1 << (l + 1)));
    EXPECT_EQ(meshes[l].level(), static_cast<int>(l + 1));
  }
  EXPECT_EQ(meshes[1].h() / meshes[0].h(), 0.5);
  EXPECT_EQ(meshes[2].h() / meshes[1].h(), 0.5);
  EXPECT_THROW(refinement_sequence(0), std::invalid_argument);
  EXPECT_EQ(mesh_for_level(8).num_elements(), 131072);
}

TEST(Mesh, LocateAndDump) {
  const Mesh mesh = generate_structured(3);
  const int e = mesh.locate(Point(0.51, 0.2));
  ASSERT_GE(e, 0);
  const AffineMap F = affine_map(mesh, mesh.element(e));
  const Point xh = F.to_reference(Point(0.51, 0.2));
  EXPECT_GE(xh.minCoeff(), -1e-12);
  EXPECT_LE(xh.sum(), 1.0 + 1e-12);
  EXPECT_EQ(mesh.locate(Point(1.5, 0.5)), -1);

  std::ostringstream out;
  write_mesh_ascii(mesh, out);
  std::istringstream in(out.str());
  int V, E, T;
  in >> V >> E >> T;
  EXPECT_EQ(V, 16);
  EXPECT_EQ(E, 33);
  EXPECT_EQ(T, 18);
}

TEST(Mesh, PatternNames) {
  EXPECT_EQ(parse_pattern("alternating"), DiagonalPattern::alternating);
  EXPECT_EQ(to_string(DiagonalPattern::antidiagonal), "antidiagonal");
  EXPECT_THROW(parse_pattern("delaunay"), std::invalid_argument);
}

}  // namespace
}  // namespace hdg
