#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hdg/manufactured.hpp"

namespace hdg {
namespace {

std::vector<Point> random_points(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<Point> pts(static_cast<std::size_t>(n));
  for (Point& p : pts) p = Point(U(rng), U(rng));
  return pts;
}

TEST(CurlSolution, DivergenceFree) {
  const CurlSolution u;
  for (const Point& x : random_points(1000, 1)) EXPECT_LT(std::abs(u.divergence(x)), 1e-14);
}

TEST(CurlSolution, VanishesOnBoundary) {
  const CurlSolution u;
  for (double s : {0.0, 0.13, 0.5, 0.77, 1.0}) {
    for (const Point& x : {Point(s, 0), Point(s, 1), Point(0, s), Point(1, s)}) {
      EXPECT_LT(u.velocity(x).norm(), 1e-15);
    }
  }
}

// Relative mismatch between an analytic value and its central difference.
double mismatch(double analytic, double fd, double scale) { return std::abs(analytic - fd) / std::max(scale, 1.0); }

TEST(CurlSolution, DerivativesMatchFiniteDifferences) {
  const CurlSolution u;
  const double h = 1e-5;
  const Point ex(h, 0), ey(0, h);
  for (const Point& x : random_points(200, 2)) {
    // velocity is the curl of the stream function
    const Eigen::Vector2d v = u.velocity(x);
    const double dpsi_dy = (u.stream_function(x + ey) - u.stream_function(x - ey)) / (2 * h);
    const double dpsi_dx = (u.stream_function(x + ex) - u.stream_function(x - ex)) / (2 * h);
    EXPECT_LT(mismatch(v.x(), dpsi_dy, v.norm()), 1e-7);
    EXPECT_LT(mismatch(v.y(), -dpsi_dx, v.norm()), 1e-7);

    const Eigen::Matrix2d G = u.velocity_gradient(x);
    const Eigen::Vector2d gx = (u.velocity(x + ex) - u.velocity(x - ex)) / (2 * h);
    const Eigen::Vector2d gy = (u.velocity(x + ey) - u.velocity(x - ey)) / (2 * h);
    const double gscale = G.norm();
    EXPECT_LT(mismatch(G(0, 0), gx.x(), gscale), 1e-7);
    EXPECT_LT(mismatch(G(1, 0), gx.y(), gscale), 1e-7);
    EXPECT_LT(mismatch(G(0, 1), gy.x(), gscale), 1e-7);
    EXPECT_LT(mismatch(G(1, 1), gy.y(), gscale), 1e-7);

    Eigen::Vector2d lap = Eigen::Vector2d::Zero();
    lap += (u.velocity_gradient(x + ex).col(0) - u.velocity_gradient(x - ex).col(0)) / (2 * h);
    lap += (u.velocity_gradient(x + ey).col(1) - u.velocity_gradient(x - ey).col(1)) / (2 * h);
    const Eigen::Vector2d L = u.velocity_laplacian(x);
    EXPECT_LT(mismatch(L.x(), lap.x(), L.norm()), 1e-7);
    EXPECT_LT(mismatch(L.y(), lap.y(), L.norm()), 1e-7);

    const Eigen::Vector2d gp = u.pressure_gradient(x);
    const double px = (u.pressure(x + ex) - u.pressure(x - ex)) / (2 * h);
    const double py = (u.pressure(x + ey) - u.pressure(x - ey)) / (2 * h);
    EXPECT_LT(mismatch(gp.x(), px, gp.norm()), 1e-7);
    EXPECT_LT(mismatch(gp.y(), py, gp.norm()), 1e-7);

    for (double nu : {1.0, 1e-2}) {
      const Eigen::Vector2d f = u.forcing(x, nu);
      const Eigen::Vector2d fd = -nu * lap + Eigen::Vector2d(px, py);
      EXPECT_LT((f - fd).norm() / std::max(f.norm(), 1.0), 1e-7);
    }
  }
}

TEST(CurlSolution, ProfileDerivatives) {
  const double h = 1e-5;
  for (double s : {0.05, 0.3, 0.5, 0.81, 0.97}) {
    const auto a = CurlSolution::profile(s);
    const auto p = CurlSolution::profile(s + h), m = CurlSolution::profile(s - h);
    for (int d = 0; d < 3; ++d) EXPECT_NEAR(a[d + 1], (p[d] - m[d]) / (2 * h), 1e-8 * std::max(1.0, std::abs(a[d + 1])));
  }
  const auto a0 = CurlSolution::profile(0.0), a1 = CurlSolution::profile(1.0);
  EXPECT_EQ(a0[0], 0.0);
  EXPECT_EQ(a0[1], 0.0);
  EXPECT_EQ(a1[0], 0.0);
  EXPECT_EQ(a1[1], 0.0);
}

SolutionFields zero_fields(const DiscreteSpaces& spaces) {
  const Eigen::VectorXd x = Eigen::VectorXd::Zero(spaces.layout().total());
  return SolutionFields::from_vector(spaces, x);
}

TEST(Errors, ZeroSolutionPressureNormMatchesTensorGauss) {
  const Mesh mesh = mesh_for_level(3);
  const DiscreteSpaces spaces(mesh, 1, 1);
  const CurlSolution exact;
  MethodParams p;
  const ErrorReport r = compute_errors(spaces, zero_fields(spaces), exact, p);
  // tensor Gauss on the unit square, independent of the triangle rules
  const EdgeRule g = gauss_legendre(30);
  double p2 = 0.0, u2 = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      const Point x(g.points[i], g.points[j]);
      const double w = g.weights[i] * g.weights[j];
      p2 += w * std::pow(exact.pressure(x), 2);
      u2 += w * exact.velocity(x).squaredNorm();
    }
  }
  EXPECT_NEAR(r.pressure_l2, std::sqrt(p2), 1e-8);
  EXPECT_NEAR(r.velocity_l2, std::sqrt(u2), 1e-8);
  EXPECT_GE(r.triple_full, r.triple);
}

TEST(Errors, ExactConstantPressureHasZeroError) {
  const Mesh mesh = mesh_for_level(2);
  const DiscreteSpaces spaces(mesh, 1, 0);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(spaces.layout().total());
  x.tail(spaces.layout().n_pressure).setConstant(2.5);
  MethodParams p;
  const ErrorReport r = compute_errors(spaces, SolutionFields::from_vector(spaces, x), ConstantPressure(2.5), p);
  EXPECT_EQ(r.velocity_l2, 0.0);
  EXPECT_EQ(r.triple, 0.0);
  EXPECT_LT(r.pressure_l2, 1e-15);
}

// Interpolant (Pi u, Phi(u . t), Psi p) measured in all norms.
ErrorReport interpolation_errors(int level, int k) {
  const Mesh mesh = mesh_for_level(level);
  const DiscreteSpaces spaces(mesh, k, k - 1);
  const CurlSolution exact;
  MethodParams params;
  params.k = k;
  params.variant = Variant::baseline;
  SolutionFields sol = zero_fields(spaces);
  sol.velocity = bdm_interpolate(spaces, [&](const Point& x) { return exact.velocity(x); });
  const EdgeRule er = edge_rule(8);
  for (const Edge& E : mesh.edges()) {
    if (E.is_boundary) continue;
    std::vector<double> v(er.size());
    for (std::size_t q = 0; q < er.size(); ++q) v[q] = exact.velocity(E.point_at(er.points[q], mesh.vertices())).dot(E.tangent);
    const Eigen::VectorXd c = phi_projection(k - 1, er, v);
    for (int j = 0; j < k; ++j) sol.trace[spaces.trace_dof(E.id, j) - spaces.layout().trace_offset()] = c[j];
  }
  const TriangleRule tr = triangle_rule(8);
  const int np = spaces.pressure_local_dimension();
  for (const Element& K : mesh.elements()) {
    const AffineMap F = affine_map(mesh, K);
    std::vector<double> v(tr.size());
    for (std::size_t q = 0; q < tr.size(); ++q) v[q] = exact.pressure(F(tr.points[q]));
    sol.pressure.segment(K.id * np, np) = psi_projection(k - 1, mesh, K, tr, v);
  }
  return compute_errors(spaces, sol, exact, params);
}

TEST(Errors, InterpolationRates) {
  for (int k = kMinBdmOrder; k <= kMaxBdmOrder; ++k) {
    const ErrorReport a = interpolation_errors(4, k), b = interpolation_errors(5, k);
    EXPECT_NEAR(std::log2(a.velocity_l2 / b.velocity_l2), k + 1, 0.15) << "k " << k;
    EXPECT_NEAR(std::log2(a.velocity_h1 / b.velocity_h1), k, 0.15) << "k " << k;
    EXPECT_NEAR(std::log2(a.pressure_l2 / b.pressure_l2), k, 0.1) << "k " << k;
    EXPECT_NEAR(std::log2(a.triple / b.triple), k, 0.15) << "k " << k;
  }
}

TEST(Eoc, Examples) {
  const std::vector<double> e{0.04, 0.01};
  const auto r = eoc(e);
  EXPECT_FALSE(r[0].has_value());
  EXPECT_DOUBLE_EQ(*r[1], 2.0);

  const std::vector<double> q1{0.000392, 0.000139};
  EXPECT_NEAR(*eoc(q1)[1], 1.496, 5e-4);
  const std::vector<double> q0{0.002671, 0.001336};
  EXPECT_NEAR(*eoc(q0)[1], 1.00, 5e-3);

  const std::vector<double> bad{0.1, 0.0, std::nan("")};
  const auto rb = eoc(bad);
  EXPECT_FALSE(rb[1].has_value());
  EXPECT_FALSE(rb[2].has_value());
}

}  // namespace
}  // namespace hdg
