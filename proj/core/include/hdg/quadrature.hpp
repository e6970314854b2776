// Gauss rules on the reference triangle and the unit interval.

#ifndef HDG_QUADRATURE_HPP
#define HDG_QUADRATURE_HPP

#include <vector>

#include <Eigen/Dense>

namespace hdg {

/// Highest polynomial degree for which rules are generated.
inline constexpr int kMaxQuadratureDegree = 40;

/// Rule on the reference triangle {(0,0),(1,0),(0,1)}; weights sum to 1/2.
struct TriangleRule {
  std::vector<Eigen::Vector2d> points;
  std::vector<double> weights;
  int exact_degree = 0;

  std::size_t size() const noexcept { return weights.size(); }
};

/// Rule on [0,1]; weights sum to 1.
struct EdgeRule {
  std::vector<double> points;
  std::vector<double> weights;
  int exact_degree = 0;

  std::size_t size() const noexcept { return weights.size(); }
};

/// Gauss-Legendre rule with n points on [0,1], exact to degree 2n-1.
EdgeRule gauss_legendre(int n);

/// Exact for polynomials of total degree <= degree. Collapsed (Duffy) tensor
/// product of Gauss-Legendre rules, so all weights are positive and all points
/// interior.
TriangleRule triangle_rule(int degree);

/// Exact for polynomials of degree <= degree on [0,1].
EdgeRule edge_rule(int degree);

}  // namespace hdg

#endif  // HDG_QUADRATURE_HPP
