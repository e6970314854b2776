#include "hdg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hdg {

namespace {

void check_degree(int degree, const char* what) {
  if (degree < 0 || degree > kMaxQuadratureDegree) {
    throw std::invalid_argument(std::string(what) + ": degree " + std::to_string(degree) +
                                " outside supported range [0, " +
                                std::to_string(kMaxQuadratureDegree) + "]");
  }
}

}  // namespace

EdgeRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  EdgeRule rule;
  rule.points.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  rule.exact_degree = 2 * n - 1;

  // Newton iteration on P_n over [-1,1], then map to [0,1].
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.points[lo] = 0.5 * (1.0 - x);
    rule.points[hi] = 0.5 * (1.0 + x);
    rule.weights[lo] = 0.5 * w;
    rule.weights[hi] = 0.5 * w;
  }
  if (n % 2 == 1) rule.points[static_cast<std::size_t>(n / 2)] = 0.5;
  return rule;
}

EdgeRule edge_rule(int degree) {
  check_degree(degree, "edge_rule");
  return gauss_legendre(degree / 2 + 1);
}

TriangleRule triangle_rule(int degree) {
  check_degree(degree, "triangle_rule");
  // x = xi (1 - eta), y = eta, Jacobian (1 - eta): degree+1 in eta.
  const EdgeRule line = gauss_legendre((degree + 3) / 2);
  TriangleRule rule;
  rule.exact_degree = degree;
  rule.points.reserve(line.size() * line.size());
  rule.weights.reserve(line.size() * line.size());
  for (std::size_t j = 0; j < line.size(); ++j) {
    const double eta = line.points[j];
    for (std::size_t i = 0; i < line.size(); ++i) {
      const double xi = line.points[i];
      rule.points.emplace_back(xi * (1.0 - eta), eta);
      rule.weights.push_back(line.weights[i] * line.weights[j] * (1.0 - eta));
    }
  }
  return rule;
}

}  // namespace hdg
