// Small fixtures shared by the unit tests.

#ifndef HDG_TESTS_SUPPORT_HPP
#define HDG_TESTS_SUPPORT_HPP

#include <random>

#include "hdg/mesh.hpp"

namespace hdg::testing {

inline Mesh single_triangle(const Point& a, const Point& b, const Point& c) {
  return Mesh({{0, a}, {1, b}, {2, c}}, {Element{.vertices = {0, 1, 2}}});
}

inline Mesh reference_triangle() { return single_triangle(Point(0, 0), Point(1, 0), Point(0, 1)); }

/// Counterclockwise triangle with vertices in [-1,1]^2 and area >= 0.1.
inline Mesh random_triangle(std::mt19937& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (;;) {
    Point a(U(rng), U(rng)), b(U(rng), U(rng)), c(U(rng), U(rng));
    const double det = (b - a).x() * (c - a).y() - (c - a).x() * (b - a).y();
    if (std::abs(det) < 0.2) continue;
    if (det < 0) std::swap(b, c);
    return single_triangle(a, b, c);
  }
}

}  // namespace hdg::testing

#endif  // HDG_TESTS_SUPPORT_HPP
