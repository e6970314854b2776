// Exact solutions of the Stokes problem with tangential-velocity / normal-flux
// boundary conditions, and the error norms used in convergence studies.

#ifndef HDG_MANUFACTURED_HPP
#define HDG_MANUFACTURED_HPP

#include <array>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hdg/assembly.hpp"

namespace hdg {

/// Smooth velocity/pressure pair with analytic derivatives.
class ExactSolution {
 public:
  virtual ~ExactSolution() = default;

  virtual Eigen::Vector2d velocity(const Point& x) const = 0;
  /// G(r, c) = d u_r / d x_c
  virtual Eigen::Matrix2d velocity_gradient(const Point& x) const = 0;
  virtual Eigen::Vector2d velocity_laplacian(const Point& x) const = 0;
  virtual double pressure(const Point& x) const = 0;
  virtual Eigen::Vector2d pressure_gradient(const Point& x) const = 0;

  double divergence(const Point& x) const { return velocity_gradient(x).trace(); }
  /// f = -nu lap(u) + grad(p)
  Eigen::Vector2d forcing(const Point& x, double nu) const {
    return -nu * velocity_laplacian(x) + pressure_gradient(x);
  }
  /// sigma_nn = nu n . (grad(u) n) - p
  double normal_stress(const Point& x, const Point& n, double nu) const {
    return nu * n.dot(velocity_gradient(x) * n) - pressure(x);
  }

  VectorField forcing_field(double nu) const;
  BoundaryData normal_stress_field(double nu) const;
};

/// u = curl(phi) = (d phi/dy, -d phi/dx) with
/// phi = (1 - cos((1-x)^2)) sin(x^2) sin(y^2) (1 - cos((1-y)^2)), and p = tan(xy).
/// phi factors as a(x) a(y), a(s) = (1 - cos((1-s)^2)) sin(s^2); a and a'
/// vanish at s = 0 and s = 1, so u = 0 on the whole boundary of the unit square.
class CurlSolution final : public ExactSolution {
 public:
  Eigen::Vector2d velocity(const Point& x) const override;
  Eigen::Matrix2d velocity_gradient(const Point& x) const override;
  Eigen::Vector2d velocity_laplacian(const Point& x) const override;
  double pressure(const Point& x) const override;
  Eigen::Vector2d pressure_gradient(const Point& x) const override;

  /// Stream function phi.
  double stream_function(const Point& x) const;
  /// a(s) and its first three derivatives.
  static std::array<double, 4> profile(double s);
};

/// u = 0, p = c.
class ConstantPressure final : public ExactSolution {
 public:
  explicit ConstantPressure(double c) : c_(c) {}
  Eigen::Vector2d velocity(const Point&) const override { return Eigen::Vector2d::Zero(); }
  Eigen::Matrix2d velocity_gradient(const Point&) const override { return Eigen::Matrix2d::Zero(); }
  Eigen::Vector2d velocity_laplacian(const Point&) const override { return Eigen::Vector2d::Zero(); }
  double pressure(const Point&) const override { return c_; }
  Eigen::Vector2d pressure_gradient(const Point&) const override { return Eigen::Vector2d::Zero(); }

 private:
  double c_;
};

struct ErrorReport {
  double h = 0.0;
  int n_dofs = 0;
  double velocity_l2 = 0.0;    ///< |u - u_h|
  double pressure_l2 = 0.0;    ///< |p - p_h|
  double velocity_h1 = 0.0;    ///< broken H1 seminorm of u - u_h
  double triple = 0.0;         ///< |||(e_u, e_u~)|||
  double triple_full = 0.0;    ///< |||(e_u, e_u~)||| + |e_p| / sqrt(nu)
};

/// All norms by quadrature with params.volume_degree / params.edge_degree rules.
/// The exact multiplier is u . t on every edge.
ErrorReport compute_errors(const DiscreteSpaces& spaces, const SolutionFields& solution, const ExactSolution& exact,
                           const MethodParams& params);

/// log2(e_{l-1} / e_l); the first entry and any entry involving a non-positive
/// or non-finite error are undefined.
std::vector<std::optional<double>> eoc(std::span<const double> errors);

}  // namespace hdg

#endif  // HDG_MANUFACTURED_HPP
