// Finite element spaces: BDM velocities, discontinuous pressures, and
// edge multipliers for the tangential velocity trace.

#ifndef HDG_FE_SPACES_HPP
#define HDG_FE_SPACES_HPP

#include <array>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hdg/mesh.hpp"
#include "hdg/quadrature.hpp"

namespace hdg {

/// Orders of the velocity space that are implemented.
inline constexpr int kMinBdmOrder = 1;
inline constexpr int kMaxBdmOrder = 2;

using VectorField = std::function<Eigen::Vector2d(const Point&)>;
using ScalarField = std::function<double(const Point&)>;

/// Shifted Legendre polynomial of degree j on [0,1].
double legendre(int j, double s);

constexpr int bdm_dimension(int k) { return (k + 1) * (k + 2); }
constexpr int scalar_dimension(int m) { return (m + 1) * (m + 2) / 2; }

/// Values, gradients and divergences of a set of vector shape functions at a
/// batch of points. Rows are points, columns are shape functions.
struct LocalBasisEval {
  Eigen::MatrixXd vx, vy;
  Eigen::MatrixXd dxx, dxy, dyx, dyy;  ///< d(v_x)/dx, d(v_x)/dy, d(v_y)/dx, d(v_y)/dy
  Eigen::MatrixXd div;

  Eigen::Index num_points() const { return vx.rows(); }
  Eigen::Index num_functions() const { return vx.cols(); }
  Eigen::Vector2d value(Eigen::Index q, Eigen::Index j) const { return {vx(q, j), vy(q, j)}; }
  Eigen::Matrix2d gradient(Eigen::Index q, Eigen::Index j) const {
    Eigen::Matrix2d G;
    G << dxx(q, j), dxy(q, j), dyx(q, j), dyy(q, j);
    return G;
  }
  /// Multiplies column j by signs[j].
  void apply_signs(std::span<const double> signs);
};

/// BDM_k on the reference triangle, represented in the vector monomial basis.
///
/// Local dof ordering: for local edge i = 0,1,2 the k+1 normal moments
///   int_E (v . n) L_j(t) ds,  j = 0..k,
/// with the outward normal and t running from vertex (i+1)%3 to (i+2)%3;
/// then, for k >= 2, the interior moments int_K v . grad(q) for monomials q of
/// degree 1..k-1 followed by int_K v . curl(b_K q) for monomials q of degree
/// <= k-2, where b_K is the cubic bubble. The contravariant Piola map preserves
/// all of these, so the mapped basis is dual to the same functionals on the
/// physical element.
class BdmReference {
 public:
  explicit BdmReference(int k);

  int order() const noexcept { return k_; }
  int dimension() const noexcept { return bdm_dimension(k_); }
  int dofs_per_edge() const noexcept { return k_ + 1; }
  int interior_dofs() const noexcept { return k_ * k_ - 1; }

  /// Coefficients of the dual basis in the vector monomial basis
  /// (column j is shape function j).
  const Eigen::MatrixXd& coefficients() const noexcept { return coefficients_; }

  /// Shape function values and reference gradients at reference points.
  LocalBasisEval evaluate(std::span<const Point> ref_points) const;

  /// Reference dof functionals applied to a reference field.
  Eigen::VectorXd apply_functionals(const VectorField& vhat) const;

  /// Weight fields of the interior moments at a reference point (2 x interior_dofs()).
  Eigen::MatrixXd interior_fields(const Point& xhat) const;

  /// Reference triangle vertex i and the outward unit normal of reference edge i.
  static Point reference_vertex(int i);
  static Point reference_normal(int i);

 private:
  int k_;
  std::vector<std::array<int, 3>> monomials_;  // {component, a, b}
  Eigen::MatrixXd coefficients_;
};

/// Piola-mapped local BDM basis on K (no global sign convention applied).
LocalBasisEval bdm_local_basis(const BdmReference& ref, const AffineMap& F,
                               std::span<const Point> ref_points);
LocalBasisEval bdm_local_basis(int k, const Mesh& mesh, const Element& K,
                               std::span<const Point> ref_points);

/// Scaled monomials ((x-xc)/h)^a ((y-yc)/h)^b, a+b <= m, ordered by total degree,
/// so the first scalar_dimension(m-1) functions span P_{m-1}.
struct ScalarBasis {
  int order = 0;
  Point centroid = Point::Zero();
  double scale = 1.0;

  ScalarBasis(int m, const Mesh& mesh, const Element& K);
  int dimension() const noexcept { return scalar_dimension(order); }
  Eigen::VectorXd evaluate(const Point& x) const;
  /// rows = points
  Eigen::MatrixXd evaluate(std::span<const Point> xs) const;
};

/// L2(K) projection onto P_m(K) of a function sampled at the physical images
/// of rule's points. Returns coefficients in ScalarBasis(m, mesh, K).
Eigen::VectorXd psi_projection(int m, const Mesh& mesh, const Element& K, const TriangleRule& rule,
                               std::span<const double> values);

/// L2(E) projection onto P_m(E) of a function sampled at rule's points along
/// the global edge parametrisation. Returns coefficients in L_0..L_m.
Eigen::VectorXd phi_projection(int m, const EdgeRule& rule, std::span<const double> values);

/// Offsets of the (velocity, trace, pressure) unknown blocks.
struct DofLayout {
  int n_velocity = 0;
  int n_trace = 0;
  int n_pressure = 0;

  int velocity_offset() const noexcept { return 0; }
  int trace_offset() const noexcept { return n_velocity; }
  int pressure_offset() const noexcept { return n_velocity + n_trace; }
  int total() const noexcept { return n_velocity + n_trace + n_pressure; }
};

/// Global numbering for BDM_k x M_{h,0}^{k-1} x Q_h^m on one mesh.
///
/// Edge dofs of BDM are moments against the global edge normal and the global
/// edge parametrisation; element-local functions pick up the sign
/// sigma_{K,E} * direction^j. Trace dofs live on interior edges only and
/// approximate u . t_E with t_E the global edge tangent. The mesh must outlive
/// this object.
class DiscreteSpaces {
 public:
  DiscreteSpaces(const Mesh& mesh, int k, int pressure_order);

  const Mesh& mesh() const noexcept { return *mesh_; }
  int order() const noexcept { return reference_.order(); }
  int pressure_order() const noexcept { return pressure_order_; }
  const BdmReference& bdm() const noexcept { return reference_; }
  const DofLayout& layout() const noexcept { return layout_; }

  int velocity_local_dimension() const noexcept { return reference_.dimension(); }
  int trace_local_dimension() const noexcept { return order(); }
  int pressure_local_dimension() const noexcept { return scalar_dimension(pressure_order_); }

  /// Global velocity indices (in [0, n_velocity)) of K's local BDM functions.
  std::span<const int> velocity_dofs(int element) const;
  std::span<const double> velocity_signs(int element) const;
  /// Index into the global system of trace function j on edge, or -1 on the boundary.
  int trace_dof(int edge, int j) const;
  /// Index into the global system of pressure function i on element.
  int pressure_dof(int element, int i) const {
    return layout_.pressure_offset() + element * pressure_local_dimension() + i;
  }

  /// Piola-mapped basis of K with the global sign convention applied.
  LocalBasisEval velocity_basis(int element, std::span<const Point> ref_points) const;

  /// u_h(x) for global velocity coefficients (length n_velocity), x in element.
  Eigen::Vector2d velocity_at(std::span<const double> coeffs, int element, const Point& x) const;
  Eigen::Matrix2d velocity_gradient_at(std::span<const double> coeffs, int element, const Point& x) const;
  /// p_h(x) for global pressure coefficients (length n_pressure).
  double pressure_at(std::span<const double> coeffs, int element, const Point& x) const;
  /// Multiplier value on edge at global parameter s (length n_trace coefficients).
  double trace_at(std::span<const double> coeffs, int edge, double s) const;

 private:
  const Mesh* mesh_;
  BdmReference reference_;
  int pressure_order_;
  DofLayout layout_;
  std::vector<int> velocity_dofs_;
  std::vector<double> velocity_signs_;
  std::vector<int> trace_index_;  // per edge, -1 on the boundary
};

/// Canonical BDM interpolant: edge moments of u against the global normal,
/// interior moments of the pulled-back field. Returns n_velocity coefficients.
Eigen::VectorXd bdm_interpolate(const DiscreteSpaces& spaces, const VectorField& u,
                                int volume_degree = 8, int edge_degree = 6);

}  // namespace hdg

#endif  // HDG_FE_SPACES_HPP
