// Global saddle-point system
//
//   [ A    B^T ] [u, u~]   [F + G]
//   [ B    -S  ] [  p  ] = [  0  ]
//
// with unknowns ordered (velocity, trace, pressure), and its direct solution.

#ifndef HDG_ASSEMBLY_HPP
#define HDG_ASSEMBLY_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "hdg/fe_spaces.hpp"
#include "hdg/forms.hpp"

namespace hdg {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Raised when factorisation fails or the residual check does not hold.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalSystem {
  SparseMatrix matrix;  ///< compressed column storage
  Eigen::VectorXd rhs;
  DofLayout layout;
  MethodParams params;

  int size() const noexcept { return layout.total(); }
};

/// Requires spaces.pressure_order() == params.pressure_order().
GlobalSystem assemble(const DiscreteSpaces& spaces, const MethodParams& params, const VectorField& f,
                      const BoundaryData& g);

/// M x. Throws std::invalid_argument on a size mismatch.
Eigen::VectorXd apply_operator(const GlobalSystem& system, const Eigen::VectorXd& x);

/// max|M - M^T| / max|M|.
double symmetry_defect(const SparseMatrix& matrix);

/// Coordinate dump, one "row col value" triple per line, 0-based.
void write_coordinate(const SparseMatrix& matrix, std::ostream& out);

/// Discrete solution (u_h, u~_h, p_h) as coefficient blocks.
struct SolutionFields {
  const DiscreteSpaces* spaces = nullptr;
  Eigen::VectorXd velocity;
  Eigen::VectorXd trace;
  Eigen::VectorXd pressure;
  double relative_residual = 0.0;

  static SolutionFields from_vector(const DiscreteSpaces& spaces, const Eigen::VectorXd& x);
  Eigen::VectorXd to_vector() const;

  Eigen::Vector2d velocity_at(int element, const Point& x) const;
  Eigen::Matrix2d velocity_gradient_at(int element, const Point& x) const;
  double pressure_at(int element, const Point& x) const;
  double trace_at(int edge, double s) const;
};

/// Sparse LU with a fill-reducing column ordering; up to two steps of iterative
/// refinement if needed. Guarantees |Mx - b| <= 1e-8 |b| or throws SolverError.
SolutionFields solve(const GlobalSystem& system, const DiscreteSpaces& spaces);

inline constexpr double kSolveRelativeResidual = 1e-8;

}  // namespace hdg

#endif  // HDG_ASSEMBLY_HPP
