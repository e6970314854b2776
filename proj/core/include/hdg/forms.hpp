// Element and edge contributions of the hybrid DG Stokes forms:
//
//   a((w,w~),(v,v~)) = sum_K  nu (grad w, grad v)_K
//                    - nu <(d_n w)_t, v_t - v~>_dK
//                    + eps nu <w_t - w~, (d_n v)_t>_dK
//                    + nu tau/h_K <Phi(w_t - w~), Phi(v_t - v~)>_dK
//   b((v,v~),q)      = -sum_K (q, div v)_K
//   s(p,q)           = 1/nu (p - Psi p, q - Psi q)
//
// with Phi the L2(E) projection onto P_{k-1}(E) and Psi the L2(K) projection
// onto P_{k-1}(K).

#ifndef HDG_FORMS_HPP
#define HDG_FORMS_HPP

#include <functional>
#include <string_view>

#include <Eigen/Dense>

#include "hdg/fe_spaces.hpp"

namespace hdg {

enum class Variant {
  stabilised,  ///< pressure order k, with s(.,.)
  baseline     ///< pressure order k-1, inf-sup stable, no s(.,.)
};

Variant parse_variant(std::string_view name);
std::string_view to_string(Variant variant);

struct MethodParams {
  double nu = 1.0;
  int epsilon = -1;  ///< -1 symmetric, +1 non-symmetric
  double tau = 6.0;
  int k = 1;
  Variant variant = Variant::stabilised;
  int volume_degree = 8;
  int edge_degree = 6;

  int pressure_order() const noexcept { return variant == Variant::stabilised ? k : k - 1; }
  /// Throws std::invalid_argument on nu <= 0, tau <= 0, eps not in {-1,1} or unsupported k.
  void validate() const;
};

/// Right-hand side data on the boundary: g(x, outward normal).
using BoundaryData = std::function<double(const Point&, const Point&)>;

/// Local a-matrix over the element's unknowns ordered as
/// [BDM functions (global signs applied) | trace functions of local edge 0, 1, 2].
/// Trace columns of boundary edges are identically zero.
struct LocalA {
  Eigen::MatrixXd standard;  ///< volume, consistency and adjoint-consistency terms
  Eigen::MatrixXd penalty;   ///< the tau/h_K projected-jump term
  int n_velocity = 0;

  Eigen::MatrixXd matrix() const { return standard + penalty; }
  Eigen::Index size() const { return standard.rows(); }
};

LocalA local_a(const DiscreteSpaces& spaces, int element, const MethodParams& params);

/// B block: rows pressure functions, columns BDM functions; entries -(q_i, div v_j)_K.
Eigen::MatrixXd local_b(const DiscreteSpaces& spaces, int element, const MethodParams& params);

/// Stabiliser block 1/nu (M_k - C^T M_{k-1}^{-1} C). Zero for the baseline variant.
Eigen::MatrixXd local_s(const DiscreteSpaces& spaces, int element, const MethodParams& params);

/// (f, v_j)_K for the element's BDM functions.
Eigen::VectorXd local_rhs(const DiscreteSpaces& spaces, int element, const VectorField& f,
                          const MethodParams& params);

/// <g, v_j . n>_E on a boundary edge, for the BDM functions of its element.
Eigen::VectorXd boundary_rhs(const DiscreteSpaces& spaces, int edge, const BoundaryData& g,
                             const MethodParams& params);

}  // namespace hdg

#endif  // HDG_FORMS_HPP
