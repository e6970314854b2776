#include "hdg/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include <Eigen/SparseLU>

namespace hdg {

GlobalSystem assemble(const DiscreteSpaces& spaces, const MethodParams& params, const VectorField& f,
                      const BoundaryData& g) {
  params.validate();
  if (spaces.order() != params.k || spaces.pressure_order() != params.pressure_order()) {
    throw std::invalid_argument("assemble: spaces do not match the method parameters");
  }
  const Mesh& mesh = spaces.mesh();
  const int k = spaces.order();
  const int nb = spaces.velocity_local_dimension();
  const int np = spaces.pressure_local_dimension();

  GlobalSystem sys;
  sys.layout = spaces.layout();
  sys.params = params;
  sys.rhs = Eigen::VectorXd::Zero(sys.layout.total());

  std::vector<Eigen::Triplet<double>> triplets;
  const int nl = nb + 3 * k;
  triplets.reserve(static_cast<std::size_t>(mesh.num_elements()) *
                   static_cast<std::size_t>(nl * nl + 2 * np * nb + np * np));

  std::vector<int> local_to_global(static_cast<std::size_t>(nl));
  for (const Element& K : mesh.elements()) {
    const auto vdofs = spaces.velocity_dofs(K.id);
    for (int j = 0; j < nb; ++j) local_to_global[static_cast<std::size_t>(j)] = sys.layout.velocity_offset() + vdofs[static_cast<std::size_t>(j)];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < k; ++j) local_to_global[static_cast<std::size_t>(nb + i * k + j)] = spaces.trace_dof(K.edges[i], j);
    }

    const Eigen::MatrixXd A = local_a(spaces, K.id, params).matrix();
    for (int r = 0; r < nl; ++r) {
      const int gr = local_to_global[static_cast<std::size_t>(r)];
      if (gr < 0) continue;
      for (int c = 0; c < nl; ++c) {
        const int gc = local_to_global[static_cast<std::size_t>(c)];
        if (gc < 0 || A(r, c) == 0.0) continue;
        triplets.emplace_back(gr, gc, A(r, c));
      }
    }

    const Eigen::MatrixXd B = local_b(spaces, K.id, params);
    for (int r = 0; r < np; ++r) {
      const int gp = spaces.pressure_dof(K.id, r);
      for (int c = 0; c < nb; ++c) {
        if (B(r, c) == 0.0) continue;
        const int gu = local_to_global[static_cast<std::size_t>(c)];
        triplets.emplace_back(gp, gu, B(r, c));
        triplets.emplace_back(gu, gp, B(r, c));
      }
    }

    if (params.variant == Variant::stabilised) {
      const Eigen::MatrixXd S = local_s(spaces, K.id, params);
      for (int r = 0; r < np; ++r) {
        for (int c = 0; c < np; ++c) triplets.emplace_back(spaces.pressure_dof(K.id, r), spaces.pressure_dof(K.id, c), -S(r, c));
      }
    }

    const Eigen::VectorXd F = local_rhs(spaces, K.id, f, params);
    for (int j = 0; j < nb; ++j) sys.rhs[local_to_global[static_cast<std::size_t>(j)]] += F[j];
  }

  for (const Edge& E : mesh.edges()) {
    if (!E.is_boundary) continue;
    const Eigen::VectorXd G = boundary_rhs(spaces, E.id, g, params);
    const auto vdofs = spaces.velocity_dofs(E.elements[0]);
    for (int j = 0; j < nb; ++j) sys.rhs[sys.layout.velocity_offset() + vdofs[static_cast<std::size_t>(j)]] += G[j];
  }

  sys.matrix.resize(sys.layout.total(), sys.layout.total());
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  sys.matrix.makeCompressed();
  return sys;
}

Eigen::VectorXd apply_operator(const GlobalSystem& system, const Eigen::VectorXd& x) {
  if (x.size() != system.matrix.cols()) {
    throw std::invalid_argument("apply_operator: vector of size " + std::to_string(x.size()) +
                                " does not match system of size " + std::to_string(system.matrix.cols()));
  }
  return system.matrix * x;
}

double symmetry_defect(const SparseMatrix& matrix) {
  const SparseMatrix transposed = matrix.transpose();
  const SparseMatrix diff = matrix - transposed;
  double max_entry = 0.0, max_diff = 0.0;
  for (int c = 0; c < matrix.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(matrix, c); it; ++it) max_entry = std::max(max_entry, std::abs(it.value()));
  }
  for (int c = 0; c < diff.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(diff, c); it; ++it) max_diff = std::max(max_diff, std::abs(it.value()));
  }
  return max_entry > 0.0 ? max_diff / max_entry : 0.0;
}

void write_coordinate(const SparseMatrix& matrix, std::ostream& out) {
  out.precision(17);
  for (int c = 0; c < matrix.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(matrix, c); it; ++it) {
      out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
}

SolutionFields SolutionFields::from_vector(const DiscreteSpaces& spaces, const Eigen::VectorXd& x) {
  const DofLayout& L = spaces.layout();
  if (x.size() != L.total()) throw std::invalid_argument("SolutionFields: vector size does not match layout");
  SolutionFields s;
  s.spaces = &spaces;
  s.velocity = x.segment(L.velocity_offset(), L.n_velocity);
  s.trace = x.segment(L.trace_offset(), L.n_trace);
  s.pressure = x.segment(L.pressure_offset(), L.n_pressure);
  return s;
}

Eigen::VectorXd SolutionFields::to_vector() const {
  Eigen::VectorXd x(velocity.size() + trace.size() + pressure.size());
  x << velocity, trace, pressure;
  return x;
}

namespace {
std::span<const double> view(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}
}  // namespace

Eigen::Vector2d SolutionFields::velocity_at(int element, const Point& x) const {
  return spaces->velocity_at(view(velocity), element, x);
}

Eigen::Matrix2d SolutionFields::velocity_gradient_at(int element, const Point& x) const {
  return spaces->velocity_gradient_at(view(velocity), element, x);
}

double SolutionFields::pressure_at(int element, const Point& x) const {
  return spaces->pressure_at(view(pressure), element, x);
}

double SolutionFields::trace_at(int edge, double s) const { return spaces->trace_at(view(trace), edge, s); }

SolutionFields solve(const GlobalSystem& system, const DiscreteSpaces& spaces) {
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(system.matrix);
  lu.factorize(system.matrix);
  if (lu.info() != Eigen::Success) {
    throw SolverError("sparse LU factorisation failed (n = " + std::to_string(system.size()) +
                      "): " + lu.lastErrorMessage());
  }
  Eigen::VectorXd x = lu.solve(system.rhs);
  if (lu.info() != Eigen::Success) throw SolverError("sparse LU solve failed: " + lu.lastErrorMessage());

  const double rhs_norm = system.rhs.norm();
  Eigen::VectorXd r = system.rhs - system.matrix * x;
  for (int step = 0; step < 2 && r.norm() > kSolveRelativeResidual * rhs_norm; ++step) {
    x += lu.solve(r);
    r = system.rhs - system.matrix * x;
  }
  const double res = r.norm();
  if (!x.allFinite() || res > kSolveRelativeResidual * rhs_norm) {
    throw SolverError("residual check failed: |Mx - b| = " + std::to_string(res) +
                      ", |b| = " + std::to_string(rhs_norm));
  }
  SolutionFields sol = SolutionFields::from_vector(spaces, x);
  sol.relative_residual = rhs_norm > 0.0 ? res / rhs_norm : res;
  return sol;
}

}  // namespace hdg
