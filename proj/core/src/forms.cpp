#include "hdg/forms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdg {

Variant parse_variant(std::string_view name) {
  if (name == "stabilised" || name == "stabilized") return Variant::stabilised;
  if (name == "baseline") return Variant::baseline;
  throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

std::string_view to_string(Variant variant) {
  return variant == Variant::stabilised ? "stabilised" : "baseline";
}

void MethodParams::validate() const {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw std::invalid_argument("nu must be positive");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be positive");
  if (epsilon != -1 && epsilon != 1) throw std::invalid_argument("epsilon must be -1 or 1");
  if (k < kMinBdmOrder || k > kMaxBdmOrder) {
    throw std::invalid_argument("k = " + std::to_string(k) + " is not implemented");
  }
}

namespace {

struct EdgeSamples {
  std::vector<double> s;        // global parameter
  std::vector<double> weights;  // including edge length
  std::vector<Point> ref;       // reference coordinates in the element
  std::vector<Point> phys;
};

EdgeSamples sample_edge(const Mesh& mesh, const AffineMap& F, const Edge& E, const EdgeRule& rule) {
  EdgeSamples out;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Point x = E.point_at(rule.points[q], mesh.vertices());
    out.s.push_back(rule.points[q]);
    out.weights.push_back(rule.weights[q] * E.length);
    out.phys.push_back(x);
    out.ref.push_back(F.to_reference(x));
  }
  return out;
}

}  // namespace

LocalA local_a(const DiscreteSpaces& spaces, int element, const MethodParams& params) {
  const Mesh& mesh = spaces.mesh();
  const Element& K = mesh.element(element);
  const AffineMap F = affine_map(mesh, K);
  const int k = spaces.order();
  const int nb = spaces.velocity_local_dimension();
  const int nl = nb + 3 * k;
  const double nu = params.nu;

  LocalA out;
  out.n_velocity = nb;
  out.standard = Eigen::MatrixXd::Zero(nl, nl);
  out.penalty = Eigen::MatrixXd::Zero(nl, nl);

  const TriangleRule trule = triangle_rule(params.volume_degree);
  const LocalBasisEval vol = spaces.velocity_basis(element, trule.points);
  for (std::size_t q = 0; q < trule.size(); ++q) {
    const auto qi = static_cast<Eigen::Index>(q);
    const double w = trule.weights[q] * F.det * nu;
    auto& A = out.standard;
    A.topLeftCorner(nb, nb).noalias() +=
        w * (vol.dxx.row(qi).transpose() * vol.dxx.row(qi) + vol.dxy.row(qi).transpose() * vol.dxy.row(qi) +
             vol.dyx.row(qi).transpose() * vol.dyx.row(qi) + vol.dyy.row(qi).transpose() * vol.dyy.row(qi));
  }

  const EdgeRule erule = edge_rule(params.edge_degree);
  const double penalty_scale = nu * params.tau / K.diameter;
  for (int i = 0; i < 3; ++i) {
    const Edge& E = mesh.edge(K.edges[i]);
    const double sigma = K.normal_sign[i];
    const Point n = sigma * E.normal;
    const Point t = sigma * E.tangent;
    const EdgeSamples es = sample_edge(mesh, F, E, erule);
    const LocalBasisEval eb = spaces.velocity_basis(element, es.ref);

    // Per quadrature point: jump (v_t - v~) and (d_n v)_t for every local unknown.
    Eigen::MatrixXd jump = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(erule.size()), nl);
    Eigen::MatrixXd dnt = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(erule.size()), nl);
    for (std::size_t q = 0; q < erule.size(); ++q) {
      const auto qi = static_cast<Eigen::Index>(q);
      for (int j = 0; j < nb; ++j) {
        jump(qi, j) = eb.value(qi, j).dot(t);
        dnt(qi, j) = t.dot(eb.gradient(qi, j) * n);
      }
      if (!E.is_boundary) {
        // v~ restricted to K measures the tangential trace along t = sigma t_E.
        for (int j = 0; j < k; ++j) jump(qi, nb + i * k + j) = -sigma * legendre(j, es.s[q]);
      }
    }

    for (std::size_t q = 0; q < erule.size(); ++q) {
      const auto qi = static_cast<Eigen::Index>(q);
      const double w = es.weights[q] * nu;
      // row = test, column = trial
      out.standard.noalias() -= w * jump.row(qi).transpose() * dnt.row(qi);
      out.standard.noalias() += params.epsilon * w * dnt.row(qi).transpose() * jump.row(qi);
    }

    // Projected jump: moments against L_0..L_{k-1}, M_E = diag(|E| / (2j+1)).
    Eigen::MatrixXd moments = Eigen::MatrixXd::Zero(k, nl);
    for (std::size_t q = 0; q < erule.size(); ++q) {
      for (int j = 0; j < k; ++j) {
        moments.row(j) += es.weights[q] * legendre(j, es.s[q]) * jump.row(static_cast<Eigen::Index>(q));
      }
    }
    Eigen::VectorXd inv_mass(k);
    for (int j = 0; j < k; ++j) inv_mass[j] = (2.0 * j + 1.0) / E.length;
    out.penalty.noalias() += penalty_scale * moments.transpose() * inv_mass.asDiagonal() * moments;
  }
  return out;
}

Eigen::MatrixXd local_b(const DiscreteSpaces& spaces, int element, const MethodParams& params) {
  const Mesh& mesh = spaces.mesh();
  const Element& K = mesh.element(element);
  const AffineMap F = affine_map(mesh, K);
  const ScalarBasis pbasis(spaces.pressure_order(), mesh, K);
  const TriangleRule trule = triangle_rule(params.volume_degree);
  const LocalBasisEval vol = spaces.velocity_basis(element, trule.points);

  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(pbasis.dimension(), spaces.velocity_local_dimension());
  for (std::size_t q = 0; q < trule.size(); ++q) {
    const double w = trule.weights[q] * F.det;
    const Eigen::VectorXd phi = pbasis.evaluate(F(trule.points[q]));
    B.noalias() -= w * phi * vol.div.row(static_cast<Eigen::Index>(q));
  }
  return B;
}

Eigen::MatrixXd local_s(const DiscreteSpaces& spaces, int element, const MethodParams& params) {
  const Mesh& mesh = spaces.mesh();
  const Element& K = mesh.element(element);
  const int m = spaces.pressure_order();
  const ScalarBasis pbasis(m, mesh, K);
  const int np = pbasis.dimension();
  if (params.variant == Variant::baseline || m == spaces.order() - 1) return Eigen::MatrixXd::Zero(np, np);

  const AffineMap F = affine_map(mesh, K);
  const TriangleRule trule = triangle_rule(params.volume_degree);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(np, np);
  for (std::size_t q = 0; q < trule.size(); ++q) {
    const Eigen::VectorXd phi = pbasis.evaluate(F(trule.points[q]));
    M.noalias() += trule.weights[q] * F.det * phi * phi.transpose();
  }
  // The basis is hierarchical: its first scalar_dimension(m-1) functions span P_{m-1}.
  const int nc = scalar_dimension(m - 1);
  const Eigen::MatrixXd C = M.topRows(nc);
  const Eigen::MatrixXd coarse = M.topLeftCorner(nc, nc);
  const Eigen::MatrixXd projected = C.transpose() * coarse.llt().solve(C);
  Eigen::MatrixXd S = (M - projected) / params.nu;
  return 0.5 * (S + S.transpose());
}

Eigen::VectorXd local_rhs(const DiscreteSpaces& spaces, int element, const VectorField& f,
                          const MethodParams& params) {
  const Mesh& mesh = spaces.mesh();
  const AffineMap F = affine_map(mesh, mesh.element(element));
  const TriangleRule trule = triangle_rule(params.volume_degree);
  const LocalBasisEval vol = spaces.velocity_basis(element, trule.points);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(spaces.velocity_local_dimension());
  for (std::size_t q = 0; q < trule.size(); ++q) {
    const auto qi = static_cast<Eigen::Index>(q);
    const Eigen::Vector2d fq = f(F(trule.points[q]));
    out += trule.weights[q] * F.det * (fq.x() * vol.vx.row(qi) + fq.y() * vol.vy.row(qi)).transpose();
  }
  return out;
}

Eigen::VectorXd boundary_rhs(const DiscreteSpaces& spaces, int edge, const BoundaryData& g,
                             const MethodParams& params) {
  const Mesh& mesh = spaces.mesh();
  const Edge& E = mesh.edge(edge);
  if (!E.is_boundary) throw std::invalid_argument("boundary_rhs: edge " + std::to_string(edge) + " is interior");
  const int element = E.elements[0];
  const AffineMap F = affine_map(mesh, mesh.element(element));
  const EdgeRule erule = edge_rule(params.edge_degree);
  const EdgeSamples es = sample_edge(mesh, F, E, erule);
  const LocalBasisEval eb = spaces.velocity_basis(element, es.ref);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(spaces.velocity_local_dimension());
  for (std::size_t q = 0; q < erule.size(); ++q) {
    const auto qi = static_cast<Eigen::Index>(q);
    const double gq = g(es.phys[q], E.normal);
    out += es.weights[q] * gq * (E.normal.x() * eb.vx.row(qi) + E.normal.y() * eb.vy.row(qi)).transpose();
  }
  return out;
}

}  // namespace hdg
