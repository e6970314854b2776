#include "hdg/fe_spaces.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hdg {

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// x^a y^b with the convention that negative exponents give 0 (used after
// differentiation, where the coefficient a or b is zero anyway).
double mono(double x, double y, int a, int b) {
  if (a < 0 || b < 0) return 0.0;
  return ipow(x, a) * ipow(y, b);
}

void check_order(int k) {
  if (k < kMinBdmOrder || k > kMaxBdmOrder) {
    throw std::invalid_argument("BDM order " + std::to_string(k) + " not implemented (supported: " +
                                std::to_string(kMinBdmOrder) + ".." + std::to_string(kMaxBdmOrder) + ")");
  }
}

LocalBasisEval piola(const LocalBasisEval& ref, const AffineMap& F) {
  const Eigen::Matrix2d& B = F.B;
  const Eigen::Matrix2d& Bi = F.B_inv;
  const double inv_det = 1.0 / F.det;
  LocalBasisEval out = ref;
  for (Eigen::Index q = 0; q < ref.num_points(); ++q) {
    for (Eigen::Index j = 0; j < ref.num_functions(); ++j) {
      const Eigen::Vector2d v = inv_det * (B * ref.value(q, j));
      const Eigen::Matrix2d G = inv_det * (B * ref.gradient(q, j) * Bi);
      out.vx(q, j) = v.x();
      out.vy(q, j) = v.y();
      out.dxx(q, j) = G(0, 0);
      out.dxy(q, j) = G(0, 1);
      out.dyx(q, j) = G(1, 0);
      out.dyy(q, j) = G(1, 1);
      out.div(q, j) = inv_det * ref.div(q, j);
    }
  }
  return out;
}

}  // namespace

double legendre(int j, double s) {
  const double x = 2.0 * s - 1.0;
  if (j == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int n = 2; n <= j; ++n) {
    const double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

void LocalBasisEval::apply_signs(std::span<const double> signs) {
  for (Eigen::Index j = 0; j < num_functions(); ++j) {
    const double s = signs[static_cast<std::size_t>(j)];
    if (s == 1.0) continue;
    vx.col(j) *= s;
    vy.col(j) *= s;
    dxx.col(j) *= s;
    dxy.col(j) *= s;
    dyx.col(j) *= s;
    dyy.col(j) *= s;
    div.col(j) *= s;
  }
}

// ---------------------------------------------------------------------------
// BdmReference

Point BdmReference::reference_vertex(int i) {
  switch (i) {
    case 0: return {0.0, 0.0};
    case 1: return {1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

Point BdmReference::reference_normal(int i) {
  const Point d = reference_vertex((i + 2) % 3) - reference_vertex((i + 1) % 3);
  return Point(d.y(), -d.x()).normalized();
}

BdmReference::BdmReference(int k) : k_(k) {
  check_order(k);
  for (int c = 0; c < 2; ++c) {
    for (int d = 0; d <= k; ++d) {
      for (int a = d; a >= 0; --a) monomials_.push_back({c, a, d - a});
    }
  }
  const auto n = static_cast<Eigen::Index>(monomials_.size());
  Eigen::MatrixXd dual(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    const auto [c, a, b] = monomials_[static_cast<std::size_t>(m)];
    dual.col(m) = apply_functionals([c = c, a = a, b = b](const Point& x) {
      Eigen::Vector2d v = Eigen::Vector2d::Zero();
      v[c] = mono(x.x(), x.y(), a, b);
      return v;
    });
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(dual);
  if (!lu.isInvertible()) throw std::logic_error("BDM dual pairing matrix is singular");
  coefficients_ = lu.inverse();
}

Eigen::MatrixXd BdmReference::interior_fields(const Point& xhat) const {
  const double x = xhat.x(), y = xhat.y();
  Eigen::MatrixXd w(2, interior_dofs());
  Eigen::Index col = 0;
  for (int d = 1; d <= k_ - 1; ++d) {
    for (int a = d; a >= 0; --a) {
      const int b = d - a;
      w(0, col) = a * mono(x, y, a - 1, b);
      w(1, col) = b * mono(x, y, a, b - 1);
      ++col;
    }
  }
  // curl(b_K q), b_K q = x^(a+1) y^(b+1) - x^(a+2) y^(b+1) - x^(a+1) y^(b+2)
  for (int d = 0; d <= k_ - 2; ++d) {
    for (int a = d; a >= 0; --a) {
      const int b = d - a;
      const std::array<std::array<int, 3>, 3> terms{{{1, a + 1, b + 1}, {-1, a + 2, b + 1}, {-1, a + 1, b + 2}}};
      double dpsi_dx = 0.0, dpsi_dy = 0.0;
      for (const auto& [s, p, q] : terms) {
        dpsi_dx += s * p * mono(x, y, p - 1, q);
        dpsi_dy += s * q * mono(x, y, p, q - 1);
      }
      w(0, col) = dpsi_dy;
      w(1, col) = -dpsi_dx;
      ++col;
    }
  }
  return w;
}

Eigen::VectorXd BdmReference::apply_functionals(const VectorField& vhat) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dimension());
  const EdgeRule erule = edge_rule(2 * k_ + 2);
  for (int i = 0; i < 3; ++i) {
    const Point a = reference_vertex((i + 1) % 3);
    const Point b = reference_vertex((i + 2) % 3);
    const Point n = reference_normal(i);
    const double len = (b - a).norm();
    for (std::size_t q = 0; q < erule.size(); ++q) {
      const double t = erule.points[q];
      const double vn = vhat((1.0 - t) * a + t * b).dot(n);
      for (int j = 0; j <= k_; ++j) out[i * (k_ + 1) + j] += erule.weights[q] * len * vn * legendre(j, t);
    }
  }
  if (k_ >= 2) {
    const TriangleRule trule = triangle_rule(2 * k_ + 2);
    for (std::size_t q = 0; q < trule.size(); ++q) {
      const Eigen::Vector2d v = vhat(trule.points[q]);
      const Eigen::MatrixXd w = interior_fields(trule.points[q]);
      out.tail(interior_dofs()) += trule.weights[q] * (w.transpose() * v);
    }
  }
  return out;
}

LocalBasisEval BdmReference::evaluate(std::span<const Point> ref_points) const {
  const auto nq = static_cast<Eigen::Index>(ref_points.size());
  const auto nm = static_cast<Eigen::Index>(monomials_.size());
  Eigen::MatrixXd mv[2] = {Eigen::MatrixXd::Zero(nq, nm), Eigen::MatrixXd::Zero(nq, nm)};
  Eigen::MatrixXd mdx[2] = {Eigen::MatrixXd::Zero(nq, nm), Eigen::MatrixXd::Zero(nq, nm)};
  Eigen::MatrixXd mdy[2] = {Eigen::MatrixXd::Zero(nq, nm), Eigen::MatrixXd::Zero(nq, nm)};
  for (Eigen::Index q = 0; q < nq; ++q) {
    const double x = ref_points[static_cast<std::size_t>(q)].x();
    const double y = ref_points[static_cast<std::size_t>(q)].y();
    for (Eigen::Index m = 0; m < nm; ++m) {
      const auto [c, a, b] = monomials_[static_cast<std::size_t>(m)];
      mv[c](q, m) = mono(x, y, a, b);
      mdx[c](q, m) = a * mono(x, y, a - 1, b);
      mdy[c](q, m) = b * mono(x, y, a, b - 1);
    }
  }
  LocalBasisEval out;
  out.vx = mv[0] * coefficients_;
  out.vy = mv[1] * coefficients_;
  out.dxx = mdx[0] * coefficients_;
  out.dxy = mdy[0] * coefficients_;
  out.dyx = mdx[1] * coefficients_;
  out.dyy = mdy[1] * coefficients_;
  out.div = out.dxx + out.dyy;
  return out;
}

LocalBasisEval bdm_local_basis(const BdmReference& ref, const AffineMap& F, std::span<const Point> ref_points) {
  return piola(ref.evaluate(ref_points), F);
}

LocalBasisEval bdm_local_basis(int k, const Mesh& mesh, const Element& K, std::span<const Point> ref_points) {
  return bdm_local_basis(BdmReference(k), affine_map(mesh, K), ref_points);
}

// ---------------------------------------------------------------------------
// Scalar spaces and projections

ScalarBasis::ScalarBasis(int m, const Mesh& mesh, const Element& K) : order(m) {
  if (m < 0) throw std::invalid_argument("ScalarBasis: negative order");
  centroid = (mesh.vertex(K.vertices[0]).x + mesh.vertex(K.vertices[1]).x + mesh.vertex(K.vertices[2]).x) / 3.0;
  scale = 1.0 / K.diameter;
}

Eigen::VectorXd ScalarBasis::evaluate(const Point& x) const {
  const double dx = (x.x() - centroid.x()) * scale;
  const double dy = (x.y() - centroid.y()) * scale;
  Eigen::VectorXd v(dimension());
  Eigen::Index i = 0;
  for (int d = 0; d <= order; ++d) {
    for (int a = d; a >= 0; --a) v[i++] = mono(dx, dy, a, d - a);
  }
  return v;
}

Eigen::MatrixXd ScalarBasis::evaluate(std::span<const Point> xs) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(xs.size()), dimension());
  for (std::size_t q = 0; q < xs.size(); ++q) out.row(static_cast<Eigen::Index>(q)) = evaluate(xs[q]).transpose();
  return out;
}

Eigen::VectorXd psi_projection(int m, const Mesh& mesh, const Element& K, const TriangleRule& rule,
                               std::span<const double> values) {
  if (values.size() != rule.size()) throw std::invalid_argument("psi_projection: sample count mismatch");
  const ScalarBasis basis(m, mesh, K);
  const AffineMap F = affine_map(mesh, K);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(basis.dimension(), basis.dimension());
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(basis.dimension());
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double w = rule.weights[q] * std::abs(F.det);
    const Eigen::VectorXd phi = basis.evaluate(F(rule.points[q]));
    M.noalias() += w * phi * phi.transpose();
    rhs += w * values[q] * phi;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) throw std::logic_error("psi_projection: singular local mass matrix");
  return llt.solve(rhs);
}

Eigen::VectorXd phi_projection(int m, const EdgeRule& rule, std::span<const double> values) {
  if (m < 0) throw std::invalid_argument("phi_projection: negative order");
  if (values.size() != rule.size()) throw std::invalid_argument("phi_projection: sample count mismatch");
  // Edge length cancels between both sides of the moment equations.
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m + 1, m + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    Eigen::VectorXd L(m + 1);
    for (int j = 0; j <= m; ++j) L[j] = legendre(j, rule.points[q]);
    M.noalias() += rule.weights[q] * L * L.transpose();
    rhs += rule.weights[q] * values[q] * L;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) throw std::logic_error("phi_projection: singular edge mass matrix");
  return llt.solve(rhs);
}

// ---------------------------------------------------------------------------
// DiscreteSpaces

DiscreteSpaces::DiscreteSpaces(const Mesh& mesh, int k, int pressure_order)
    : mesh_(&mesh), reference_(k), pressure_order_(pressure_order) {
  if (pressure_order != k && pressure_order != k - 1) {
    throw std::invalid_argument("pressure order must be k or k-1");
  }
  const int per_edge = reference_.dofs_per_edge();
  const int interior = reference_.interior_dofs();
  const int nb = reference_.dimension();

  layout_.n_velocity = per_edge * mesh.num_edges() + interior * mesh.num_elements();
  layout_.n_trace = k * mesh.num_interior_edges();
  layout_.n_pressure = pressure_local_dimension() * mesh.num_elements();

  trace_index_.assign(static_cast<std::size_t>(mesh.num_edges()), -1);
  int next = 0;
  for (const Edge& E : mesh.edges()) {
    if (!E.is_boundary) trace_index_[static_cast<std::size_t>(E.id)] = next++;
  }

  velocity_dofs_.resize(static_cast<std::size_t>(nb * mesh.num_elements()));
  velocity_signs_.resize(velocity_dofs_.size());
  for (const Element& K : mesh.elements()) {
    const auto base = static_cast<std::size_t>(K.id * nb);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < per_edge; ++j) {
        const auto l = base + static_cast<std::size_t>(i * per_edge + j);
        velocity_dofs_[l] = K.edges[i] * per_edge + j;
        const int dir = (j % 2 == 0) ? 1 : K.edge_direction[i];
        velocity_signs_[l] = static_cast<double>(K.normal_sign[i] * dir);
      }
    }
    for (int j = 0; j < interior; ++j) {
      const auto l = base + static_cast<std::size_t>(3 * per_edge + j);
      velocity_dofs_[l] = per_edge * mesh.num_edges() + K.id * interior + j;
      velocity_signs_[l] = 1.0;
    }
  }
}

std::span<const int> DiscreteSpaces::velocity_dofs(int element) const {
  const auto nb = static_cast<std::size_t>(velocity_local_dimension());
  return {velocity_dofs_.data() + static_cast<std::size_t>(element) * nb, nb};
}

std::span<const double> DiscreteSpaces::velocity_signs(int element) const {
  const auto nb = static_cast<std::size_t>(velocity_local_dimension());
  return {velocity_signs_.data() + static_cast<std::size_t>(element) * nb, nb};
}

int DiscreteSpaces::trace_dof(int edge, int j) const {
  const int t = trace_index_[static_cast<std::size_t>(edge)];
  return t < 0 ? -1 : layout_.trace_offset() + t * order() + j;
}

LocalBasisEval DiscreteSpaces::velocity_basis(int element, std::span<const Point> ref_points) const {
  LocalBasisEval eval = bdm_local_basis(reference_, affine_map(*mesh_, mesh_->element(element)), ref_points);
  eval.apply_signs(velocity_signs(element));
  return eval;
}

Eigen::Vector2d DiscreteSpaces::velocity_at(std::span<const double> coeffs, int element, const Point& x) const {
  const AffineMap F = affine_map(*mesh_, mesh_->element(element));
  const Point xhat = F.to_reference(x);
  const LocalBasisEval eval = velocity_basis(element, std::span<const Point>(&xhat, 1));
  const auto dofs = velocity_dofs(element);
  Eigen::Vector2d v = Eigen::Vector2d::Zero();
  for (std::size_t j = 0; j < dofs.size(); ++j) {
    v += coeffs[static_cast<std::size_t>(dofs[j])] * eval.value(0, static_cast<Eigen::Index>(j));
  }
  return v;
}

Eigen::Matrix2d DiscreteSpaces::velocity_gradient_at(std::span<const double> coeffs, int element,
                                                     const Point& x) const {
  const AffineMap F = affine_map(*mesh_, mesh_->element(element));
  const Point xhat = F.to_reference(x);
  const LocalBasisEval eval = velocity_basis(element, std::span<const Point>(&xhat, 1));
  const auto dofs = velocity_dofs(element);
  Eigen::Matrix2d G = Eigen::Matrix2d::Zero();
  for (std::size_t j = 0; j < dofs.size(); ++j) {
    G += coeffs[static_cast<std::size_t>(dofs[j])] * eval.gradient(0, static_cast<Eigen::Index>(j));
  }
  return G;
}

double DiscreteSpaces::pressure_at(std::span<const double> coeffs, int element, const Point& x) const {
  const ScalarBasis basis(pressure_order_, *mesh_, mesh_->element(element));
  const Eigen::VectorXd phi = basis.evaluate(x);
  double p = 0.0;
  const auto base = static_cast<std::size_t>(element * basis.dimension());
  for (Eigen::Index i = 0; i < phi.size(); ++i) p += coeffs[base + static_cast<std::size_t>(i)] * phi[i];
  return p;
}

double DiscreteSpaces::trace_at(std::span<const double> coeffs, int edge, double s) const {
  const int t = trace_index_[static_cast<std::size_t>(edge)];
  if (t < 0) return 0.0;
  double v = 0.0;
  for (int j = 0; j < order(); ++j) v += coeffs[static_cast<std::size_t>(t * order() + j)] * legendre(j, s);
  return v;
}

Eigen::VectorXd bdm_interpolate(const DiscreteSpaces& spaces, const VectorField& u, int volume_degree,
                                int edge_degree) {
  const Mesh& mesh = spaces.mesh();
  const int k = spaces.order();
  const int per_edge = spaces.bdm().dofs_per_edge();
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(spaces.layout().n_velocity);

  const EdgeRule erule = edge_rule(edge_degree);
  for (const Edge& E : mesh.edges()) {
    for (std::size_t q = 0; q < erule.size(); ++q) {
      const double s = erule.points[q];
      const double un = u(E.point_at(s, mesh.vertices())).dot(E.normal);
      for (int j = 0; j <= k; ++j) coeffs[E.id * per_edge + j] += erule.weights[q] * E.length * un * legendre(j, s);
    }
  }

  const int interior = spaces.bdm().interior_dofs();
  if (interior > 0) {
    const TriangleRule trule = triangle_rule(volume_degree);
    for (const Element& K : mesh.elements()) {
      const AffineMap F = affine_map(mesh, K);
      Eigen::VectorXd moments = Eigen::VectorXd::Zero(interior);
      for (std::size_t q = 0; q < trule.size(); ++q) {
        const Eigen::Vector2d vhat = F.det * (F.B_inv * u(F(trule.points[q])));
        moments += trule.weights[q] * (spaces.bdm().interior_fields(trule.points[q]).transpose() * vhat);
      }
      coeffs.segment(per_edge * mesh.num_edges() + K.id * interior, interior) = moments;
    }
  }
  return coeffs;
}

}  // namespace hdg
