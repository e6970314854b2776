#include "hdg/manufactured.hpp"

#include <cmath>

namespace hdg {

VectorField ExactSolution::forcing_field(double nu) const {
  return [this, nu](const Point& x) { return forcing(x, nu); };
}

BoundaryData ExactSolution::normal_stress_field(double nu) const {
  return [this, nu](const Point& x, const Point& n) { return normal_stress(x, n, nu); };
}

// a(s) = c(s) d(s) with c = 1 - cos(w), w = (1-s)^2 and d = sin(z), z = s^2.
std::array<double, 4> CurlSolution::profile(double s) {
  const double w = (1.0 - s) * (1.0 - s), w1 = -2.0 * (1.0 - s), w2 = 2.0;
  const double z = s * s, z1 = 2.0 * s, z2 = 2.0;
  const double sw = std::sin(w), cw = std::cos(w);
  const double sz = std::sin(z), cz = std::cos(z);

  const double c0 = 1.0 - cw;
  const double c1 = sw * w1;
  const double c2 = cw * w1 * w1 + sw * w2;
  const double c3 = -sw * w1 * w1 * w1 + 3.0 * cw * w1 * w2;

  const double d0 = sz;
  const double d1 = cz * z1;
  const double d2 = -sz * z1 * z1 + cz * z2;
  const double d3 = -cz * z1 * z1 * z1 - 3.0 * sz * z1 * z2;

  return {c0 * d0, c1 * d0 + c0 * d1, c2 * d0 + 2.0 * c1 * d1 + c0 * d2,
          c3 * d0 + 3.0 * c2 * d1 + 3.0 * c1 * d2 + c0 * d3};
}

double CurlSolution::stream_function(const Point& x) const { return profile(x.x())[0] * profile(x.y())[0]; }

Eigen::Vector2d CurlSolution::velocity(const Point& x) const {
  const auto ax = profile(x.x()), ay = profile(x.y());
  return {ax[0] * ay[1], -ax[1] * ay[0]};
}

Eigen::Matrix2d CurlSolution::velocity_gradient(const Point& x) const {
  const auto ax = profile(x.x()), ay = profile(x.y());
  Eigen::Matrix2d G;
  G << ax[1] * ay[1], ax[0] * ay[2],
      -ax[2] * ay[0], -ax[1] * ay[1];
  return G;
}

Eigen::Vector2d CurlSolution::velocity_laplacian(const Point& x) const {
  const auto ax = profile(x.x()), ay = profile(x.y());
  return {ax[2] * ay[1] + ax[0] * ay[3], -ax[3] * ay[0] - ax[1] * ay[2]};
}

double CurlSolution::pressure(const Point& x) const { return std::tan(x.x() * x.y()); }

Eigen::Vector2d CurlSolution::pressure_gradient(const Point& x) const {
  const double c = std::cos(x.x() * x.y());
  const double sec2 = 1.0 / (c * c);
  return {sec2 * x.y(), sec2 * x.x()};
}

ErrorReport compute_errors(const DiscreteSpaces& spaces, const SolutionFields& solution, const ExactSolution& exact,
                           const MethodParams& params) {
  const Mesh& mesh = spaces.mesh();
  const int k = spaces.order();
  const int nb = spaces.velocity_local_dimension();
  const TriangleRule trule = triangle_rule(params.volume_degree);
  const EdgeRule erule = edge_rule(params.edge_degree);

  double u_l2 = 0.0, p_l2 = 0.0, h1 = 0.0, normal_derivative = 0.0, jump = 0.0;

  for (const Element& K : mesh.elements()) {
    const AffineMap F = affine_map(mesh, K);
    const auto vdofs = spaces.velocity_dofs(K.id);
    Eigen::VectorXd coeffs(nb);
    for (int j = 0; j < nb; ++j) coeffs[j] = solution.velocity[vdofs[static_cast<std::size_t>(j)]];

    const LocalBasisEval vol = spaces.velocity_basis(K.id, trule.points);
    const ScalarBasis pbasis(spaces.pressure_order(), mesh, K);
    const auto np = static_cast<Eigen::Index>(pbasis.dimension());
    const Eigen::VectorXd pcoeffs = solution.pressure.segment(static_cast<Eigen::Index>(K.id) * np, np);

    for (std::size_t q = 0; q < trule.size(); ++q) {
      const auto qi = static_cast<Eigen::Index>(q);
      const Point x = F(trule.points[q]);
      const double w = trule.weights[q] * F.det;
      const Eigen::Vector2d uh(vol.vx.row(qi).dot(coeffs), vol.vy.row(qi).dot(coeffs));
      Eigen::Matrix2d Gh;
      Gh << vol.dxx.row(qi).dot(coeffs), vol.dxy.row(qi).dot(coeffs), vol.dyx.row(qi).dot(coeffs),
          vol.dyy.row(qi).dot(coeffs);
      const double ph = pbasis.evaluate(x).dot(pcoeffs);
      u_l2 += w * (exact.velocity(x) - uh).squaredNorm();
      h1 += w * (exact.velocity_gradient(x) - Gh).squaredNorm();
      const double ep = exact.pressure(x) - ph;
      p_l2 += w * ep * ep;
    }

    for (int i = 0; i < 3; ++i) {
      const Edge& E = mesh.edge(K.edges[i]);
      const double sigma = K.normal_sign[i];
      const Point n = sigma * E.normal;
      const Point t = sigma * E.tangent;
      std::vector<Point> ref(erule.size());
      std::vector<Point> phys(erule.size());
      for (std::size_t q = 0; q < erule.size(); ++q) {
        phys[q] = E.point_at(erule.points[q], mesh.vertices());
        ref[q] = F.to_reference(phys[q]);
      }
      const LocalBasisEval eb = spaces.velocity_basis(K.id, ref);
      std::vector<double> projected_arg(erule.size());
      for (std::size_t q = 0; q < erule.size(); ++q) {
        const auto qi = static_cast<Eigen::Index>(q);
        const Point& x = phys[q];
        const Eigen::Vector2d uh(eb.vx.row(qi).dot(coeffs), eb.vy.row(qi).dot(coeffs));
        Eigen::Matrix2d Gh;
        Gh << eb.dxx.row(qi).dot(coeffs), eb.dxy.row(qi).dot(coeffs), eb.dyx.row(qi).dot(coeffs),
            eb.dyy.row(qi).dot(coeffs);
        const double w = erule.weights[q] * E.length;
        normal_derivative += K.diameter * w * ((exact.velocity_gradient(x) - Gh) * n).squaredNorm();

        const Eigen::Vector2d u = exact.velocity(x);
        const double e_t = (u - uh).dot(t);
        // exact multiplier u.t; the discrete one seen from K is sigma * u~_h
        const double e_trace = u.dot(t) - sigma * solution.trace_at(E.id, erule.points[q]);
        projected_arg[q] = e_t - e_trace;
      }
      const Eigen::VectorXd proj = phi_projection(k - 1, erule, projected_arg);
      double norm2 = 0.0;
      for (int j = 0; j < k; ++j) norm2 += proj[j] * proj[j] * E.length / (2.0 * j + 1.0);
      jump += params.tau / K.diameter * norm2;
    }
  }

  ErrorReport r;
  r.h = mesh.h();
  r.n_dofs = spaces.layout().total();
  r.velocity_l2 = std::sqrt(u_l2);
  r.pressure_l2 = std::sqrt(p_l2);
  r.velocity_h1 = std::sqrt(h1);
  r.triple = std::sqrt(params.nu * (h1 + normal_derivative + jump));
  r.triple_full = r.triple + r.pressure_l2 / std::sqrt(params.nu);
  return r;
}

std::vector<std::optional<double>> eoc(std::span<const double> errors) {
  std::vector<std::optional<double>> out(errors.size());
  for (std::size_t l = 1; l < errors.size(); ++l) {
    const double a = errors[l - 1], b = errors[l];
    if (a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b)) out[l] = std::log2(a / b);
  }
  return out;
}

}  // namespace hdg
