#include "sigmaflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <gsl/gsl_integration.h>

#include "sigmaflow/errors.hpp"

namespace sigmaflow {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  if (n == 0) return {1.0, 0.0};
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussLegendre gauss_legendre(int order, double a, double b) {
  if (order < 1) throw DomainError("gauss_legendre: order must be positive");
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)>
      table(gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(order)),
            &gsl_integration_glfixed_table_free);
  if (!table) throw DomainError("gauss_legendre: GSL table allocation failed");

  // GSL seeds on [-1, 1]; its large-order tables are only good to ~1e-10,
  // so each node gets Newton polishing and a recomputed weight.
  std::vector<std::pair<double, double>> pts(static_cast<std::size_t>(order));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double x = 0.0, w = 0.0;
    gsl_integration_glfixed_point(-1.0, 1.0, i, &x, &w, table.get());
    for (int iter = 0; iter < 3; ++iter) {
      const auto [p, d] = legendre_with_derivative(order, x);
      x -= p / d;
    }
    const double dp = legendre_with_derivative(order, x).second;
    w = 2.0 / ((1.0 - x * x) * dp * dp);
    pts[i] = {x, w};
  }
  std::sort(pts.begin(), pts.end());

  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  GaussLegendre rule;
  rule.nodes.reserve(pts.size());
  rule.weights.reserve(pts.size());
  for (const auto& [x, w] : pts) {
    rule.nodes.push_back(mid + half * x);
    rule.weights.push_back(half * w);
  }
  return rule;
}

Eigen::VectorXd chebyshev_derivative(const Eigen::VectorXd& a) {
  const Eigen::Index n = a.size();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  if (n < 2) return b;
  // b_{k-1} = b_{k+1} + 2k a_k, then halve b_0.
  for (Eigen::Index k = n - 1; k >= 1; --k) {
    const double next = k + 1 < n ? b(k + 1) : 0.0;
    b(k - 1) = next + 2.0 * static_cast<double>(k) * a(k);
  }
  b(0) *= 0.5;
  return b;
}

double chebyshev_eval(const Eigen::VectorXd& a, double x) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (Eigen::Index k = a.size() - 1; k >= 1; --k) {
    const double b0 = 2.0 * x * b1 - b2 + a(k);
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + (a.size() > 0 ? a(0) : 0.0);
}

Grid::Grid(int theta_nodes, int quad_order) {
  if (theta_nodes < 4) throw DomainError("Grid: need at least 4 theta nodes");
  if (quad_order < 2) throw DomainError("Grid: quadrature order must be >= 2");

  const int n = theta_nodes;
  theta_.resize(n);
  s_.resize(n);
  for (int j = 0; j < n; ++j) {
    theta_(j) = (j + 0.5) * std::numbers::pi / n;
    s_(j) = std::cos(theta_(j));
  }
  quadrature_ = gauss_legendre(quad_order);

  // Discrete cosine transform on the Chebyshev-Gauss nodes.
  to_coeffs_.resize(n, n);
  for (int k = 0; k < n; ++k) {
    const double scale = (k == 0 ? 1.0 : 2.0) / n;
    for (int j = 0; j < n; ++j) to_coeffs_(k, j) = scale * std::cos(k * theta_(j));
  }

  Eigen::MatrixXd diff(n, n);
  for (int k = 0; k < n; ++k) diff.col(k) = chebyshev_derivative(Eigen::VectorXd::Unit(n, k));

  auto basis = [n](const Eigen::VectorXd& x) {
    Eigen::MatrixXd t(x.size(), n);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double angle = std::acos(std::clamp(x(i), -1.0, 1.0));
      for (int k = 0; k < n; ++k) t(i, k) = std::cos(k * angle);
    }
    return t;
  };

  const Eigen::MatrixXd d1 = diff * to_coeffs_;
  const Eigen::MatrixXd d2 = diff * d1;

  const Eigen::VectorXd xq =
      Eigen::Map<const Eigen::VectorXd>(quadrature_.nodes.data(), quad_order);
  const Eigen::MatrixXd tq = basis(xq);
  quad_value_ = tq * to_coeffs_;
  quad_d1_ = tq * d1;
  quad_d2_ = tq * d2;

  const Eigen::MatrixXd tn = basis(s_);
  node_d1_ = tn * d1;
  node_d2_ = tn * d2;
}

Eigen::VectorXd Grid::coefficients(const Eigen::VectorXd& values) const {
  if (values.size() != size()) throw DomainError("Grid: value count does not match grid");
  return to_coeffs_ * values;
}

Jets Grid::apply(const Eigen::MatrixXd& value_map, const Eigen::MatrixXd& d1_map,
                 const Eigen::MatrixXd& d2_map, const Eigen::VectorXd& values) const {
  if (values.size() != size()) throw DomainError("Grid: value count does not match grid");
  // Removing the mean keeps the derivative maps from amplifying rounding in
  // the constant mode, which they annihilate exactly in exact arithmetic.
  const double mean = values.mean();
  const Eigen::VectorXd centered = values.array() - mean;
  Jets jets;
  if (value_map.size() > 0) {
    jets.u = (value_map * centered).array() + mean;
  } else {
    jets.u = values;
  }
  jets.du = d1_map * centered;
  jets.d2u = d2_map * centered;
  return jets;
}

Jets Grid::jets_at_quadrature(const Eigen::VectorXd& values) const {
  return apply(quad_value_, quad_d1_, quad_d2_, values);
}

Jets Grid::jets_at_nodes(const Eigen::VectorXd& values) const {
  return apply(Eigen::MatrixXd(), node_d1_, node_d2_, values);
}

std::array<double, 3> Grid::jet_at(const Eigen::VectorXd& values, double s) const {
  if (!(std::abs(s) <= 1.0)) throw DomainError("Grid::jet_at: |s| must be <= 1");
  const Eigen::VectorXd a = coefficients(values);
  const Eigen::VectorXd da = chebyshev_derivative(a);
  const Eigen::VectorXd d2a = chebyshev_derivative(da);
  return {chebyshev_eval(a, s), chebyshev_eval(da, s), chebyshev_eval(d2a, s)};
}

}  // namespace sigmaflow
