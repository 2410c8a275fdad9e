#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "sigmaflow/errors.hpp"
#include "sigmaflow/grid.hpp"

namespace sigmaflow {
namespace {

TEST(GaussLegendre, WeightsPositiveAndSumToLength) {
  const auto gl = gauss_legendre(200);
  EXPECT_EQ(gl.order(), 200);
  for (double w : gl.weights) EXPECT_GT(w, 0.0);
  EXPECT_NEAR(std::accumulate(gl.weights.begin(), gl.weights.end(), 0.0), 2.0, 1e-13);
  EXPECT_TRUE(std::is_sorted(gl.nodes.begin(), gl.nodes.end()));
  const auto half = gauss_legendre(10, 0.0, 3.0);
  EXPECT_NEAR(std::accumulate(half.weights.begin(), half.weights.end(), 0.0), 3.0, 1e-14);
}

TEST(GaussLegendre, ExactForPolynomials) {
  const auto gl = gauss_legendre(20);
  for (int p = 0; p <= 39; ++p) {
    double sum = 0.0;
    for (int i = 0; i < gl.order(); ++i) sum += gl.weights[i] * std::pow(gl.nodes[i], p);
    const double want = p % 2 ? 0.0 : 2.0 / (p + 1);
    EXPECT_NEAR(sum, want, 1e-14) << p;
  }
}

TEST(Grid, NodesInsideOpenInterval) {
  const Grid g(32, 50);
  EXPECT_EQ(g.size(), 32);
  EXPECT_EQ(g.quad_order(), 50);
  for (int j = 0; j < g.size(); ++j) {
    EXPECT_GT(g.theta()(j), 0.0);
    EXPECT_LT(g.theta()(j), M_PI);
    if (j > 0) EXPECT_GT(g.theta()(j), g.theta()(j - 1));
    EXPECT_DOUBLE_EQ(g.s()(j), std::cos(g.theta()(j)));
  }
  EXPECT_THROW(Grid(3), DomainError);
  EXPECT_THROW(Grid(8, 1), DomainError);
}

TEST(Grid, DifferentiatesPolynomialsExactly) {
  const Grid g(48, 120);
  for (int p = 0; p < 48; p += 5) {
    Eigen::VectorXd v(g.size());
    for (int j = 0; j < g.size(); ++j) v(j) = std::pow(g.s()(j), p);
    auto exact = [p](double s) {
      return std::array<double, 3>{std::pow(s, p), p ? p * std::pow(s, p - 1) : 0.0,
                                   p > 1 ? p * (p - 1) * std::pow(s, p - 2) : 0.0};
    };
    const Jets nodes = g.jets_at_nodes(v);
    for (int j = 0; j < g.size(); ++j) {
      const auto e = exact(g.s()(j));
      const double scale = std::max(1.0, static_cast<double>(p * p));
      EXPECT_NEAR(nodes.u(j), e[0], 1e-12);
      EXPECT_NEAR(nodes.du(j), e[1], 1e-10 * scale) << p;
      EXPECT_NEAR(nodes.d2u(j), e[2], 1e-10 * scale * scale) << p;
    }
    const Jets q = g.jets_at_quadrature(v);
    const auto& nodes_q = g.quadrature().nodes;
    for (int i = 0; i < g.quad_order(); ++i) {
      const auto e = exact(nodes_q[i]);
      const double scale = std::max(1.0, static_cast<double>(p * p));
      EXPECT_NEAR(q.u(i), e[0], 1e-12);
      EXPECT_NEAR(q.du(i), e[1], 1e-10 * scale);
      EXPECT_NEAR(q.d2u(i), e[2], 1e-10 * scale * scale);
    }
    const auto at = g.jet_at(v, 0.3);
    EXPECT_NEAR(at[1], exact(0.3)[1], 1e-10 * std::max(1.0, 1.0 * p));
  }
}

TEST(Grid, CosineModeInTheta) {
  // cos 2 theta = 2 s^2 - 1.
  const Grid g(64);
  Eigen::VectorXd v = (2.0 * g.theta().array()).cos().matrix();
  const auto c = g.coefficients(v);
  EXPECT_NEAR(c(2), 1.0, 1e-14);
  EXPECT_NEAR(c.norm(), 1.0, 1e-14);
  const auto j = g.jet_at(v, 0.5);
  EXPECT_NEAR(j[0], -0.5, 1e-14);
  EXPECT_NEAR(j[1], 2.0, 1e-13);
  EXPECT_NEAR(j[2], 4.0, 1e-10);
}

TEST(Chebyshev, DerivativeOfT3) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(5);
  c(3) = 1.0;  // T3 = 4x^3 - 3x, derivative 12x^2 - 3 = 6 T2 + 3 T0
  const auto d = chebyshev_derivative(c);
  EXPECT_NEAR(d(0), 3.0, 1e-15);
  EXPECT_NEAR(d(2), 6.0, 1e-15);
  EXPECT_NEAR(chebyshev_eval(c, 0.5), 4 * 0.125 - 1.5, 1e-15);
}

}  // namespace
}  // namespace sigmaflow
