#pragma once

// Discretization of rotationally symmetric fields on S^n.
//
// A field u is carried by its values at the interior Chebyshev-Gauss angles
// theta_j = (j + 1/2) pi / N. Its even cosine series in theta is a Chebyshev
// series in s = cos(theta), so u, u' and u'' are taken in s directly and the
// poles never appear as nodes.

#include <array>
#include <memory>
#include <vector>

#include <Eigen/Dense>

namespace sigmaflow {

/// Gauss-Legendre rule on [a, b], nodes ascending.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  int order() const noexcept { return static_cast<int>(nodes.size()); }
};

GaussLegendre gauss_legendre(int order, double a = -1.0, double b = 1.0);

/// u and its first two s-derivatives on some node set.
struct Jets {
  Eigen::VectorXd u;
  Eigen::VectorXd du;
  Eigen::VectorXd d2u;
};

class Grid {
 public:
  /// Throws DomainError for theta_nodes < 4 or quad_order < 2.
  Grid(int theta_nodes, int quad_order = 200);

  static std::shared_ptr<const Grid> make(int theta_nodes, int quad_order = 200) {
    return std::make_shared<const Grid>(theta_nodes, quad_order);
  }

  int size() const noexcept { return static_cast<int>(theta_.size()); }
  int quad_order() const noexcept { return quadrature_.order(); }

  /// Strictly increasing angles in (0, pi).
  const Eigen::VectorXd& theta() const noexcept { return theta_; }
  /// s_j = cos(theta_j), strictly decreasing.
  const Eigen::VectorXd& s() const noexcept { return s_; }
  const GaussLegendre& quadrature() const noexcept { return quadrature_; }

  /// Chebyshev coefficients a_k with u(s) = sum_k a_k T_k(s).
  Eigen::VectorXd coefficients(const Eigen::VectorXd& values) const;

  Jets jets_at_quadrature(const Eigen::VectorXd& values) const;
  Jets jets_at_nodes(const Eigen::VectorXd& values) const;

  /// {u, u', u''} at an arbitrary s in [-1, 1] (Clenshaw on the series).
  std::array<double, 3> jet_at(const Eigen::VectorXd& values, double s) const;

 private:
  Jets apply(const Eigen::MatrixXd& value_map, const Eigen::MatrixXd& d1_map,
             const Eigen::MatrixXd& d2_map, const Eigen::VectorXd& values) const;

  Eigen::VectorXd theta_;
  Eigen::VectorXd s_;
  GaussLegendre quadrature_;
  Eigen::MatrixXd to_coeffs_;  // N x N
  Eigen::MatrixXd quad_value_, quad_d1_, quad_d2_;  // Q x N
  Eigen::MatrixXd node_d1_, node_d2_;  // N x N
};

/// Coefficients of the s-derivative of a Chebyshev series (same length).
Eigen::VectorXd chebyshev_derivative(const Eigen::VectorXd& coeffs);

/// Clenshaw evaluation of sum_k a_k T_k(x).
double chebyshev_eval(const Eigen::VectorXd& coeffs, double x);

}  // namespace sigmaflow
