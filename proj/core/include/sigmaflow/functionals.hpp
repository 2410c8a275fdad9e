#pragma once

// Integral functionals of conformal metrics g = exp(-2u) g_0 on S^n:
//   F_2       = int sigma_2(g) dvol(g)
//   F_{0,eps} = int exp(2 eps u) dvol(g)
//   r_eps     = F_2 / F_{0,eps}
//   s_eps     makes int exp(2 eps u) (q + s_eps) dvol(g) vanish, where
//             q = exp(-2u) (sigma_2(g) - r_eps exp(2 eps u)) / sigma_1(g)
//   tilde F_{2,eps} = F_{0,eps}^{-(n-4)/(n-2 eps)} F_2
//
// Curvatures are sampled as eigenvalues of the g_0-relative Schouten matrix
// W; the conformal weights exp(2ku) and exp(-nu) are applied at integration
// time.

#include <functional>
#include <memory>

#include <Eigen/Dense>

#include "sigmaflow/grid.hpp"
#include "sigmaflow/sphere_geometry.hpp"

namespace sigmaflow {

/// omega_{n-1} int_{-1}^{1} f(s) (1 - s^2)^((n-2)/2) ds with the given rule.
/// Throws EvaluationError (carrying s) if f is non-finite at a node.
double integrate(const std::function<double(double)>& f, int n, const GaussLegendre& rule);

/// Conformal exponent sampled on a Grid, with the dimension n of the sphere
/// and the sign convention it is written in.
class ConformalFactor {
 public:
  ConformalFactor(std::shared_ptr<const Grid> grid, Eigen::VectorXd values, int n,
                  Convention convention = Convention::MinusTwoU);

  /// Samples `f(theta)` at the grid angles.
  static ConformalFactor from_theta(std::shared_ptr<const Grid> grid,
                                    const std::function<double(double)>& f, int n,
                                    Convention convention = Convention::MinusTwoU);

  const Grid& grid() const noexcept { return *grid_; }
  const std::shared_ptr<const Grid>& grid_ptr() const noexcept { return grid_; }
  const Eigen::VectorXd& values() const noexcept { return values_; }
  int dimension() const noexcept { return n_; }
  Convention convention() const noexcept { return convention_; }

  /// The same metric written in `target` (u -> -u when the conventions differ).
  ConformalFactor in_convention(Convention target) const;
  /// Same grid, dimension and convention; new values.
  ConformalFactor with_values(Eigen::VectorXd values) const;
  ConformalFactor shifted(double constant) const;

 private:
  std::shared_ptr<const Grid> grid_;
  Eigen::VectorXd values_;
  int n_;
  Convention convention_;
};

/// Pointwise MinusTwoU data on one node set.
struct FieldSample {
  Eigen::VectorXd s;
  Jets jets;
  Eigen::VectorXd lambda_r;
  Eigen::VectorXd lambda_t;
  Eigen::VectorXd sigma1;  ///< sigma_1(W), g_0-relative
  Eigen::VectorXd sigma2;  ///< sigma_2(W), g_0-relative
};

FieldSample sample_quadrature(const ConformalFactor& u);
FieldSample sample_nodes(const ConformalFactor& u);

struct FunctionalReport {
  double F2 = 0.0;
  double F0eps = 0.0;
  double r_eps = 0.0;
  double s_eps = 0.0;
  double tildeF2eps = 0.0;
  double vol = 0.0;
  double total_scalar = 0.0;  ///< int R_g dvol(g), R = 2(n-1) sigma_1
  double min_sigma1 = 0.0;    ///< min over quadrature nodes of sigma_1(g)
  double min_sigma2 = 0.0;    ///< min over quadrature nodes of sigma_2(g)
};

/// Report plus the quadrature-node data it was computed from.
struct FunctionalEvaluation {
  FunctionalReport report;
  int dimension = 5;
  FieldSample quad;
  Eigen::VectorXd measure;   ///< omega_{n-1} w_q weight(s_q): dvol(g_0) per node
  Eigen::VectorXd quotient;  ///< q at quadrature nodes (velocity minus s_eps)
};

/// Throws DomainError unless 0 <= eps < 1, ConeViolation if sigma_1 <= 0 at a
/// quadrature node, EvaluationError on non-finite samples.
FunctionalEvaluation evaluate_detailed(const ConformalFactor& u, double eps);
FunctionalReport evaluate_functionals(const ConformalFactor& u, double eps);

/// tilde F_{2,eps}(g), the objective whose infimum over C_1 is Y_eps.
double quotient_Yeps_value(const ConformalFactor& u, double eps);

/// F_{0,eps}^{-(n-4)/(n-2 eps)} F_2.
double normalized_F2(double F2, double F0eps, int n, double eps);

/// tilde F_{2,0}(g) = F_2 vol(g)^{-(n-4)/n}.
double normalized_F2_zero(const FunctionalReport& report, int n);

/// Lower bound tilde F_{2,0}(g) vol(g_0)^{-2 eps (n-4) / (n (n - 2 eps))}
/// for tilde F_{2,eps}(g) from Hoelder's inequality (valid when F_2 >= 0).
double holder_lower_bound(const FunctionalReport& report, int n, double eps);

/// int exp(2 eps u) (q + s_eps) dvol(g) with the report's r_eps, s_eps.
double constraint_residual(const FunctionalEvaluation& evaluation, double eps);

}  // namespace sigmaflow
