#pragma once

// Perturbed sigma_2 Yamabe-type flow for g = exp(-2u) g_0 on S^n:
//
//   du/dt = exp(-2u) (sigma_2(g) - r_eps exp(2 eps u)) / sigma_1(g) + s_eps
//
// r_eps and s_eps are recomputed from the current metric at every step so the
// continuous flow preserves F_{0,eps} and decreases F_2. The discrete flow is
// explicit (Euler by default, Heun optional); conservation and monotonicity
// are monitored, not enforced.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sigmaflow/functionals.hpp"

namespace sigmaflow {

enum class StepPolicy { Fixed, AdaptiveHalving };

/// Time discretization of one step. Euler is u + dt v(u); Heun averages the
/// velocities at u and at the Euler predictor, which makes the F_{0,eps} drift
/// second order in dt.
enum class StepScheme { Euler, Heun };

struct FlowConfig {
  int n = 5;
  double eps = 0.1;
  int grid_size = 128;
  int quad_order = 200;
  double dt_init = 5e-5;
  StepPolicy dt_policy = StepPolicy::AdaptiveHalving;
  StepScheme scheme = StepScheme::Euler;
  double max_time = 20.0;
  double residual_tol = 1e-6;
  /// Allowed |dF_{0,eps}| / (dt F_{0,eps}) per step before the step is counted
  /// as a conservation violation.
  double conservation_tol = 1e-8;
  double sigma1_floor = 0.0;
  /// Halvings allowed within one step before StepFailure.
  int max_halvings = 40;

  /// Throws DomainError on out-of-range fields.
  void validate() const;
};

const char* to_string(StepPolicy p) noexcept;
const char* to_string(StepScheme s) noexcept;

/// Current metric plus everything derived from it. Always MinusTwoU.
struct FlowState {
  ConformalFactor u;
  double eps = 0.0;
  double time = 0.0;
  FunctionalReport report;
  Eigen::VectorXd velocity;  ///< du/dt at the grid nodes
  double residual = 0.0;     ///< max over nodes of |velocity - s_eps|
  double min_sigma1 = 0.0;   ///< min of sigma_1(g) over nodes and quadrature points
  double min_sigma2 = 0.0;
  double c2_norm = 0.0;      ///< max|u| + max|u'| + max|u''| over the nodes
};

/// Evaluates a state. Throws ConeViolation if sigma_1 <= 0 at any node.
FlowState make_state(const ConformalFactor& u, double eps, double time = 0.0);

/// du/dt at the grid nodes.
Eigen::VectorXd velocity(const FlowState& state);

/// One unchecked explicit Euler update u + dt * velocity.
FlowState euler_step(const FlowState& state, double dt);

/// One unchecked Heun update u + dt/2 (v(u) + v(u + dt v(u))).
FlowState heun_step(const FlowState& state, double dt);

/// Unchecked update with the given scheme.
FlowState advance(const FlowState& state, double dt, StepScheme scheme);

struct StepResult {
  FlowState state;
  double dt = 0.0;
  int halvings = 0;
};

/// Step with rejection: a candidate is refused when F_2 grows by more
/// than 1e-12 |F_2|, when min sigma_1 drops below config.sigma1_floor, or when
/// it leaves Gamma_1^+. Rejected steps halve dt under AdaptiveHalving and fail
/// immediately under Fixed. Throws StepFailure, or ConeViolation when the last
/// rejection was a cone violation.
StepResult step(const FlowState& state, double dt, const FlowConfig& config);

/// Relative mismatch between (F_2(after) - F_2(before)) / dt and
/// -(n-4) int exp(2u) sigma_1(g) (velocity - s_eps)^2 dvol(g) evaluated at the
/// midpoint state. Returns 0 when both sides are below 1e-14.
double dissipation_check(const FlowState& before, const FlowState& after, double dt);

/// -(n-4) int exp(2u) sigma_1(g) q^2 dvol(g) at the given state.
double dissipation_rate(const FlowState& state);

struct DiagnosticsRow {
  double time = 0.0;
  double dt = 0.0;
  double F2 = 0.0;
  double F0eps = 0.0;
  double r_eps = 0.0;
  double s_eps = 0.0;
  double min_sigma1 = 0.0;
  double min_sigma2 = 0.0;
  double residual = 0.0;
};

DiagnosticsRow diagnostics(const FlowState& state, double dt);

using DiagnosticsSink = std::function<void(const DiagnosticsRow&)>;

enum class FlowStatus { Converged, MaxTimeReached, ConeViolation, StepFailure };

const char* to_string(FlowStatus s) noexcept;

struct Trajectory {
  std::vector<DiagnosticsRow> rows;
  std::optional<FlowState> final;
  FlowStatus status = FlowStatus::StepFailure;
  std::string message;

  double shift = 0.0;          ///< constant added to u0 so that F_{0,eps} = 1
  double F0_initial = 0.0;
  double min_sigma1_seen = 0.0;
  /// Running maximum of FlowState::c2_norm, one entry per row.
  std::vector<double> c2_bound;
  /// Largest |dF_{0,eps}| / (dt F_{0,eps}) over accepted steps.
  double max_conservation_rate = 0.0;
  int conservation_violations = 0;
  int rejected_steps = 0;
};

/// Runs the flow from u0 until the residual drops to config.residual_tol, the
/// time reaches config.max_time, or a step fails. u0 is first shifted by a
/// constant so that F_{0,eps}(u0) = 1. If u0 is outside C_1 the run does not
/// start and returns status ConeViolation. Never throws for flow failures.
Trajectory run(const FlowConfig& config, const ConformalFactor& u0,
               const DiagnosticsSink& sink = {});

}  // namespace sigmaflow
