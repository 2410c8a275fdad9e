#include "sigmaflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sigmaflow/errors.hpp"

namespace sigmaflow {
namespace {

constexpr double kMonotoneSlack = 1e-12;
constexpr int kGrowthAfter = 10;

}  // namespace

void FlowConfig::validate() const {
  auto fail = [](const std::string& m) { throw DomainError("FlowConfig: " + m); };
  if (n < 5) fail("n must be >= 5");
  if (!(eps >= 0.0 && eps < 1.0)) fail("eps must be in [0, 1)");
  if (grid_size < 32) fail("grid_size must be >= 32");
  if (quad_order < 2) fail("quad_order must be >= 2");
  if (!(dt_init > 0.0)) fail("dt_init must be > 0");
  if (!(max_time >= 0.0)) fail("max_time must be >= 0");
  if (!(residual_tol > 0.0)) fail("residual_tol must be > 0");
  if (!(conservation_tol >= 0.0)) fail("conservation_tol must be >= 0");
  if (!(sigma1_floor >= 0.0)) fail("sigma1_floor must be >= 0");
  if (max_halvings < 0) fail("max_halvings must be >= 0");
}

const char* to_string(StepPolicy p) noexcept {
  return p == StepPolicy::Fixed ? "fixed" : "adaptive-halving";
}

const char* to_string(StepScheme s) noexcept {
  return s == StepScheme::Euler ? "euler" : "heun";
}

const char* to_string(FlowStatus s) noexcept {
  switch (s) {
    case FlowStatus::Converged:
      return "Converged";
    case FlowStatus::MaxTimeReached:
      return "MaxTimeReached";
    case FlowStatus::ConeViolation:
      return "ConeViolation";
    case FlowStatus::StepFailure:
      return "StepFailure";
  }
  return "unknown";
}

FlowState make_state(const ConformalFactor& u, double eps, double time) {
  const ConformalFactor m = u.in_convention(Convention::MinusTwoU);
  FunctionalEvaluation ev = evaluate_detailed(m, eps);
  const FieldSample nodes = sample_nodes(m);
  const auto& rep = ev.report;

  FlowState st{m, eps, time, rep, Eigen::VectorXd(nodes.s.size()), 0.0, rep.min_sigma1,
               rep.min_sigma2, 0.0};
  for (Eigen::Index j = 0; j < nodes.s.size(); ++j) {
    const double uu = nodes.jets.u(j);
    const double s1 = nodes.sigma1(j);
    if (!(s1 > 0.0)) {
      std::ostringstream msg;
      msg << "cone violation: min sigma_1 = " << s1 << " at s = " << nodes.s(j);
      throw ConeViolation(msg.str(), s1, nodes.s(j));
    }
    const double q = (nodes.sigma2(j) - rep.r_eps * std::exp((2.0 * eps - 4.0) * uu)) / s1;
    st.velocity(j) = q + rep.s_eps;
    st.residual = std::max(st.residual, std::abs(q));
    st.min_sigma1 = std::min(st.min_sigma1, std::exp(2.0 * uu) * s1);
    st.min_sigma2 = std::min(st.min_sigma2, std::exp(4.0 * uu) * nodes.sigma2(j));
  }
  st.c2_norm = nodes.jets.u.cwiseAbs().maxCoeff() + nodes.jets.du.cwiseAbs().maxCoeff() +
               nodes.jets.d2u.cwiseAbs().maxCoeff();
  return st;
}

Eigen::VectorXd velocity(const FlowState& state) { return state.velocity; }

FlowState euler_step(const FlowState& state, double dt) {
  if (!(dt > 0.0)) throw DomainError("euler_step: dt must be > 0");
  return make_state(state.u.with_values(state.u.values() + dt * state.velocity), state.eps,
                    state.time + dt);
}

FlowState heun_step(const FlowState& state, double dt) {
  const FlowState predictor = euler_step(state, dt);
  return make_state(
      state.u.with_values(state.u.values() + 0.5 * dt * (state.velocity + predictor.velocity)),
      state.eps, state.time + dt);
}

FlowState advance(const FlowState& state, double dt, StepScheme scheme) {
  return scheme == StepScheme::Euler ? euler_step(state, dt) : heun_step(state, dt);
}

StepResult step(const FlowState& state, double dt, const FlowConfig& config) {
  if (!(dt > 0.0)) throw DomainError("step: dt must be > 0");
  std::string last_reason;
  bool last_was_cone = false;
  double last_sigma1 = 0.0;
  double last_location = std::numeric_limits<double>::quiet_NaN();
  for (int halvings = 0; halvings <= config.max_halvings; ++halvings) {
    try {
      FlowState candidate = advance(state, dt, config.scheme);
      const double growth = candidate.report.F2 - state.report.F2;
      if (growth > kMonotoneSlack * std::abs(state.report.F2)) {
        std::ostringstream msg;
        msg << "F2 increased by " << growth << " at dt = " << dt;
        last_reason = msg.str();
        last_was_cone = false;
      } else if (candidate.min_sigma1 < config.sigma1_floor) {
        std::ostringstream msg;
        msg << "min sigma_1 = " << candidate.min_sigma1 << " below floor "
            << config.sigma1_floor << " at dt = " << dt;
        last_reason = msg.str();
        last_was_cone = true;
        last_sigma1 = candidate.min_sigma1;
      } else {
        return {std::move(candidate), dt, halvings};
      }
    } catch (const ConeViolation& e) {
      last_reason = e.what();
      last_was_cone = true;
      last_sigma1 = e.min_sigma1();
      last_location = e.location();
    }
    if (config.dt_policy == StepPolicy::Fixed) break;
    dt *= 0.5;
  }
  if (last_was_cone) throw ConeViolation("step rejected: " + last_reason, last_sigma1, last_location);
  throw StepFailure("step rejected: " + last_reason);
}

double dissipation_rate(const FlowState& state) {
  const FunctionalEvaluation ev = evaluate_detailed(state.u, state.eps);
  const int n = state.u.dimension();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < ev.quotient.size(); ++i) {
    const double uu = ev.quad.jets.u(i);
    // exp(2u) sigma_1(g) q^2 dvol(g) = exp((4-n)u) sigma_1(W) q^2 dvol(g_0)
    sum += std::exp((4.0 - n) * uu) * ev.quad.sigma1(i) * ev.quotient(i) * ev.quotient(i) *
           ev.measure(i);
  }
  return -(n - 4.0) * sum;
}

double dissipation_check(const FlowState& before, const FlowState& after, double dt) {
  if (!(dt > 0.0)) throw DomainError("dissipation_check: dt must be > 0");
  const ConformalFactor mid =
      before.u.with_values(0.5 * (before.u.values() + after.u.values()));
  const FlowState mid_state = make_state(mid, before.eps, before.time + 0.5 * dt);
  const double observed = (after.report.F2 - before.report.F2) / dt;
  const double predicted = dissipation_rate(mid_state);
  constexpr double tiny = 1e-14;
  if (std::abs(observed) < tiny && std::abs(predicted) < tiny) return 0.0;
  return std::abs(observed - predicted) / std::max(std::abs(predicted), tiny);
}

DiagnosticsRow diagnostics(const FlowState& st, double dt) {
  return {st.time,           dt, st.report.F2, st.report.F0eps, st.report.r_eps,
          st.report.s_eps,   st.min_sigma1,  st.min_sigma2,   st.residual};
}

Trajectory run(const FlowConfig& config, const ConformalFactor& u0, const DiagnosticsSink& sink) {
  config.validate();
  if (u0.dimension() != config.n) throw DomainError("run: u0 dimension differs from config.n");
  if (u0.grid().size() != config.grid_size) {
    throw DomainError("run: u0 grid size differs from config.grid_size");
  }

  Trajectory traj;
  auto emit = [&](const FlowState& st, double dt) {
    DiagnosticsRow row = diagnostics(st, dt);
    traj.rows.push_back(row);
    traj.min_sigma1_seen = traj.rows.size() == 1 ? st.min_sigma1
                                                 : std::min(traj.min_sigma1_seen, st.min_sigma1);
    const double prev = traj.c2_bound.empty() ? 0.0 : traj.c2_bound.back();
    traj.c2_bound.push_back(std::max(prev, st.c2_norm));
    if (sink) sink(row);
  };

  std::optional<FlowState> state;
  try {
    const FlowState raw = make_state(u0, config.eps);
    traj.shift = std::log(raw.report.F0eps) / (config.n - 2.0 * config.eps);
    state = make_state(raw.u.shifted(traj.shift), config.eps);
  } catch (const ConeViolation& e) {
    traj.status = FlowStatus::ConeViolation;
    traj.message = std::string("initial metric is outside C_1: ") + e.what();
    return traj;
  }
  traj.F0_initial = state->report.F0eps;
  emit(*state, 0.0);

  double dt = config.dt_init;
  int clean_steps = 0;
  for (;;) {
    if (state->residual <= config.residual_tol) {
      traj.status = FlowStatus::Converged;
      break;
    }
    if (state->time >= config.max_time) {
      traj.status = FlowStatus::MaxTimeReached;
      break;
    }
    std::optional<StepResult> attempt;
    try {
      attempt.emplace(step(*state, dt, config));
    } catch (const ConeViolation& e) {
      traj.status = FlowStatus::ConeViolation;
      traj.message = e.what();
      break;
    } catch (const StepFailure& e) {
      traj.status = FlowStatus::StepFailure;
      traj.message = e.what();
      break;
    }
    StepResult& res = *attempt;
    traj.rejected_steps += res.halvings;
    const double rate = std::abs(res.state.report.F0eps - state->report.F0eps) /
                        (res.dt * state->report.F0eps);
    traj.max_conservation_rate = std::max(traj.max_conservation_rate, rate);
    if (rate > config.conservation_tol) ++traj.conservation_violations;

    if (res.halvings > 0) {
      dt = res.dt;
      clean_steps = 0;
    } else if (++clean_steps >= kGrowthAfter && dt < config.dt_init) {
      dt = std::min(2.0 * dt, config.dt_init);
      clean_steps = 0;
    }
    state = std::move(res.state);
    emit(*state, res.dt);
  }
  if (traj.message.empty()) {
    std::ostringstream msg;
    msg << to_string(traj.status) << " at t = " << state->time
        << ", residual = " << state->residual;
    traj.message = msg.str();
  }
  traj.final = std::move(state);
  return traj;
}

}  // namespace sigmaflow
