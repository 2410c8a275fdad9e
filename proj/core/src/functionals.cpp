#include "sigmaflow/functionals.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "sigmaflow/errors.hpp"

namespace sigmaflow {
namespace {

FieldSample make_sample(const ConformalFactor& u, Eigen::VectorXd s, Jets jets) {
  const int n = u.dimension();
  FieldSample out;
  out.s = std::move(s);
  out.jets = std::move(jets);
  const Eigen::Index m = out.s.size();
  out.lambda_r.resize(m);
  out.lambda_t.resize(m);
  out.sigma1.resize(m);
  out.sigma2.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const PointJet jet{out.s(i), out.jets.u(i), out.jets.du(i), out.jets.d2u(i), n};
    const SchoutenEigs e = schouten_eigs(jet, Convention::MinusTwoU);
    out.lambda_r(i) = e.lambda_r;
    out.lambda_t(i) = e.lambda_t;
    out.sigma1(i) = scalar_sigma1(e, n);
    out.sigma2(i) = sigma2_point(e, n);
  }
  return out;
}

[[noreturn]] void throw_cone(double sigma1, double s) {
  std::ostringstream msg;
  msg << "cone violation: min sigma_1 = " << sigma1 << " at s = " << s;
  throw ConeViolation(msg.str(), sigma1, s);
}

}  // namespace

double integrate(const std::function<double(double)>& f, int n, const GaussLegendre& rule) {
  const double area = sphere_area(n - 1);
  double sum = 0.0;
  for (int i = 0; i < rule.order(); ++i) {
    const double s = rule.nodes[i];
    const double v = f(s);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "integrate: non-finite integrand at s = " << s;
      throw EvaluationError(msg.str(), s);
    }
    sum += rule.weights[i] * v * weight(s, n);
  }
  return area * sum;
}

ConformalFactor::ConformalFactor(std::shared_ptr<const Grid> grid, Eigen::VectorXd values,
                                 int n, Convention convention)
    : grid_(std::move(grid)), values_(std::move(values)), n_(n), convention_(convention) {
  if (!grid_) throw DomainError("ConformalFactor: null grid");
  if (values_.size() != grid_->size()) {
    throw DomainError("ConformalFactor: value count does not match grid");
  }
  if (n_ < 5) throw DomainError("ConformalFactor: requires n >= 5");
  if (!values_.allFinite()) throw DomainError("ConformalFactor: non-finite values");
}

ConformalFactor ConformalFactor::from_theta(std::shared_ptr<const Grid> grid,
                                            const std::function<double(double)>& f, int n,
                                            Convention convention) {
  if (!grid) throw DomainError("ConformalFactor: null grid");
  Eigen::VectorXd v(grid->size());
  for (int j = 0; j < grid->size(); ++j) v(j) = f(grid->theta()(j));
  return ConformalFactor(std::move(grid), std::move(v), n, convention);
}

ConformalFactor ConformalFactor::in_convention(Convention target) const {
  if (target == convention_) return *this;
  return ConformalFactor(grid_, -values_, n_, target);
}

ConformalFactor ConformalFactor::with_values(Eigen::VectorXd values) const {
  return ConformalFactor(grid_, std::move(values), n_, convention_);
}

ConformalFactor ConformalFactor::shifted(double constant) const {
  return with_values(values_.array() + constant);
}

FieldSample sample_quadrature(const ConformalFactor& u) {
  const ConformalFactor m = u.in_convention(Convention::MinusTwoU);
  const auto& rule = m.grid().quadrature();
  Eigen::VectorXd s = Eigen::Map<const Eigen::VectorXd>(rule.nodes.data(), rule.order());
  return make_sample(m, std::move(s), m.grid().jets_at_quadrature(m.values()));
}

FieldSample sample_nodes(const ConformalFactor& u) {
  const ConformalFactor m = u.in_convention(Convention::MinusTwoU);
  return make_sample(m, m.grid().s(), m.grid().jets_at_nodes(m.values()));
}

double normalized_F2(double F2, double F0eps, int n, double eps) {
  return std::pow(F0eps, -(n - 4.0) / (n - 2.0 * eps)) * F2;
}

FunctionalEvaluation evaluate_detailed(const ConformalFactor& u, double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw DomainError("evaluate_functionals: eps must be in [0, 1)");
  const int n = u.dimension();
  FunctionalEvaluation ev;
  ev.dimension = n;
  ev.quad = sample_quadrature(u);
  const auto& q = ev.quad;
  const auto& rule = u.grid().quadrature();
  const Eigen::Index m = q.s.size();

  const double area = sphere_area(n - 1);
  ev.measure.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) ev.measure(i) = area * rule.weights[i] * weight(q.s(i), n);

  auto& rep = ev.report;
  rep.min_sigma1 = std::numeric_limits<double>::infinity();
  rep.min_sigma2 = std::numeric_limits<double>::infinity();
  double F2 = 0.0, F0 = 0.0, vol = 0.0, scal = 0.0;
  double worst = std::numeric_limits<double>::infinity();
  double worst_s = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double uu = q.jets.u(i);
    if (!std::isfinite(q.sigma1(i)) || !std::isfinite(q.sigma2(i)) || !std::isfinite(uu)) {
      std::ostringstream msg;
      msg << "evaluate_functionals: non-finite sample at s = " << q.s(i);
      throw EvaluationError(msg.str(), q.s(i));
    }
    if (q.sigma1(i) < worst) {
      worst = q.sigma1(i);
      worst_s = q.s(i);
    }
    const double dv = ev.measure(i);
    F2 += std::exp((4.0 - n) * uu) * q.sigma2(i) * dv;
    F0 += std::exp((2.0 * eps - n) * uu) * dv;
    vol += std::exp(-n * uu) * dv;
    scal += std::exp((2.0 - n) * uu) * q.sigma1(i) * dv;
    rep.min_sigma1 = std::min(rep.min_sigma1, std::exp(2.0 * uu) * q.sigma1(i));
    rep.min_sigma2 = std::min(rep.min_sigma2, std::exp(4.0 * uu) * q.sigma2(i));
  }
  if (!(worst > 0.0)) throw_cone(worst, worst_s);

  rep.F2 = F2;
  rep.F0eps = F0;
  rep.r_eps = F2 / F0;
  rep.vol = vol;
  rep.total_scalar = 2.0 * (n - 1) * scal;
  rep.tildeF2eps = normalized_F2(F2, F0, n, eps);

  // q = (sigma_2(W) - r exp((2 eps - 4) u)) / sigma_1(W) is the g-level
  // expression exp(-2u)(sigma_2(g) - r exp(2 eps u)) / sigma_1(g).
  ev.quotient.resize(m);
  double weighted = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double uu = q.jets.u(i);
    ev.quotient(i) = (q.sigma2(i) - rep.r_eps * std::exp((2.0 * eps - 4.0) * uu)) / q.sigma1(i);
    weighted += std::exp((2.0 * eps - n) * uu) * ev.quotient(i) * ev.measure(i);
  }
  rep.s_eps = -weighted / F0;
  return ev;
}

FunctionalReport evaluate_functionals(const ConformalFactor& u, double eps) {
  return evaluate_detailed(u, eps).report;
}

double quotient_Yeps_value(const ConformalFactor& u, double eps) {
  return evaluate_functionals(u, eps).tildeF2eps;
}

double normalized_F2_zero(const FunctionalReport& report, int n) {
  return report.F2 * std::pow(report.vol, -(n - 4.0) / n);
}

double holder_lower_bound(const FunctionalReport& report, int n, double eps) {
  const double vol0 = sphere_area(n);
  return normalized_F2_zero(report, n) *
         std::pow(vol0, -2.0 * eps * (n - 4.0) / (n * (n - 2.0 * eps)));
}

double constraint_residual(const FunctionalEvaluation& ev, double eps) {
  const int n = ev.dimension;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < ev.quotient.size(); ++i) {
    const double uu = ev.quad.jets.u(i);
    sum += std::exp((2.0 * eps - n) * uu) * (ev.quotient(i) + ev.report.s_eps) * ev.measure(i);
  }
  return sum;
}

}  // namespace sigmaflow
