#include "sigmaflow/symfunc.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sigmaflow/errors.hpp"

namespace sigmaflow {
namespace {

void check_order(int k, int n) {
  if (k < 0 || k > n) {
    throw DomainError("sigma_k: k = " + std::to_string(k) + " outside [0, " +
                      std::to_string(n) + "]");
  }
}

double binomial(int m, int k) {
  if (k < 0 || k > m) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (m - k + i) / i;
  return c;
}

double require_cone(const SymMatrix& w, const char* op) {
  const double s1 = w.trace();
  if (!(s1 > 0.0)) {
    throw ConeViolation(std::string(op) + ": sigma_1(W) = " + std::to_string(s1) +
                            " is not positive",
                        s1, std::numeric_limits<double>::quiet_NaN());
  }
  return s1;
}

}  // namespace

EigenProfile::EigenProfile(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("EigenProfile: at least one eigenvalue required");
}

EigenProfile EigenProfile::compressed(double lambda_r, double lambda_t, int multiplicity) {
  if (multiplicity < 0) throw DomainError("EigenProfile: negative multiplicity");
  EigenProfile p;
  p.lambda_r_ = lambda_r;
  p.lambda_t_ = lambda_t;
  p.multiplicity_ = multiplicity;
  p.compressed_ = true;
  return p;
}

int EigenProfile::size() const noexcept {
  return compressed_ ? multiplicity_ + 1 : static_cast<int>(values_.size());
}

std::vector<double> EigenProfile::expanded() const {
  if (!compressed_) return values_;
  std::vector<double> out(static_cast<std::size_t>(multiplicity_) + 1, lambda_t_);
  out[0] = lambda_r_;
  return out;
}

SymMatrix::SymMatrix(int n) : n_(n) {
  if (n < 1) throw DomainError("SymMatrix: dimension must be positive");
  packed_.assign(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0);
}

SymMatrix SymMatrix::identity(int n) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  SymMatrix m(static_cast<int>(diag.size()));
  for (int i = 0; i < m.dim(); ++i) m.set(i, i, diag[i]);
  return m;
}

SymMatrix SymMatrix::from_dense(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw DomainError("SymMatrix: matrix is not square");
  SymMatrix out(static_cast<int>(m.rows()));
  for (int i = 0; i < out.n_; ++i) {
    for (int j = i; j < out.n_; ++j) {
      if (m(i, j) != m(j, i)) throw DomainError("SymMatrix: matrix is not symmetric");
      out.set(i, j, m(i, j));
    }
  }
  return out;
}

double SymMatrix::trace() const noexcept {
  double t = 0.0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double SymMatrix::frobenius_squared() const noexcept {
  double f = 0.0;
  for (int i = 0; i < n_; ++i) {
    f += (*this)(i, i) * (*this)(i, i);
    for (int j = i + 1; j < n_; ++j) f += 2.0 * (*this)(i, j) * (*this)(i, j);
  }
  return f;
}

Eigen::MatrixXd SymMatrix::dense() const {
  Eigen::MatrixXd m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

std::vector<double> SymMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense(), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  if (other.n_ != n_) throw DomainError("SymMatrix: dimension mismatch");
  for (std::size_t i = 0; i < packed_.size(); ++i) packed_[i] += other.packed_[i];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& other) {
  if (other.n_ != n_) throw DomainError("SymMatrix: dimension mismatch");
  for (std::size_t i = 0; i < packed_.size(); ++i) packed_[i] -= other.packed_[i];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double factor) noexcept {
  for (double& v : packed_) v *= factor;
  return *this;
}

double sigma_k(std::span<const double> lambdas, int k) {
  const int n = static_cast<int>(lambdas.size());
  check_order(k, n);
  // e[j] holds sigma_j of the eigenvalues consumed so far.
  std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = std::min(i + 1, k); j >= 1; --j) e[j] += lambdas[i] * e[j - 1];
  }
  return e[k];
}

double sigma_k(const EigenProfile& profile, int k) {
  if (!profile.is_compressed()) {
    const auto values = profile.expanded();
    return sigma_k(std::span<const double>(values), k);
  }
  const int m = profile.multiplicity();
  check_order(k, m + 1);
  if (k == 0) return 1.0;
  const double t = profile.lambda_t();
  return binomial(m, k) * std::pow(t, k) +
         profile.lambda_r() * binomial(m, k - 1) * std::pow(t, k - 1);
}

double sigma_k(const SymMatrix& w, int k) {
  check_order(k, w.dim());
  switch (k) {
    case 0:
      return 1.0;
    case 1:
      return w.trace();
    case 2: {
      const double t = w.trace();
      return 0.5 * (t * t - w.frobenius_squared());
    }
    default: {
      const auto ev = w.eigenvalues();
      return sigma_k(std::span<const double>(ev), k);
    }
  }
}

ConeLabel in_gamma_plus(const EigenProfile& profile, int k) {
  if (k < 1 || k > profile.size()) {
    throw DomainError("in_gamma_plus: k = " + std::to_string(k) + " outside [1, " +
                      std::to_string(profile.size()) + "]");
  }
  for (int j = 1; j <= k; ++j) {
    if (!(sigma_k(profile, j) > 0.0)) return {k, false};
  }
  return {k, true};
}

double sigma_quotient(const EigenProfile& profile, int k) {
  if (k < 1 || k > profile.size()) {
    throw DomainError("sigma_quotient: k = " + std::to_string(k) + " outside [1, " +
                      std::to_string(profile.size()) + "]");
  }
  const double denom = sigma_k(profile, k - 1);
  if (!(denom > 0.0)) {
    throw ConeViolation("sigma_quotient: sigma_" + std::to_string(k - 1) + " = " +
                            std::to_string(denom) + " is not positive",
                        sigma_k(profile, 1), std::numeric_limits<double>::quiet_NaN());
  }
  return sigma_k(profile, k) / denom;
}

SymMatrix newton_transform(const SymMatrix& w) {
  SymMatrix t = -1.0 * w;
  const double s1 = w.trace();
  for (int i = 0; i < w.dim(); ++i) t.set(i, i, t(i, i) + s1);
  return t;
}

double quotient_F(const SymMatrix& w, double nu) {
  const double s1 = require_cone(w, "quotient_F");
  return (sigma_k(w, 2) - nu) / s1;
}

SymMatrix quotient_grad(const SymMatrix& w, double nu) {
  const double s1 = require_cone(w, "quotient_grad");
  const double s2 = sigma_k(w, 2);
  SymMatrix g = s1 * newton_transform(w);
  for (int i = 0; i < w.dim(); ++i) g.set(i, i, g(i, i) - s2 + nu);
  g *= 1.0 / (s1 * s1);
  return g;
}

double quotient_hessian_form(const SymMatrix& w, const SymMatrix& r) {
  if (r.dim() != w.dim()) throw DomainError("quotient_hessian_form: dimension mismatch");
  const double s1 = require_cone(w, "quotient_hessian_form");
  const double s1r = r.trace();
  double sum = 0.0;
  for (int i = 0; i < w.dim(); ++i) {
    for (int j = 0; j < w.dim(); ++j) {
      const double d = s1 * r(i, j) - s1r * w(i, j);
      sum += d * d;
    }
  }
  return -sum / (s1 * s1 * s1);
}

double quotient_second_derivative(const SymMatrix& w, const SymMatrix& r, double nu) {
  const double s1 = require_cone(w, "quotient_second_derivative");
  const double s1r = r.trace();
  return quotient_hessian_form(w, r) - 2.0 * nu * s1r * s1r / (s1 * s1 * s1);
}

}  // namespace sigmaflow
