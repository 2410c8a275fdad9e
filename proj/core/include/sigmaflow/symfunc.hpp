#pragma once

// Elementary symmetric functions, Garding cones and the sigma_2/sigma_1
// quotient operator.

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sigmaflow {

/// Eigenvalues (lambda_1, ..., lambda_n) at a point.
///
/// A profile is either stored expanded, or compressed as one eigenvalue
/// `lambda_r` plus `lambda_t` repeated `multiplicity` times. Both forms
/// evaluate every sigma_k identically up to rounding.
class EigenProfile {
 public:
  explicit EigenProfile(std::vector<double> values);

  static EigenProfile compressed(double lambda_r, double lambda_t, int multiplicity);

  int size() const noexcept;
  bool is_compressed() const noexcept { return compressed_; }

  /// The n-long eigenvalue list (expands a compressed profile).
  std::vector<double> expanded() const;

  double lambda_r() const noexcept { return lambda_r_; }
  double lambda_t() const noexcept { return lambda_t_; }
  int multiplicity() const noexcept { return multiplicity_; }

 private:
  EigenProfile() = default;

  std::vector<double> values_;
  double lambda_r_ = 0.0;
  double lambda_t_ = 0.0;
  int multiplicity_ = 0;
  bool compressed_ = false;
};

/// Dense symmetric n x n matrix with packed upper-triangular storage, so
/// w_ij == w_ji holds by construction.
class SymMatrix {
 public:
  explicit SymMatrix(int n);

  static SymMatrix identity(int n);
  static SymMatrix diagonal(std::span<const double> diag);
  /// Throws DomainError unless `m` is square and exactly symmetric.
  static SymMatrix from_dense(const Eigen::MatrixXd& m);

  int dim() const noexcept { return n_; }
  double operator()(int i, int j) const noexcept { return packed_[index(i, j)]; }
  /// Sets both w_ij and w_ji.
  void set(int i, int j, double value) noexcept { packed_[index(i, j)] = value; }

  double trace() const noexcept;
  /// Sum over all (i, j) of w_ij^2.
  double frobenius_squared() const noexcept;
  Eigen::MatrixXd dense() const;
  /// Ascending eigenvalues.
  std::vector<double> eigenvalues() const;

  SymMatrix& operator+=(const SymMatrix& other);
  SymMatrix& operator-=(const SymMatrix& other);
  SymMatrix& operator*=(double factor) noexcept;

  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(double f, SymMatrix a) { return a *= f; }

 private:
  int index(int i, int j) const noexcept {
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i - 1) / 2 + (j - i);
  }

  int n_;
  std::vector<double> packed_;
};

struct ConeLabel {
  int k = 0;
  bool member = false;
};

/// sigma_k of an eigenvalue list via the product recurrence for prod(1 + t*lambda_i).
/// sigma_0 = 1. Throws DomainError unless 0 <= k <= size.
double sigma_k(std::span<const double> lambdas, int k);
double sigma_k(const EigenProfile& profile, int k);
/// sigma_k of the eigenvalues of W; k <= 2 uses trace identities directly.
double sigma_k(const SymMatrix& w, int k);

/// Membership in the open cone Gamma_k^+ = {sigma_j > 0, j = 1..k}; no tolerance.
ConeLabel in_gamma_plus(const EigenProfile& profile, int k);

/// sigma_k / sigma_{k-1} on an eigenvalue profile, 1 <= k <= n.
double sigma_quotient(const EigenProfile& profile, int k);

/// First Newton transformation T = sigma_1(W) I - W.
SymMatrix newton_transform(const SymMatrix& w);

/// (sigma_2(W) - nu) / sigma_1(W). Throws ConeViolation when sigma_1(W) <= 0.
double quotient_F(const SymMatrix& w, double nu);

/// dF/dw_ij = (sigma_1 T^ij - sigma_2 delta^ij + nu delta^ij) / sigma_1^2.
SymMatrix quotient_grad(const SymMatrix& w, double nu);

/// Second derivative of sigma_2/sigma_1 at W in direction R:
/// -sum_ij (sigma_1(W) r_ij - sigma_1(R) w_ij)^2 / sigma_1(W)^3.
double quotient_hessian_form(const SymMatrix& w, const SymMatrix& r);

/// d^2/dh^2 quotient_F(W + hR, nu) at h = 0, i.e. the Hessian form above
/// minus 2 nu sigma_1(R)^2 / sigma_1(W)^3.
double quotient_second_derivative(const SymMatrix& w, const SymMatrix& r, double nu);

}  // namespace sigmaflow
