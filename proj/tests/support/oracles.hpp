#pragma once

// Test-only reference computations. Nothing here calls into the routes it is
// used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sigmaflow/symfunc.hpp"

namespace sigmaflow::testing {

/// sigma_k by summing the products over all k-subsets.
inline double sigma_k_by_subsets(const std::vector<double>& lambdas, int k) {
  const int n = static_cast<int>(lambdas.size());
  if (k == 0) return 1.0;
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    double p = 1.0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) p *= lambdas[i];
    total += p;
  }
  return total;
}

/// Seed for randomized suites: SIGMAFLOW_SEED or 0.
inline std::uint64_t suite_seed() {
  const char* env = std::getenv("SIGMAFLOW_SEED");
  return env ? std::strtoull(env, nullptr, 10) : 0;
}

inline SymMatrix random_symmetric(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, d(rng));
  return m;
}

/// Random W with trace(W) uniform in [lo, hi]; eigenvalues typically mixed sign.
inline SymMatrix random_gamma1(std::mt19937_64& rng, int n, double lo = 0.5, double hi = 5.0) {
  SymMatrix w = random_symmetric(rng, n);
  std::uniform_real_distribution<double> t(lo, hi);
  const double shift = (t(rng) - w.trace()) / n;
  for (int i = 0; i < n; ++i) w.set(i, i, w(i, i) + shift);
  return w;
}

/// Central second difference of f(W + hR) at h = 0, one Richardson step (h, h/2).
inline double second_difference(const std::function<double(const SymMatrix&)>& f,
                                const SymMatrix& w, const SymMatrix& r, double h) {
  auto central = [&](double step) {
    return (f(w + step * r) - 2.0 * f(w) + f(w - step * r)) / (step * step);
  };
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

/// sigma_2 from eigenvalues computed by Eigen.
inline double sigma2_via_eigen(const SymMatrix& w) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w.dense());
  const auto& ev = es.eigenvalues();
  double s1 = ev.sum();
  return 0.5 * (s1 * s1 - ev.squaredNorm());
}

inline double relative_error(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

}  // namespace sigmaflow::testing
