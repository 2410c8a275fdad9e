#pragma once

// Schouten eigenvalues of rotationally symmetric conformal metrics on the
// round unit sphere S^n, written in the height coordinate s = x_{n+1}.

#include "sigmaflow/symfunc.hpp"

namespace sigmaflow {

/// Which way the conformal factor enters the metric.
enum class Convention {
  MinusTwoU,  ///< g = exp(-2u) g_0; the flow's convention.
  PlusTwoU,   ///< g = exp(+2u) g_0; the convention of the explicit g_ell family.
};

const char* to_string(Convention c) noexcept;

/// Value and first two s-derivatives of u at height s in S^n.
struct PointJet {
  double s = 0.0;
  double u = 0.0;
  double du = 0.0;
  double d2u = 0.0;
  int n = 5;

  /// Throws DomainError unless |s| < 1 and n >= 5.
  void validate() const;
};

/// Eigenvalues of g_0^{-1} A_g: one radial eigenvalue and the tangential
/// eigenvalue with multiplicity n - 1.
struct SchoutenEigs {
  double lambda_r = 0.5;
  double lambda_t = 0.5;
};

/// Closed-form eigenvalues from grad^2 u = u'' ds (x) ds - s u' g_0 and
/// |ds|^2 = 1 - s^2. For PlusTwoU:
///   lambda_r = 1/2 - (1 - s^2) u'' + s u' + (1/2) u'^2 (1 - s^2)
///   lambda_t = 1/2 + s u' - (1/2) u'^2 (1 - s^2)
/// MinusTwoU is the same with u -> -u.
SchoutenEigs schouten_eigs(const PointJet& jet, Convention conv);

/// sigma_2 = ((n-1)(n-2)/2) lambda_t^2 + (n-1) lambda_r lambda_t.
double sigma2_point(SchoutenEigs eigs, int n);

/// sigma_1 = lambda_r + (n-1) lambda_t.
double scalar_sigma1(SchoutenEigs eigs, int n);

/// Scalar curvature ratio R = 2(n-1) sigma_1.
double scalar_curvature(SchoutenEigs eigs, int n);

/// The n-long profile (lambda_r, lambda_t, ..., lambda_t) in compressed form.
EigenProfile to_profile(SchoutenEigs eigs, int n);

/// (1 - s^2)^((n-2)/2); the round volume element is sphere_area(n-1) * weight * ds.
double weight(double s, int n);

/// Area of the unit m-sphere, 2 pi^((m+1)/2) / Gamma((m+1)/2).
double sphere_area(int m);

}  // namespace sigmaflow
