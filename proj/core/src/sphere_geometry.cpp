#include "sigmaflow/sphere_geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sigmaflow/errors.hpp"

namespace sigmaflow {

const char* to_string(Convention c) noexcept {
  return c == Convention::MinusTwoU ? "MinusTwoU" : "PlusTwoU";
}

void PointJet::validate() const {
  if (!(std::abs(s) < 1.0)) throw DomainError("PointJet: |s| must be < 1 (poles excluded)");
  if (n < 5) throw DomainError("PointJet: requires n >= 5, got " + std::to_string(n));
}

SchoutenEigs schouten_eigs(const PointJet& jet, Convention conv) {
  jet.validate();
  const double sign = conv == Convention::PlusTwoU ? 1.0 : -1.0;
  const double du = sign * jet.du;
  const double d2u = sign * jet.d2u;
  const double q = 1.0 - jet.s * jet.s;
  const double grad2 = 0.5 * du * du * q;
  return {0.5 - q * d2u + jet.s * du + grad2, 0.5 + jet.s * du - grad2};
}

double sigma2_point(SchoutenEigs eigs, int n) {
  if (n < 2) throw DomainError("sigma2_point: requires n >= 2");
  const double m = n - 1;
  return 0.5 * m * (m - 1) * eigs.lambda_t * eigs.lambda_t + m * eigs.lambda_r * eigs.lambda_t;
}

double scalar_sigma1(SchoutenEigs eigs, int n) {
  if (n < 1) throw DomainError("scalar_sigma1: requires n >= 1");
  return eigs.lambda_r + (n - 1) * eigs.lambda_t;
}

double scalar_curvature(SchoutenEigs eigs, int n) {
  return 2.0 * (n - 1) * scalar_sigma1(eigs, n);
}

EigenProfile to_profile(SchoutenEigs eigs, int n) {
  return EigenProfile::compressed(eigs.lambda_r, eigs.lambda_t, n - 1);
}

double weight(double s, int n) {
  if (std::abs(s) > 1.0) throw DomainError("weight: |s| must be <= 1");
  const double q = 1.0 - s * s;
  // Integer powers for even n keep the weight an exact polynomial.
  if (n % 2 == 0) {
    double w = 1.0;
    for (int i = 0; i < (n - 2) / 2; ++i) w *= q;
    return w;
  }
  return std::pow(q, 0.5 * (n - 2));
}

double sphere_area(int m) {
  if (m < 1) throw DomainError("sphere_area: requires m >= 1");
  const double h = 0.5 * (m + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

}  // namespace sigmaflow
