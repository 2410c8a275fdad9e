#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sigmaflow/errors.hpp"
#include "sigmaflow/grid.hpp"
#include "sigmaflow/sphere_geometry.hpp"
#include "support/oracles.hpp"

namespace sigmaflow {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(SchoutenEigs, RoundSphere) {
  for (auto conv : {Convention::MinusTwoU, Convention::PlusTwoU}) {
    const auto e = schouten_eigs(PointJet{0.3, 0.0, 0.0, 0.0, 5}, conv);
    EXPECT_DOUBLE_EQ(e.lambda_r, 0.5);
    EXPECT_DOUBLE_EQ(e.lambda_t, 0.5);
    // Constants drop out: only derivatives enter.
    const auto c = schouten_eigs(PointJet{-0.7, 4.2, 0.0, 0.0, 6}, conv);
    EXPECT_DOUBLE_EQ(c.lambda_r, 0.5);
    EXPECT_DOUBLE_EQ(c.lambda_t, 0.5);
  }
}

TEST(SchoutenEigs, FamilyAtOrigin) {
  // u = -s^2: u' = -2s, u'' = -2.
  const auto e = schouten_eigs(PointJet{0.0, 0.0, 0.0, -2.0, 5}, Convention::PlusTwoU);
  EXPECT_DOUBLE_EQ(e.lambda_r, 2.5);
  EXPECT_DOUBLE_EQ(e.lambda_t, 0.5);
}

TEST(SchoutenEigs, InvalidJet) {
  EXPECT_THROW(schouten_eigs(PointJet{1.0, 0, 0, 0, 5}, Convention::PlusTwoU), DomainError);
  EXPECT_THROW(schouten_eigs(PointJet{-1.0, 0, 0, 0, 5}, Convention::PlusTwoU), DomainError);
  EXPECT_THROW(schouten_eigs(PointJet{0.0, 0, 0, 0, 4}, Convention::PlusTwoU), DomainError);
}

TEST(SchoutenEigs, ConventionSymmetry) {
  std::mt19937_64 rng(testing::suite_seed() + 20);
  std::uniform_real_distribution<double> s(-0.999, 0.999), v(-5.0, 5.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const PointJet j{s(rng), v(rng), v(rng), v(rng), 5 + trial % 6};
    const PointJet neg{j.s, -j.u, -j.du, -j.d2u, j.n};
    const auto a = schouten_eigs(j, Convention::PlusTwoU);
    const auto b = schouten_eigs(neg, Convention::MinusTwoU);
    EXPECT_NEAR(a.lambda_r, b.lambda_r, 1e-13);
    EXPECT_NEAR(a.lambda_t, b.lambda_t, 1e-13);
  }
}

TEST(SchoutenEigs, FamilyPolynomials) {
  for (int i = 0; i < 100; ++i) {
    const double ell = 0.01 + 100.0 * i / 99.0;
    for (int k = 0; k < 100; ++k) {
      const double s = -0.99 + 1.98 * k / 99.0;
      const auto e = schouten_eigs(PointJet{s, -ell * s * s, -2 * ell * s, -2 * ell, 5},
                                   Convention::PlusTwoU);
      const double q = s * s * (1 - s * s);
      const double lr = 0.5 + 2 * ell - 4 * ell * s * s + 2 * ell * ell * q;
      const double lt = 0.5 - 2 * ell * s * s - 2 * ell * ell * q;
      // Relative to the sum of term magnitudes; lambda_t crosses zero.
      const double scale_r = 0.5 + 2 * ell + 4 * ell * s * s + 2 * ell * ell * q;
      const double scale_t = 0.5 + 2 * ell * s * s + 2 * ell * ell * q;
      ASSERT_LE(std::abs(e.lambda_r - lr), 1e-12 * scale_r) << ell << " " << s;
      ASSERT_LE(std::abs(e.lambda_t - lt), 1e-12 * scale_t) << ell << " " << s;
    }
  }
}

TEST(Sigma2Point, Examples) {
  EXPECT_DOUBLE_EQ(sigma2_point({0.5, 0.5}, 5), 2.5);
  EXPECT_DOUBLE_EQ(sigma2_point({2.5, 0.5}, 5), 6.5);
}

TEST(Sigma2Point, AgreesWithExpandedProfile) {
  std::mt19937_64 rng(testing::suite_seed() + 21);
  std::uniform_real_distribution<double> v(-3.0, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 9;
    const SchoutenEigs e{v(rng), v(rng)};
    const auto full = to_profile(e, n).expanded();
    ASSERT_EQ(static_cast<int>(full.size()), n);
    EXPECT_NEAR(sigma2_point(e, n), sigma_k(std::span<const double>(full), 2), 1e-13 * 100);
    EXPECT_NEAR(sigma2_point(e, n), testing::sigma_k_by_subsets(full, 2), 1e-11);
  }
}

TEST(ScalarSigma1, Examples) {
  EXPECT_DOUBLE_EQ(scalar_sigma1({0.5, 0.5}, 5), 2.5);
  EXPECT_DOUBLE_EQ(scalar_curvature({0.5, 0.5}, 5), 20.0);
  EXPECT_DOUBLE_EQ(scalar_sigma1({2.5, 0.5}, 5), 4.5);
}

TEST(Weight, Values) {
  EXPECT_DOUBLE_EQ(weight(0.0, 5), 1.0);
  EXPECT_DOUBLE_EQ(weight(1.0, 5), 0.0);
  EXPECT_DOUBLE_EQ(weight(-1.0, 7), 0.0);
  const auto gl = gauss_legendre(200);
  double sum = 0.0;
  for (int i = 0; i < gl.order(); ++i) sum += gl.weights[i] * weight(gl.nodes[i], 5);
  // (1 - s^2)^(3/2) is not polynomial, so the rule is only algebraically convergent.
  EXPECT_LE(testing::relative_error(sum, 3 * kPi / 8), 1e-10);
  EXPECT_LE(testing::relative_error(sphere_area(4) * sum, kPi * kPi * kPi), 1e-10);
}

TEST(SphereArea, Values) {
  EXPECT_NEAR(sphere_area(1), 2 * kPi, 1e-14);
  EXPECT_NEAR(sphere_area(2), 4 * kPi, 1e-14);
  EXPECT_NEAR(sphere_area(4), 8 * kPi * kPi / 3, 1e-13);
  EXPECT_NEAR(sphere_area(4), 26.3189, 1e-4);
}

}  // namespace
}  // namespace sigmaflow
