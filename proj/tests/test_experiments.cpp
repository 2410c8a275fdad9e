#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sigmaflow/errors.hpp"
#include "sigmaflow/experiments.hpp"
#include "support/oracles.hpp"

namespace sigmaflow {
namespace {

constexpr double kPi = std::numbers::pi;
const double kPi3 = kPi * kPi * kPi;

// Reference values for n = 5 from tests/oracles/family_oracle.py
// (mpmath, 40 digits, adaptive tanh-sinh).
struct Frozen {
  double ell, F2, vol, scalar;
};
constexpr Frozen kFrozen[] = {
    {3.0, 13.909548759471402, 11.458030305025482, 534.04014115733265},
    {10.0, -1335.146796726016595, 6.4989720070919256, 767.53624396308288},
    {100.0, -86325.970016630370, 2.0830848999147075, 2181.5967393263827},
    {1000.0, -2927567.1775075256, 0.65961916840312666, 6822.0574201637591},
    {1600.0, -5942230.2157145975, 0.52150407389355768, 8625.2551584253343},
    {10000.0, -93225951.331941528, 0.20861805758251962, 21548.996853341331},
};

TEST(FamilyPoint, MatchesOracle) {
  for (const auto& f : kFrozen) {
    const auto p = family_point(f.ell, 5);
    EXPECT_LE(testing::relative_error(p.F2, f.F2), 1e-9) << f.ell;
    EXPECT_LE(testing::relative_error(p.vol, f.vol), 1e-9) << f.ell;
    EXPECT_LE(testing::relative_error(p.total_scalar, f.scalar), 1e-9) << f.ell;
    EXPECT_LE(testing::relative_error(p.sigma1_integral, f.scalar / 8.0), 1e-9) << f.ell;
  }
}

TEST(FamilyPoint, FourfoldRefinement) {
  for (double ell : {0.5, 10.0, 49.0, 51.0, 400.0, 1600.0, 1e5}) {
    const auto a = family_point(ell, 5, 200);
    const auto b = family_point(ell, 5, 800);
    EXPECT_LE(testing::relative_error(a.F2, b.F2), 1e-9) << ell;
    EXPECT_LE(testing::relative_error(a.vol, b.vol), 1e-9) << ell;
    EXPECT_LE(testing::relative_error(a.total_scalar, b.total_scalar), 1e-9) << ell;
  }
}

TEST(FamilyPoint, ThresholdContinuity) {
  // Both quadrature routes agree around the switch.
  const auto below = family_point(kConcentrationThreshold, 5);
  const auto above = family_point(std::nextafter(kConcentrationThreshold, 100.0), 5);
  EXPECT_LE(testing::relative_error(below.F2, above.F2), 1e-9);
  EXPECT_LE(testing::relative_error(below.vol, above.vol), 1e-9);
}

TEST(FamilyPoint, RoundSphereLimit) {
  const auto p = family_point(1e-8, 5);
  EXPECT_LE(testing::relative_error(p.F2, 2.5 * kPi3), 1e-7);
  EXPECT_LE(testing::relative_error(p.vol, kPi3), 1e-7);
  EXPECT_LE(testing::relative_error(p.total_scalar, 20 * kPi3), 1e-7);
  // Deviation shrinks linearly in ell.
  const double d1 = std::abs(family_point(1e-3, 5).vol - kPi3);
  const double d2 = std::abs(family_point(1e-4, 5).vol - kPi3);
  EXPECT_NEAR(d1 / d2, 10.0, 0.1);
}

TEST(FamilyPoint, Ell1600) {
  const auto p = family_point(1600.0, 5);
  const double lead = sphere_area(4) * std::sqrt(kPi) / std::sqrt(5 * 1600.0);
  EXPECT_LE(testing::relative_error(p.vol, lead), 1e-2);
  EXPECT_LT(p.F2, 0.0);
}

TEST(FamilyPoint, Domain) {
  try {
    family_point(100.0, 4);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("requires n >= 5"), std::string::npos);
  }
  EXPECT_THROW(family_point(0.0, 5), DomainError);
  EXPECT_THROW(family_point(-1.0, 5), DomainError);
}

TEST(FamilyPoint, PositiveVolumeAndScalar) {
  for (int n : {5, 6, 7}) {
    for (double ell : {1.0, 20.0, 300.0, 5000.0}) {
      const auto p = family_point(ell, n);
      EXPECT_GT(p.vol, 0.0);
      EXPECT_GT(p.total_scalar, 0.0);
    }
  }
}

TEST(AsymptoticRatios, OracleDeviations) {
  const std::vector<double> ells{100.0, 1000.0, 10000.0};
  const auto rows = asymptotic_ratios(ells, 5);
  ASSERT_EQ(rows.size(), 3u);
  const double f2[] = {0.925269096924, 0.992278221874, 0.999225282753};
  const double vol[] = {0.99850112594, 0.999850011251, 0.999985000113};
  const double sc[] = {1.01251555104, 1.00125015618, 1.00012500156};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(rows[i].F2_ratio, f2[i], 1e-9);
    EXPECT_NEAR(rows[i].vol_ratio, vol[i], 1e-9);
    EXPECT_NEAR(rows[i].scalar_ratio, sc[i], 1e-9);
  }
  EXPECT_LE(std::abs(rows[0].F2_ratio - 1), 0.15);
  EXPECT_LE(std::abs(rows[1].F2_ratio - 1), 0.05);
  EXPECT_LE(std::abs(rows[2].F2_ratio - 1), 0.02);
  EXPECT_LE(std::abs(rows[2].vol_ratio - 1), 1e-3);
  EXPECT_TRUE(check_ratio_tolerances(rows).empty());
}

TEST(AsymptoticRatios, MonotoneApproachAtRateOneOverEll) {
  const std::vector<double> ells{20.0, 100.0, 1000.0, 10000.0, 100000.0};
  const auto rows = asymptotic_ratios(ells, 5);
  auto dev = [&](std::size_t i, int which) {
    const auto& r = rows[i];
    return std::abs((which == 0 ? r.F2_ratio : which == 1 ? r.vol_ratio : r.scalar_ratio) - 1.0);
  };
  for (int which = 0; which < 3; ++which) {
    for (std::size_t i = 2; i < rows.size(); ++i) {
      EXPECT_LT(dev(i, which), dev(i - 1, which));
      // O(1/ell): ell * deviation constant within a factor of 3.
      const double c_prev = ells[i - 1] * dev(i - 1, which);
      const double c_here = ells[i] * dev(i, which);
      EXPECT_LT(c_here / c_prev, 3.0);
      EXPECT_GT(c_here / c_prev, 1.0 / 3.0);
    }
  }
}

TEST(AsymptoticRatios, QuotientsDiverge) {
  const std::vector<double> ells{100.0, 400.0, 1600.0, 6400.0, 25600.0};
  const auto rows = asymptotic_ratios(ells, 5);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_LT(rows[i].point.quotient_vol, 0.0);
    EXPECT_LT(rows[i].point.quotient_scalar, 0.0);
    if (i > 0) {
      EXPECT_LT(rows[i].point.quotient_vol, rows[i - 1].point.quotient_vol);
      EXPECT_LT(rows[i].point.quotient_scalar, rows[i - 1].point.quotient_scalar);
    }
  }
}

TEST(AsymptoticRatios, ParallelMatchesSerial) {
  const std::vector<double> ells{20.0, 200.0, 2000.0, 20000.0};
  const auto serial = asymptotic_ratios(ells, 6, 200, 1);
  const auto parallel = asymptotic_ratios(ells, 6, 200, 4);
  for (std::size_t i = 0; i < ells.size(); ++i) {
    EXPECT_EQ(serial[i].point.F2, parallel[i].point.F2);
    EXPECT_EQ(serial[i].F2_ratio, parallel[i].F2_ratio);
  }
}

TEST(AsymptoticRatios, Preconditions) {
  const std::vector<double> unsorted{1000.0, 100.0};
  const std::vector<double> small{5.0, 100.0};
  EXPECT_THROW(asymptotic_ratios(unsorted, 5), DomainError);
  EXPECT_THROW(asymptotic_ratios(small, 5), DomainError);
}

TEST(EpsSweep, RoundSphereClosedForm) {
  FlowConfig c;
  c.grid_size = 32;
  const ConformalFactor u0(Grid::make(32), Eigen::VectorXd::Zero(32), 5);
  const std::vector<double> eps{0.2, 0.1, 0.05};
  const auto rows = eps_sweep(c, u0, eps);
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].eps, eps[i]);
    EXPECT_EQ(rows[i].status, FlowStatus::Converged);
    const double want = 2.5 * std::pow(kPi3, 1.0 - 1.0 / (5.0 - 2.0 * eps[i]));
    EXPECT_LE(testing::relative_error(rows[i].tildeF2eps, want), 1e-9);
    EXPECT_TRUE(rows[i].holder_ok);
  }
}

TEST(EpsSweep, Cos2GapsShrink) {
  FlowConfig c;
  c.grid_size = 64;
  c.scheme = StepScheme::Heun;
  const auto u0 = ConformalFactor::from_theta(
      Grid::make(64), [](double t) { return 0.2 * std::cos(2 * t); }, 5, Convention::PlusTwoU);
  const std::vector<double> eps{0.2, 0.1, 0.05};
  const auto rows = eps_sweep(c, u0, eps, 3);
  for (const auto& r : rows) {
    ASSERT_EQ(r.status, FlowStatus::Converged) << r.message;
    EXPECT_TRUE(r.holder_ok);
    EXPECT_GE(r.tildeF2eps, r.holder_bound * (1 - kHolderSlack));
  }
  EXPECT_LT(std::abs(rows[1].tildeF2eps - rows[2].tildeF2eps),
            std::abs(rows[0].tildeF2eps - rows[1].tildeF2eps));
}

TEST(EpsSweep, RejectsEpsOutsideRange) {
  FlowConfig c;
  c.grid_size = 32;
  const ConformalFactor u0(Grid::make(32), Eigen::VectorXd::Zero(32), 5);
  const std::vector<double> bad{0.1, 1.0};
  EXPECT_THROW(eps_sweep(c, u0, bad), DomainError);
}

}  // namespace
}  // namespace sigmaflow
