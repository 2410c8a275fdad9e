#pragma once

// Explicit sphere examples and parameter sweeps.
//
// The family g_ell = exp(-2 ell s^2) g_0 (PlusTwoU with u = -ell s^2) has
// sigma_2 concentrating in an O(ell^{-1/2}) band around the equator; its
// integrals are compared against their large-ell leading terms.

#include <span>
#include <vector>

#include "sigmaflow/flow.hpp"

namespace sigmaflow {

struct FamilyPoint {
  double ell = 0.0;
  int n = 5;
  double F2 = 0.0;
  double vol = 0.0;
  double total_scalar = 0.0;     ///< int R dvol
  double sigma1_integral = 0.0;  ///< int sigma_1 dvol = total_scalar / (2(n-1))
  double quotient_vol = 0.0;     ///< F2 / vol^((n-4)/n)
  double quotient_scalar = 0.0;  ///< F2 / total_scalar^((n-4)/(n-2))
};

/// Above this ell the integrals switch to t = sqrt(ell) s with dyadic panels.
inline constexpr double kConcentrationThreshold = 50.0;

/// Throws DomainError for n < 5 or ell <= 0, EvaluationError on quadrature failure.
FamilyPoint family_point(double ell, int n, int quad_order = 200);

/// Large-ell leading terms of F2, vol and total scalar curvature.
struct LeadingTerms {
  double F2 = 0.0;
  double vol = 0.0;
  double total_scalar = 0.0;
};

LeadingTerms leading_terms(double ell, int n);

struct AsymptoticRow {
  FamilyPoint point;
  double F2_ratio = 0.0;
  double vol_ratio = 0.0;
  double scalar_ratio = 0.0;
};

/// One row per ell (input order). Requires ells strictly increasing and > 10.
/// `jobs` > 1 evaluates points on worker threads.
std::vector<AsymptoticRow> asymptotic_ratios(std::span<const double> ells, int n,
                                             int quad_order = 200, int jobs = 1);

/// Frozen deviation tolerances |ratio - 1| for the asymptotic table; the
/// tolerance for an ell is that of the largest tabulated ell not above it.
struct RatioTolerance {
  double ell;
  double F2;
  double vol;
  double scalar;
};

std::span<const RatioTolerance> ratio_tolerances() noexcept;

/// Violations of ratio_tolerances() in a table (empty when all pass).
std::vector<std::string> check_ratio_tolerances(std::span<const AsymptoticRow> rows);

struct SweepRow {
  double eps = 0.0;
  FlowStatus status = FlowStatus::StepFailure;
  double tildeF2eps = 0.0;    ///< tilde F_{2,eps} of the final metric
  double tildeF2zero = 0.0;   ///< tilde F_{2,0} of the final metric
  double holder_bound = 0.0;  ///< lower bound for tildeF2eps
  bool holder_ok = false;
  double final_time = 0.0;
  double residual = 0.0;
  std::size_t steps = 0;
  std::string message;
};

/// Relative slack allowed in the Hoelder comparison (equality on round metrics).
inline constexpr double kHolderSlack = 1e-8;

/// Runs the flow from u0 for each eps (config.eps is overridden). Rows follow
/// eps_list order; non-converged runs are reported, not thrown.
std::vector<SweepRow> eps_sweep(const FlowConfig& config, const ConformalFactor& u0,
                                std::span<const double> eps_list, int jobs = 1);

}  // namespace sigmaflow
