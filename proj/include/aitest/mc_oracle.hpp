#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aitest/discrete.hpp"
#include "aitest/exact.hpp"

namespace aitest {

/// A Monte Carlo probability estimate with its binomial standard error
/// sqrt(estimate (1 - estimate) / n_samples).
struct MCEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Binomial standard error of a proportion `prob` estimated from n draws.
double binomial_se(double prob, std::uint64_t n);

/// |estimate - exact| <= k standard errors, with the SE evaluated at the
/// exact probability. When exact is 0 or 1 the estimate must match it.
bool agrees_within(const MCEstimate& est, double exact, double k);

/// Fraction of n prior draws whose statistic (one-sided) or |statistic|
/// (two-sided) is <= threshold. Deterministic given seed. Draws are split
/// into fixed chunks with independent substreams and counted in parallel.
MCEstimate empirical_cdf(const InfoValue& threshold, Sidedness sidedness, const ReferenceModel& ref,
                         const Prior& prior, std::uint64_t seed, std::uint64_t n);

/// Empirical (1 - alpha)-quantile of the statistic (or its magnitude), in
/// nats. Throws DomainError for alpha outside (0,1) and PreconditionError
/// for n < 1000.
double empirical_critical(double alpha, Sidedness sidedness, const ReferenceModel& ref, const Prior& prior,
                          std::uint64_t seed, std::uint64_t n);

/// Asymptotic standard error of an empirical quantile:
/// sqrt(alpha (1 - alpha) / n) / density, with the density of the statistic
/// (in nats) at `critical_nats` taken from one-sided differences of the exact
/// CDF. Where the density jumps, the smaller side is used.
double quantile_standard_error(double alpha, double critical_nats, Sidedness sidedness, const ReferenceModel& ref,
                               const Prior& prior, std::uint64_t n);

struct BoundCheckRow {
  double x = 0.0;
  double lhs = 0.0;        // P[-ln(r p(X) / v(X)) >= x], X ~ p
  double std_error = 0.0;  // zero when enumerated
  double bound = 0.0;      // e^{-x}
  bool holds = false;      // lhs <= bound + 3 SE
};

enum class BoundMethod { Auto, Enumerate, Sample };

/// Checks the conservation inequality P[-ln(r p(X)/v(X)) >= x] <= e^{-x}
/// on a finite space. Auto enumerates when the space has at most 20 points
/// and samples otherwise. Points with v = 0 never satisfy the event.
///
/// Requires v >= 0 with total mass sum(v) <= r (the integral of v over the
/// space bounded by r); throws PreconditionError otherwise and ShapeError
/// when v and p differ in length.
std::vector<BoundCheckRow> conservation_bound_check(const DiscreteDist& p, std::span<const double> v, double r,
                                                    std::span<const double> x_grid, std::uint64_t seed,
                                                    std::uint64_t n, BoundMethod method = BoundMethod::Auto);

}  // namespace aitest
