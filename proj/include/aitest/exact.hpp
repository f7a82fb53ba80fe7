#pragma once

#include <cmath>

#include "aitest/prior.hpp"
#include "aitest/reference.hpp"
#include "aitest/units.hpp"

namespace aitest {

enum class Sidedness { OneSidedUpper, TwoSided };

/// Exact: the threshold whose tail probability is exactly alpha.
/// PaperTable: asinh(1 - alpha) for every alpha, the formula the published
/// coin-toss two-sided table applies across all rows. Only defined for the
/// coin reference under the uniform prior.
enum class CriticalMode { Exact, PaperTable };

/// Active information I+ = log(p / q_eff) of an observed exogenous
/// probability. In nats it lies in (-inf, -ln q_eff]; zero iff p == q_eff.
struct ActiveInfoStatistic {
  InfoValue value;

  double nats() const { return value.in_nats(); }
};

/// Throws DomainError unless 0 < p <= 1.
ActiveInfoStatistic actinfo(double p, const ReferenceModel& ref, const InfoUnit& unit);

/// P[I+ <= x] with p ~ prior: prior_cdf(q_eff * e^n) below the support
/// maximum -ln q_eff, 1 at and above it.
double cdf_one_sided(const InfoValue& x, const ReferenceModel& ref, const Prior& prior = {});
/// P[I+ > x] = 1 - cdf_one_sided.
double tail_one_sided(const InfoValue& x, const ReferenceModel& ref, const Prior& prior = {});

// Uniform-prior two-sided CDF on each side of the kink at n = -ln q.
// Exposed so continuity at the kink can be checked branch against branch.
inline double cdf_two_sided_inner_branch(double n, double q) { return 2.0 * q * std::sinh(n); }
inline double cdf_two_sided_outer_branch(double n, double q) { return 1.0 - q * std::exp(-n); }

/// P[|I+| <= n], n in nats. Throws DomainError for n < 0 or NaN.
double cdf_two_sided(double n, const ReferenceModel& ref, const Prior& prior = {});
/// P[|I+| > n] = 1 - cdf_two_sided.
double tail_two_sided(double n, const ReferenceModel& ref, const Prior& prior = {});
/// Density of |I+| in nats under the uniform prior: 2 q cosh n up to the
/// kink, q e^{-n} beyond. For the coin the first branch is the catenary.
double pdf_two_sided(double n, const ReferenceModel& ref);

/// Smallest t with tail_one_sided(t) <= alpha, reported in `unit`.
/// Throws DomainError unless 0 < alpha < 1.
InfoValue critical_one_sided(double alpha, const ReferenceModel& ref, const Prior& prior, const InfoUnit& unit);

/// Two-sided critical value in nats. Exact mode solves
/// tail_two_sided(n) = alpha (closed form under the uniform prior, bisection
/// otherwise; +inf when the tail never drops to alpha within the search
/// bracket). Throws DomainError for alpha outside (0,1) and
/// UnsupportedModeError for PaperTable outside the coin/uniform case.
InfoValue critical_two_sided(double alpha, const ReferenceModel& ref, const Prior& prior = {},
                             CriticalMode mode = CriticalMode::Exact);

}  // namespace aitest
