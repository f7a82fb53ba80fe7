#pragma once

#include <span>
#include <variant>
#include <vector>

#include "aitest/discrete.hpp"
#include "aitest/units.hpp"

namespace aitest {

/// Two full-support distributions over the same finite space.
struct DiscretePair {
  DiscreteDist p;
  DiscreteDist q;
};

/// Two densities sampled on a shared uniform grid. Values are used as given
/// (no renormalization).
struct GridPair {
  std::vector<double> p_vals;
  std::vector<double> q_vals;
  double step = 0.0;
};

using GofInput = std::variant<DiscretePair, GridPair>;

/// Total absolute log-ratio between p and q: sum_i |log(p_i/q_i)| for
/// discrete input, the trapezoid rule for the integral of |log(p/q)| on a
/// grid. Zero iff p == q. Throws ShapeError on length mismatch (or a grid
/// with fewer than two points) and DomainError on non-positive values or
/// step.
double gof_statistic(const GofInput& input, const InfoUnit& unit);

/// max_i |log(p_i/q_i)| <= gof_statistic. Always true; kept as a self-test.
bool singleton_bound_check(const DiscretePair& input, const InfoUnit& unit);

/// Active information of the event made of the listed points:
/// log(sum_E p / sum_E q). Throws ShapeError for an empty or out-of-range
/// event.
double event_active_information(const DiscretePair& input, std::span<const std::size_t> event, const InfoUnit& unit);

/// event_active_information(E) <= gof_statistic for a nonnegative event
/// value. (Events with negative active information pass trivially.)
bool event_bound_check(const DiscretePair& input, std::span<const std::size_t> event, const InfoUnit& unit);

}  // namespace aitest
