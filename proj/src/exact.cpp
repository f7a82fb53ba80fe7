#include "aitest/exact.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "aitest/errors.hpp"

namespace aitest {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0,1), got " + std::to_string(alpha));
  }
}

void require_two_sided_threshold(double n) {
  if (!(n >= 0.0)) throw DomainError("two-sided threshold must be >= 0 nats");
}

}  // namespace

ActiveInfoStatistic actinfo(double p, const ReferenceModel& ref, const InfoUnit& unit) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw DomainError("exogenous probability must lie in (0,1], got " + std::to_string(p));
  }
  // log p - log q_eff; p == 1 lands exactly on the support maximum.
  const double nats = std::log(p) + ref.neg_log_q();
  return {convert(InfoValue{nats, InfoUnit::nats()}, unit)};
}

double cdf_one_sided(const InfoValue& x, const ReferenceModel& ref, const Prior& prior) {
  const double n = x.in_nats();
  if (std::isnan(n)) throw DomainError("threshold is NaN");
  if (n >= ref.neg_log_q()) return 1.0;
  if (n == -kInf) return 0.0;
  const double p = ref.q() * std::exp(n);
  return prior.is_uniform() ? p : prior_cdf(prior, p);
}

double tail_one_sided(const InfoValue& x, const ReferenceModel& ref, const Prior& prior) {
  return 1.0 - cdf_one_sided(x, ref, prior);
}

double cdf_two_sided(double n, const ReferenceModel& ref, const Prior& prior) {
  require_two_sided_threshold(n);
  if (n == kInf) return 1.0;
  const double q = ref.q();
  const bool inside = n <= ref.neg_log_q();
  if (prior.is_uniform()) {
    return inside ? cdf_two_sided_inner_branch(n, q) : cdf_two_sided_outer_branch(n, q);
  }
  const double upper = inside ? prior_cdf(prior, q * std::exp(n)) : 1.0;
  return upper - prior_cdf(prior, q * std::exp(-n));
}

double tail_two_sided(double n, const ReferenceModel& ref, const Prior& prior) {
  return 1.0 - cdf_two_sided(n, ref, prior);
}

double pdf_two_sided(double n, const ReferenceModel& ref) {
  require_two_sided_threshold(n);
  const double q = ref.q();
  return n <= ref.neg_log_q() ? 2.0 * q * std::cosh(n) : q * std::exp(-n);
}

InfoValue critical_one_sided(double alpha, const ReferenceModel& ref, const Prior& prior, const InfoUnit& unit) {
  require_alpha(alpha);
  const double nats = prior.is_uniform() ? std::log1p(-alpha) + ref.neg_log_q()
                                         : std::log(prior_quantile(prior, 1.0 - alpha)) + ref.neg_log_q();
  return convert(InfoValue{nats, InfoUnit::nats()}, unit);
}

InfoValue critical_two_sided(double alpha, const ReferenceModel& ref, const Prior& prior, CriticalMode mode) {
  require_alpha(alpha);
  const auto nats = [](double v) { return InfoValue{v, InfoUnit::nats()}; };
  const double q = ref.q();

  if (mode == CriticalMode::PaperTable) {
    if (q != 0.5 || !prior.is_uniform()) {
      throw UnsupportedModeError("paper-table mode is only defined for the coin reference with a uniform prior");
    }
    return nats(std::asinh(1.0 - alpha));
  }

  if (prior.is_uniform()) {
    // The tail equals q^2 at the kink n = -ln q.
    if (alpha >= q * q) return nats(std::asinh((1.0 - alpha) / (2.0 * q)));
    return nats(std::log(q / alpha));
  }

  double lo = 0.0;
  double hi = ref.neg_log_q() + 60.0;
  if (tail_two_sided(hi, ref, prior) > alpha) return nats(kInf);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (tail_two_sided(mid, ref, prior) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return nats(hi);
}

}  // namespace aitest
