#pragma once

#include <string>
#include <string_view>

namespace aitest {

/// The endogenous (baseline) model the statistic is measured against:
/// uniform search over N outcomes (q = 1/N) or a raw event probability q.
class ReferenceModel {
 public:
  enum class Kind { UniformN, EventProb };

  /// Throws DomainError for n < 2.
  static ReferenceModel uniform(long long n);
  /// Throws DomainError unless 0 < q < 1.
  static ReferenceModel event(double q);
  static ReferenceModel coin() { return uniform(2); }

  Kind kind() const { return kind_; }
  long long n() const { return n_; }
  /// Endogenous probability q_eff: 1/N or q.
  double q() const { return q_; }
  /// -ln q_eff, the largest attainable statistic in nats. Computed as ln N
  /// for UniformN so it agrees bit-for-bit with log-domain thresholds.
  double neg_log_q() const { return neg_log_q_; }

  /// `uniform:N` or `event:q`.
  std::string name() const;

 private:
  ReferenceModel(Kind k, long long n, double q, double nlq) : kind_(k), n_(n), q_(q), neg_log_q_(nlq) {}
  Kind kind_;
  long long n_;
  double q_;
  double neg_log_q_;
};

/// Parses `uniform:N` or `event:q`. Throws ValidationError.
ReferenceModel parse_reference(std::string_view text);

}  // namespace aitest
