#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace aitest {

/// Distribution F of the exogenous probability p on (0, 1].
///
/// Uniform01 is the default. Beta(1,1) is treated as Uniform01 everywhere so
/// the two are observably identical. Empirical tables are interpolated
/// linearly between knots, with an implicit knot at (0, 0).
class Prior {
 public:
  struct Uniform01 {};
  struct Beta {
    double a;
    double b;
  };
  struct Empirical {
    std::vector<std::pair<double, double>> table;  // (p_i, F_i)
  };

  Prior() = default;
  static Prior uniform() { return Prior(); }
  /// Throws DomainError unless a > 0 and b > 0.
  static Prior beta(double a, double b);
  /// Throws ValidationError unless p_i strictly increasing in (0,1],
  /// F_i nondecreasing in [0,1] and the last F_i equal to 1.
  static Prior empirical(std::vector<std::pair<double, double>> table);

  /// True for Uniform01 and Beta(1,1): closed forms apply.
  bool is_uniform() const;
  const std::variant<Uniform01, Beta, Empirical>& variant() const { return v_; }

  std::string describe() const;

 private:
  std::variant<Uniform01, Beta, Empirical> v_;
};

/// Smallest value in the prior's support; samples and quantiles never go
/// below it.
inline constexpr double kMinProbability = 2.2250738585072014e-308;

double prior_cdf(const Prior& prior, double p);

/// Inverse of prior_cdf: the smallest p in (0,1] with prior_cdf(p) >= u.
/// Throws DomainError for u outside [0,1].
double prior_quantile(const Prior& prior, double u);

/// One draw by inversion of a (0,1] uniform variate.
double prior_draw(const Prior& prior, std::mt19937_64& rng);

/// `count` deterministic draws for `seed`.
std::vector<double> prior_sample(const Prior& prior, std::uint64_t seed, std::size_t count);

/// {"type":"uniform"}, {"type":"beta","a":..,"b":..},
/// {"type":"empirical","table":[[p,F],...]}. Throws ValidationError.
Prior prior_from_json(const nlohmann::json& j);
nlohmann::json prior_to_json(const Prior& prior);

}  // namespace aitest
