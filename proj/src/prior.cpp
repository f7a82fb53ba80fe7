#include "aitest/prior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "aitest/errors.hpp"
#include "aitest/rng.hpp"
#include "aitest/special.hpp"

namespace aitest {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double empirical_cdf(const Prior::Empirical& e, double p) {
  const auto& t = e.table;
  auto it = std::lower_bound(t.begin(), t.end(), p,
                             [](const auto& knot, double x) { return knot.first < x; });
  if (it == t.end()) return 1.0;
  if (it->first == p) return it->second;
  const double p0 = it == t.begin() ? 0.0 : std::prev(it)->first;
  const double f0 = it == t.begin() ? 0.0 : std::prev(it)->second;
  return f0 + (it->second - f0) * (p - p0) / (it->first - p0);
}

double empirical_quantile(const Prior::Empirical& e, double u) {
  const auto& t = e.table;
  auto it = std::lower_bound(t.begin(), t.end(), u,
                             [](const auto& knot, double x) { return knot.second < x; });
  if (it == t.end()) return t.back().first;
  const double p0 = it == t.begin() ? 0.0 : std::prev(it)->first;
  const double f0 = it == t.begin() ? 0.0 : std::prev(it)->second;
  if (it->second == f0) return it->first;
  return p0 + (u - f0) / (it->second - f0) * (it->first - p0);
}

// Newton steps inside a shrinking bisection bracket. Converges to full
// double precision; Newton proposals leaving the bracket fall back to
// bisection.
double beta_quantile(double a, double b, double u) {
  double lo = 0.0;
  double hi = 1.0;
  double x = std::clamp(std::pow(u * a * std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)), 1.0 / a),
                        1e-300, 1.0 - 1e-16);
  if (!std::isfinite(x)) x = 0.5;
  for (int it = 0; it < 400; ++it) {
    const double f = special::incomplete_beta(x, a, b) - u;
    if (f == 0.0) return x;
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * hi) break;
    const double density = special::beta_pdf(x, a, b);
    double next = density > 0.0 ? x - f / density : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) break;
    x = next;
  }
  return x;
}

}  // namespace

Prior Prior::beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("Beta prior requires a > 0 and b > 0");
  }
  Prior pr;
  pr.v_ = Beta{a, b};
  return pr;
}

Prior Prior::empirical(std::vector<std::pair<double, double>> table) {
  if (table.empty()) throw ValidationError("empirical prior table is empty");
  double prev_p = 0.0;
  double prev_f = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto [p, f] = table[i];
    if (!(p > prev_p) || !(p <= 1.0)) {
      throw ValidationError("empirical prior: p values must be strictly increasing in (0,1] (row " +
                            std::to_string(i) + ")");
    }
    if (!(f >= prev_f) || !(f <= 1.0)) {
      throw ValidationError("empirical prior: F values must be nondecreasing in [0,1] (row " +
                            std::to_string(i) + ")");
    }
    prev_p = p;
    prev_f = f;
  }
  if (table.back().second != 1.0) {
    throw ValidationError("empirical prior: last F value must equal 1");
  }
  Prior pr;
  pr.v_ = Empirical{std::move(table)};
  return pr;
}

bool Prior::is_uniform() const {
  if (std::holds_alternative<Uniform01>(v_)) return true;
  if (const auto* b = std::get_if<Beta>(&v_)) return b->a == 1.0 && b->b == 1.0;
  return false;
}

std::string Prior::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{[&](const Uniform01&) { os << "uniform"; },
                        [&](const Beta& b) { os << "beta(" << b.a << "," << b.b << ")"; },
                        [&](const Empirical& e) { os << "empirical(" << e.table.size() << " knots)"; }},
             v_);
  return os.str();
}

double prior_cdf(const Prior& prior, double p) {
  if (std::isnan(p)) throw DomainError("prior_cdf: p is NaN");
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  if (prior.is_uniform()) return p;
  return std::visit(Overloaded{[&](const Prior::Uniform01&) { return p; },
                               [&](const Prior::Beta& b) { return special::incomplete_beta(p, b.a, b.b); },
                               [&](const Prior::Empirical& e) { return empirical_cdf(e, p); }},
                    prior.variant());
}

double prior_quantile(const Prior& prior, double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw DomainError("prior_quantile: u must lie in [0,1]");
  }
  if (u == 0.0) return kMinProbability;
  double p = 0.0;
  if (prior.is_uniform()) {
    p = u;
  } else {
    p = std::visit(Overloaded{[&](const Prior::Uniform01&) { return u; },
                              [&](const Prior::Beta& b) { return u == 1.0 ? 1.0 : beta_quantile(b.a, b.b, u); },
                              [&](const Prior::Empirical& e) { return empirical_quantile(e, u); }},
                   prior.variant());
  }
  return std::clamp(p, kMinProbability, 1.0);
}

double prior_draw(const Prior& prior, std::mt19937_64& rng) {
  const double u = uniform_open_closed(rng);
  if (prior.is_uniform()) return u;
  return prior_quantile(prior, u);
}

std::vector<double> prior_sample(const Prior& prior, std::uint64_t seed, std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  for (std::uint64_t chunk = 0; out.size() < count; ++chunk) {
    auto rng = substream(seed, chunk);
    const std::size_t take = std::min<std::size_t>(kChunkSize, count - out.size());
    for (std::size_t i = 0; i < take; ++i) out.push_back(prior_draw(prior, rng));
  }
  return out;
}

Prior prior_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ValidationError("prior JSON must be an object with a string \"type\"");
  }
  const auto type = j["type"].get<std::string>();
  try {
    if (type == "uniform") return Prior::uniform();
    if (type == "beta") {
      if (!j.contains("a") || !j.contains("b")) throw ValidationError("beta prior needs \"a\" and \"b\"");
      return Prior::beta(j.at("a").get<double>(), j.at("b").get<double>());
    }
    if (type == "empirical") {
      if (!j.contains("table") || !j["table"].is_array()) {
        throw ValidationError("empirical prior needs a \"table\" array of [p, F] pairs");
      }
      std::vector<std::pair<double, double>> table;
      for (const auto& row : j["table"]) {
        if (!row.is_array() || row.size() != 2) throw ValidationError("empirical prior rows must be [p, F]");
        table.emplace_back(row[0].get<double>(), row[1].get<double>());
      }
      return Prior::empirical(std::move(table));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("prior JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  }
  throw ValidationError("unknown prior type '" + type + "'");
}

nlohmann::json prior_to_json(const Prior& prior) {
  return std::visit(Overloaded{[](const Prior::Uniform01&) { return nlohmann::json{{"type", "uniform"}}; },
                               [](const Prior::Beta& b) {
                                 return nlohmann::json{{"type", "beta"}, {"a", b.a}, {"b", b.b}};
                               },
                               [](const Prior::Empirical& e) {
                                 nlohmann::json table = nlohmann::json::array();
                                 for (const auto& [p, f] : e.table) table.push_back({p, f});
                                 return nlohmann::json{{"type", "empirical"}, {"table", table}};
                               }},
                    prior.variant());
}

}  // namespace aitest
