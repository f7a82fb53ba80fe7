#include "aitest/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

#include "aitest/errors.hpp"
#include "aitest/rng.hpp"

namespace aitest {
namespace {

unsigned worker_count(std::uint64_t chunks) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(hw, chunks));
}

// Runs body(chunk_index, rng, count) for every chunk, spread round-robin
// over worker threads. Each chunk owns substream(seed, chunk_index).
void for_each_chunk(std::uint64_t seed, std::uint64_t n,
                    const std::function<void(std::uint64_t, std::mt19937_64&, std::uint64_t)>& body) {
  const std::uint64_t chunks = (n + kChunkSize - 1) / kChunkSize;
  const unsigned workers = worker_count(chunks);
  auto run = [&](unsigned w) {
    for (std::uint64_t c = w; c < chunks; c += workers) {
      auto rng = substream(seed, c);
      body(c, rng, std::min(kChunkSize, n - c * kChunkSize));
    }
  };
  if (workers <= 1) {
    run(0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  for (auto& t : pool) t.join();
}

// Statistic in nats for a drawn p: ln p - ln q_eff.
double statistic_nats(double p, const ReferenceModel& ref) { return std::log(p) + ref.neg_log_q(); }

MCEstimate make_estimate(std::uint64_t hits, std::uint64_t n, std::uint64_t seed) {
  MCEstimate e;
  e.n_samples = n;
  e.seed = seed;
  e.estimate = static_cast<double>(hits) / static_cast<double>(n);
  e.std_error = binomial_se(e.estimate, n);
  return e;
}

}  // namespace

double binomial_se(double prob, std::uint64_t n) {
  return std::sqrt(prob * (1.0 - prob) / static_cast<double>(n));
}

bool agrees_within(const MCEstimate& est, double exact, double k) {
  return std::fabs(est.estimate - exact) <= k * binomial_se(exact, est.n_samples);
}

MCEstimate empirical_cdf(const InfoValue& threshold, Sidedness sidedness, const ReferenceModel& ref,
                         const Prior& prior, std::uint64_t seed, std::uint64_t n) {
  if (n == 0) throw PreconditionError("sample count must be >= 1");
  const double t = threshold.in_nats();
  if (std::isnan(t)) throw DomainError("threshold is NaN");
  const std::uint64_t chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<std::uint64_t> hits(chunks, 0);
  const bool two_sided = sidedness == Sidedness::TwoSided;
  for_each_chunk(seed, n, [&](std::uint64_t c, std::mt19937_64& rng, std::uint64_t count) {
    std::uint64_t h = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
      const double s = statistic_nats(prior_draw(prior, rng), ref);
      h += (two_sided ? std::fabs(s) : s) <= t;
    }
    hits[c] = h;
  });
  return make_estimate(std::accumulate(hits.begin(), hits.end(), std::uint64_t{0}), n, seed);
}

double empirical_critical(double alpha, Sidedness sidedness, const ReferenceModel& ref, const Prior& prior,
                          std::uint64_t seed, std::uint64_t n) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
  if (n < 1000) throw PreconditionError("empirical_critical needs at least 1000 samples");
  std::vector<double> stats(n);
  const bool two_sided = sidedness == Sidedness::TwoSided;
  for_each_chunk(seed, n, [&](std::uint64_t c, std::mt19937_64& rng, std::uint64_t count) {
    double* out = stats.data() + c * kChunkSize;
    for (std::uint64_t i = 0; i < count; ++i) {
      const double s = statistic_nats(prior_draw(prior, rng), ref);
      out[i] = two_sided ? std::fabs(s) : s;
    }
  });
  // Smallest order statistic with at least (1 - alpha) n values at or below it.
  const auto k = static_cast<std::uint64_t>(std::ceil((1.0 - alpha) * static_cast<double>(n)));
  const auto idx = std::clamp<std::uint64_t>(k, 1, n) - 1;
  std::nth_element(stats.begin(), stats.begin() + static_cast<std::ptrdiff_t>(idx), stats.end());
  return stats[idx];
}

double quantile_standard_error(double alpha, double critical_nats, Sidedness sidedness, const ReferenceModel& ref,
                               const Prior& prior, std::uint64_t n) {
  // One-sided differences on each side; the smaller density wins, so a
  // quantile sitting on a jump of the density is not given a tiny SE.
  const double h = 1e-5;
  const auto cdf = [&](double x) {
    if (sidedness == Sidedness::OneSidedUpper) return cdf_one_sided({x, InfoUnit::nats()}, ref, prior);
    return cdf_two_sided(std::max(0.0, x), ref, prior);
  };
  const double c = critical_nats;
  const double right = (cdf(c + h) - cdf(c)) / h;
  const double lo = sidedness == Sidedness::TwoSided ? std::max(0.0, c - h) : c - h;
  const double left = lo < c ? (cdf(c) - cdf(lo)) / (c - lo) : right;
  const double density = std::min(left, right);
  if (!(density > 0.0)) return std::numeric_limits<double>::infinity();
  return std::sqrt(alpha * (1.0 - alpha) / static_cast<double>(n)) / density;
}

std::vector<BoundCheckRow> conservation_bound_check(const DiscreteDist& p, std::span<const double> v, double r,
                                                    std::span<const double> x_grid, std::uint64_t seed,
                                                    std::uint64_t n, BoundMethod method) {
  if (v.size() != p.size()) {
    throw ShapeError("v has " + std::to_string(v.size()) + " entries but p has " + std::to_string(p.size()));
  }
  if (!(r > 0.0) || !std::isfinite(r)) throw PreconditionError("r must be a positive finite constant");
  double mass = 0.0;
  for (double vi : v) {
    if (!(vi >= 0.0) || !std::isfinite(vi)) throw PreconditionError("v must be nonnegative and finite");
    if (vi > r) throw PreconditionError("v(i) exceeds r");
    mass += vi;
  }
  if (mass > r * (1.0 + 1e-12)) {
    throw PreconditionError("total mass of v (" + std::to_string(mass) + ") exceeds r (" + std::to_string(r) + ")");
  }

  // -ln(r p_i / v_i) per point; -inf where v_i = 0.
  std::vector<double> score(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    score[i] = v[i] > 0.0 ? -std::log(r * p[i] / v[i]) : -std::numeric_limits<double>::infinity();
  }

  const bool enumerate = method == BoundMethod::Enumerate || (method == BoundMethod::Auto && p.size() <= 20);
  if (!enumerate && n == 0) throw PreconditionError("sample count must be >= 1");

  std::vector<double> cumulative(p.size());
  std::partial_sum(p.probs().begin(), p.probs().end(), cumulative.begin());

  std::vector<BoundCheckRow> rows;
  rows.reserve(x_grid.size());
  for (double x : x_grid) {
    BoundCheckRow row;
    row.x = x;
    row.bound = std::exp(-x);
    if (enumerate) {
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (score[i] >= x) row.lhs += p[i];
      }
    } else {
      const std::uint64_t chunks = (n + kChunkSize - 1) / kChunkSize;
      std::vector<std::uint64_t> hits(chunks, 0);
      for_each_chunk(seed, n, [&](std::uint64_t c, std::mt19937_64& rng, std::uint64_t count) {
        std::uint64_t h = 0;
        for (std::uint64_t k = 0; k < count; ++k) {
          const double u = uniform_open_closed(rng) * cumulative.back();
          auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
          if (it == cumulative.end()) --it;
          h += score[static_cast<std::size_t>(it - cumulative.begin())] >= x;
        }
        hits[c] = h;
      });
      const auto est = make_estimate(std::accumulate(hits.begin(), hits.end(), std::uint64_t{0}), n, seed);
      row.lhs = est.estimate;
      row.std_error = est.std_error;
    }
    row.holds = row.lhs <= row.bound + 3.0 * row.std_error;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace aitest
