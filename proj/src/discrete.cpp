#include "aitest/discrete.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

#include "aitest/errors.hpp"

namespace aitest {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

DiscreteDist::DiscreteDist(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw ShapeError("discrete distribution is empty");
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (!(probs_[i] > 0.0) || !std::isfinite(probs_[i])) {
      throw DomainError("discrete distribution entry " + std::to_string(i) + " is not strictly positive");
    }
  }
  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  for (auto& p : probs_) p /= total;
}

std::vector<double> read_column(std::istream& in) {
  std::vector<double> values;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ValidationError("line " + std::to_string(lineno) + ": expected a number, got '" + std::string(text) +
                            "'");
    }
    values.push_back(v);
  }
  return values;
}

std::vector<double> load_column(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  return read_column(in);
}

DiscreteDist DiscreteDist::read(std::istream& in) { return DiscreteDist(read_column(in)); }

DiscreteDist DiscreteDist::load(const std::filesystem::path& path) { return DiscreteDist(load_column(path)); }

}  // namespace aitest
