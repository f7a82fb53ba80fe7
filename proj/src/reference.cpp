#include "aitest/reference.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "aitest/errors.hpp"

namespace aitest {

ReferenceModel ReferenceModel::uniform(long long n) {
  if (n < 2) throw DomainError("uniform reference requires N >= 2");
  return ReferenceModel(Kind::UniformN, n, 1.0 / static_cast<double>(n), std::log(static_cast<double>(n)));
}

ReferenceModel ReferenceModel::event(double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("event reference requires 0 < q < 1");
  return ReferenceModel(Kind::EventProb, 0, q, -std::log(q));
}

std::string ReferenceModel::name() const {
  if (kind_ == Kind::UniformN) return "uniform:" + std::to_string(n_);
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), q_);
  return "event:" + std::string(buf.data(), ptr);
}

ReferenceModel parse_reference(std::string_view text) {
  auto fail = [&](const std::string& why) {
    return ValidationError("reference '" + std::string(text) + "': " + why);
  };
  if (text.starts_with("uniform:")) {
    auto digits = text.substr(8);
    long long n = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw fail("N must be an integer");
    }
    if (n < 2) throw fail("N must be >= 2");
    return ReferenceModel::uniform(n);
  }
  if (text.starts_with("event:")) {
    auto digits = text.substr(6);
    double q = 0.0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), q);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw fail("q must be a number");
    }
    if (!(q > 0.0 && q < 1.0)) throw fail("q must lie in (0,1)");
    return ReferenceModel::event(q);
  }
  throw fail("expected uniform:N or event:q");
}

}  // namespace aitest
