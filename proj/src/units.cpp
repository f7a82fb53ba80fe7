#include "aitest/units.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "aitest/errors.hpp"

namespace aitest {

InfoUnit InfoUnit::nits(long long n) {
  if (n < 2) {
    throw DomainError("N-its require an integer base N >= 2, got " + std::to_string(n));
  }
  return InfoUnit(Kind::NIts, n);
}

double InfoUnit::base() const {
  switch (kind_) {
    case Kind::Bits: return 2.0;
    case Kind::Nats: return std::numbers::e;
    case Kind::NIts: return static_cast<double>(n_);
  }
  return 0.0;
}

double InfoUnit::ln_base() const {
  switch (kind_) {
    case Kind::Bits: return std::numbers::ln2;
    case Kind::Nats: return 1.0;
    case Kind::NIts: return std::log(static_cast<double>(n_));
  }
  return 0.0;
}

std::string InfoUnit::name() const {
  switch (kind_) {
    case Kind::Bits: return "bits";
    case Kind::Nats: return "nats";
    case Kind::NIts: return "nits:" + std::to_string(n_);
  }
  return {};
}

InfoUnit parse_unit(std::string_view text) {
  if (text == "bits") return InfoUnit::bits();
  if (text == "nats") return InfoUnit::nats();
  if (text.starts_with("nits:")) {
    auto digits = text.substr(5);
    long long n = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
      throw ValidationError("unit '" + std::string(text) + "': N must be an integer");
    }
    if (n < 2) {
      throw ValidationError("unit '" + std::string(text) + "': N must be >= 2");
    }
    return InfoUnit::nits(n);
  }
  throw ValidationError("unknown unit '" + std::string(text) + "' (expected bits, nats or nits:N)");
}

InfoValue convert(const InfoValue& v, const InfoUnit& target) {
  if (v.unit == target) return v;
  if (std::isinf(v.value)) return {v.value, target};
  // base_src^v = base_tgt^w  <=>  w = v * ln(base_src) / ln(base_tgt)
  return {v.value * v.unit.ln_base() / target.ln_base(), target};
}

double log_in_unit(double x, const InfoUnit& unit) {
  if (!(x > 0.0)) {
    throw DomainError("logarithm of non-positive value " + std::to_string(x));
  }
  switch (unit.kind()) {
    case InfoUnit::Kind::Bits: return std::log2(x);
    case InfoUnit::Kind::Nats: return std::log(x);
    case InfoUnit::Kind::NIts: return std::log(x) / unit.ln_base();
  }
  return 0.0;
}

}  // namespace aitest
