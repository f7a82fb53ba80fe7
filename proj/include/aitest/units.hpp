#pragma once

#include <string>
#include <string_view>

namespace aitest {

/// Logarithm base in which an amount of information is expressed.
///
/// Bits (base 2), nats (base e) and N-its (base N, N >= 2). One N-it is the
/// information carried by a uniform choice among N outcomes.
class InfoUnit {
 public:
  enum class Kind { Bits, Nats, NIts };

  static InfoUnit bits() { return InfoUnit(Kind::Bits, 2); }
  static InfoUnit nats() { return InfoUnit(Kind::Nats, 0); }
  /// Throws DomainError for n < 2.
  static InfoUnit nits(long long n);

  Kind kind() const { return kind_; }
  /// Cardinality N for N-its, 2 for bits, 0 for nats.
  long long n() const { return n_; }
  double base() const;
  /// Natural log of the base; the scale factor from this unit to nats.
  double ln_base() const;

  /// `bits`, `nats` or `nits:N`.
  std::string name() const;

  friend bool operator==(const InfoUnit&, const InfoUnit&) = default;

 private:
  InfoUnit(Kind k, long long n) : kind_(k), n_(n) {}
  Kind kind_;
  long long n_;
};

/// Parses `bits`, `nats` or `nits:N`. Throws ValidationError otherwise.
InfoUnit parse_unit(std::string_view text);

/// An amount of information tagged with its unit. `value` may be +inf, which
/// is absorbing under conversion.
struct InfoValue {
  double value = 0.0;
  InfoUnit unit = InfoUnit::nats();

  double in_nats() const { return value * unit.ln_base(); }
};

InfoValue convert(const InfoValue& v, const InfoUnit& target);

/// log_base(x) for the given unit. Throws DomainError unless x > 0.
double log_in_unit(double x, const InfoUnit& unit);

}  // namespace aitest
