#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "valord/error.hpp"

namespace valord {

using BigInt = boost::multiprecision::cpp_int;

/// 2^k as an arbitrary-precision integer.
BigInt pow2(std::uint32_t k);

/// Exact dyadic rational numerator/2^exponent.
///
/// Normal form: the numerator is odd, or the value is zero with exponent
/// zero; equality is therefore representational. Sums, differences and
/// products of dyadics are dyadic, so every operation here is exact.
/// Negative values are representable (they arise transiently in residual
/// arithmetic); measure-facing APIs reject them at their own boundaries.
class Dyadic {
 public:
  Dyadic() : num_(0), exp_(0) {}
  Dyadic(long long value) : num_(value), exp_(0) {}

  /// Normalizing constructor: value = numerator / 2^exponent.
  Dyadic(BigInt numerator, std::uint32_t exponent);

  static Dyadic one() { return Dyadic(1); }

  /// Parses "k/2^m" text ("3/8", "-5/16") and the shorthands "0", "1", "k".
  /// Only power-of-two denominators are accepted.
  static Dyadic parse(std::string_view text);

  const BigInt& numerator() const { return num_; }
  std::uint32_t exponent() const { return exp_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  /// The integer k with *this == k / 2^level. Requires exponent() <= level.
  BigInt rescale_to_level(std::uint32_t level) const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  Dyadic operator-() const;
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }

  std::strong_ordering operator<=>(const Dyadic& o) const;
  bool operator==(const Dyadic& o) const {
    return exp_ == o.exp_ && num_ == o.num_;
  }

  std::string str() const;

 private:
  BigInt num_;
  std::uint32_t exp_;
};

std::ostream& operator<<(std::ostream& os, const Dyadic& d);

}  // namespace valord
