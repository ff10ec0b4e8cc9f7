#include "valord/dyadic.hpp"

#include <algorithm>
#include <ostream>

namespace valord {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::LevelTooSmall: return "LevelTooSmall";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::UnknownIdentifier: return "UnknownIdentifier";
    case Errc::BottomNotLeast: return "BottomNotLeast";
    case Errc::SizeLimit: return "SizeLimit";
    case Errc::ForeignUpperSet: return "ForeignUpperSet";
    case Errc::NotMonotone: return "NotMonotone";
    case Errc::MissingValue: return "MissingValue";
    case Errc::DifferentPosets: return "DifferentPosets";
    case Errc::NotAChain: return "NotAChain";
    case Errc::NonDyadicWeight: return "NonDyadicWeight";
    case Errc::DepthTooSmall: return "DepthTooSmall";
    case Errc::LevelMismatch: return "LevelMismatch";
    case Errc::NotBoundedComplete: return "NotBoundedComplete";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::ParseError: return "ParseError";
    case Errc::InvariantViolation: return "InvariantViolation";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message),
      code_(code) {}

void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

BigInt pow2(std::uint32_t k) {
  BigInt one = 1;
  return one << k;
}

Dyadic::Dyadic(BigInt numerator, std::uint32_t exponent)
    : num_(std::move(numerator)), exp_(exponent) {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  bool negative = num_ < 0;
  BigInt mag = negative ? BigInt(-num_) : num_;
  std::uint32_t shed = std::min<std::uint32_t>(
      exp_, static_cast<std::uint32_t>(boost::multiprecision::lsb(mag)));
  mag >>= shed;
  exp_ -= shed;
  num_ = negative ? BigInt(-mag) : mag;
}

Dyadic Dyadic::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) raise(Errc::ParseError, "empty dyadic literal");

  auto parse_int = [&](std::string_view s, bool allow_sign) -> BigInt {
    s = trim(s);
    bool negative = false;
    if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) {
      negative = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) raise(Errc::ParseError, "missing digits in dyadic literal");
    BigInt value = 0;
    for (char c : s) {
      if (c < '0' || c > '9')
        raise(Errc::ParseError, "invalid character in dyadic literal");
      value = value * 10 + (c - '0');
    }
    return negative ? BigInt(-value) : value;
  };

  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Dyadic(parse_int(text, true), 0);
  }
  BigInt numerator = parse_int(text.substr(0, slash), true);
  BigInt denominator = parse_int(text.substr(slash + 1), false);
  if (denominator <= 0)
    raise(Errc::ParseError, "denominator must be a positive power of two");
  // Power-of-two test: a single set bit.
  BigInt stripped = denominator;
  auto low = boost::multiprecision::lsb(stripped);
  if ((stripped >> low) != 1)
    raise(Errc::ParseError,
          "denominator " + denominator.str() + " is not a power of two");
  return Dyadic(std::move(numerator), static_cast<std::uint32_t>(low));
}

BigInt Dyadic::rescale_to_level(std::uint32_t level) const {
  if (exp_ > level)
    raise(Errc::LevelTooSmall, "dyadic " + str() + " has no denominator 2^" +
                                   std::to_string(level));
  return num_ * pow2(level - exp_);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  std::uint32_t e = std::max(a.exp_, b.exp_);
  return Dyadic(a.num_ * pow2(e - a.exp_) + b.num_ * pow2(e - b.exp_), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
  std::uint32_t e = std::max(a.exp_, b.exp_);
  return Dyadic(a.num_ * pow2(e - a.exp_) - b.num_ * pow2(e - b.exp_), e);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_);
}

Dyadic Dyadic::operator-() const {
  Dyadic r;
  r.num_ = -num_;
  r.exp_ = exp_;
  return r;
}

std::strong_ordering Dyadic::operator<=>(const Dyadic& o) const {
  std::uint32_t e = std::max(exp_, o.exp_);
  BigInt lhs = num_ * pow2(e - exp_);
  BigInt rhs = o.num_ * pow2(e - o.exp_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Dyadic::str() const {
  if (exp_ == 0) return num_.str();
  return num_.str() + "/" + pow2(exp_).str();
}

std::ostream& operator<<(std::ostream& os, const Dyadic& d) {
  return os << d.str();
}

}  // namespace valord
