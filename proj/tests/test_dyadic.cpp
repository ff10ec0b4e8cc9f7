#include <doctest.h>

#include <random>

#include "valord/dyadic.hpp"

using namespace valord;

TEST_CASE("normalization") {
  CHECK(Dyadic(2, 2) == Dyadic(1, 1));
  CHECK(Dyadic(0, 5) == Dyadic());
  CHECK(Dyadic(0, 5).exponent() == 0);
  Dyadic d(3, 3);
  CHECK(d.numerator() == 3);
  CHECK(d.exponent() == 3);
  CHECK(Dyadic(-4, 3) == Dyadic(-1, 1));
}

TEST_CASE("arithmetic examples") {
  CHECK(Dyadic(1, 1) + Dyadic(1, 2) == Dyadic(3, 2));
  CHECK(Dyadic(1, 1) * Dyadic(1, 1) == Dyadic(1, 2));
  CHECK(Dyadic(3, 3) < Dyadic(1, 1));
  CHECK(Dyadic(1, 2) - Dyadic(1, 1) == Dyadic(-1, 2));
  CHECK((-Dyadic(3, 2)).is_negative());
}

TEST_CASE("rescale_to_level") {
  CHECK(Dyadic(1, 1).rescale_to_level(3) == 4);
  CHECK(Dyadic(3, 3).rescale_to_level(3) == 3);
  CHECK_THROWS_AS((void)Dyadic(1, 2).rescale_to_level(1), Error);
  try {
    (void)Dyadic(1, 2).rescale_to_level(1);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::LevelTooSmall);
  }
}

TEST_CASE("parse and print") {
  CHECK(Dyadic::parse("3/8") == Dyadic(3, 3));
  CHECK(Dyadic::parse("0") == Dyadic());
  CHECK(Dyadic::parse("1") == Dyadic::one());
  CHECK(Dyadic::parse("2/4") == Dyadic(1, 1));
  CHECK(Dyadic::parse("-3/8") == Dyadic(-3, 3));
  CHECK(Dyadic::parse(" 5/16 ") == Dyadic(5, 4));
  CHECK(Dyadic(3, 3).str() == "3/8");
  CHECK(Dyadic().str() == "0");
  CHECK(Dyadic(2).str() == "2");
  CHECK(Dyadic(-1, 1).str() == "-1/2");

  CHECK_THROWS_AS((void)Dyadic::parse("1/3"), Error);
  CHECK_THROWS_AS((void)Dyadic::parse("abc"), Error);
  CHECK_THROWS_AS((void)Dyadic::parse("3/0"), Error);
  CHECK_THROWS_AS((void)Dyadic::parse(""), Error);
  CHECK_THROWS_AS((void)Dyadic::parse("1/-2"), Error);
}

TEST_CASE("round trips and algebraic laws on random triples") {
  std::mt19937_64 rng(20240811);
  std::uniform_int_distribution<long long> numer(-2000, 2000);
  std::uniform_int_distribution<std::uint32_t> expo(0, 12);
  for (int trial = 0; trial < 300; ++trial) {
    Dyadic a(numer(rng), expo(rng));
    Dyadic b(numer(rng), expo(rng));
    Dyadic c(numer(rng), expo(rng));
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(Dyadic::parse(a.str()) == a);
    // Results of arithmetic are already in normal form.
    Dyadic s = a + b;
    CHECK(Dyadic(s.numerator(), s.exponent()) == s);
    std::uint32_t level = a.exponent() + 3;
    CHECK(Dyadic(a.rescale_to_level(level), level) == a);
  }
}
