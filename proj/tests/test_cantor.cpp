#include <doctest.h>

#include <random>

#include "fixtures.hpp"

using namespace valord;
using namespace fixtures;

TEST_CASE("words, projections, embeddings") {
  Word w = Word::parse("0110");
  CHECK(w.level() == 4);
  CHECK(w.str() == "0110");
  CHECK(project(w, 2) == Word::parse("01"));
  CHECK(project(Word::parse("01"), 4) == Word::parse("01"));
  CHECK(project(w, 0) == Word());

  CHECK(embed(Word::parse("01"), 4) == Word::parse("0100"));
  CHECK(embed(Word(), 3) == Word::parse("000"));
  CHECK(project(embed(Word::parse("10"), 5), 2) == Word::parse("10"));
  CHECK_THROWS_AS(embed(Word::parse("0110"), 2), Error);

  CHECK(Word::parse("01").is_prefix_of(w));
  CHECK(!Word::parse("11").is_prefix_of(w));
  CHECK_THROWS_AS(Word::parse("012"), Error);
  CHECK_THROWS_AS(Word(4, 2), Error);
}

TEST_CASE("projection is monotone and idempotent") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    unsigned level = std::uniform_int_distribution<unsigned>(0, 16)(rng);
    std::uint64_t bits = level == 0
                             ? 0
                             : std::uniform_int_distribution<std::uint64_t>(
                                   0, (std::uint64_t(1) << level) - 1)(rng);
    Word w(bits, level);
    unsigned n = std::uniform_int_distribution<unsigned>(0, 18)(rng);
    unsigned m = std::uniform_int_distribution<unsigned>(0, 18)(rng);
    CHECK(project(project(w, n), m) == project(w, std::min(m, n)));
    CHECK(project(w, n).is_prefix_of(w));
  }
}

TEST_CASE("level antichain and counting measure") {
  LevelAntichain c3{3};
  CHECK(c3.size() == 8);
  CHECK(c3.word(5).str() == "101");
  CountingMeasure nu3{3};
  CHECK(nu3.word_mass() == Dyadic(1, 3));
  CHECK(nu3.mass_of_count(8) == Dyadic::one());
}

TEST_CASE("partial tree maps validate and canonicalize") {
  PosetPtr v = vee();
  std::size_t a = v->index("a"), b = v->index("b"), bot = v->index("⊥");

  PartialTreeMap f(v, 2, {{2, 4, bot}, {0, 1, a}, {1, 2, b}});
  CHECK(f.intervals().size() == 3);  // sorted, nothing mergeable
  CHECK(f.image_of_index(0) == a);
  CHECK(f.image_of_index(3) == bot);
  CHECK(f.dom_size() == 4);
  CHECK(f.image_of(Word::parse("01")) == b);

  PartialTreeMap merged(v, 2, {{0, 1, a}, {1, 3, a}});
  CHECK(merged.intervals().size() == 1);
  CHECK(merged.intervals()[0].hi == 3);
  CHECK(!merged.image_of_index(3).has_value());

  CHECK_THROWS_AS(PartialTreeMap(v, 2, {{0, 2, a}, {1, 3, b}}), Error);
  CHECK_THROWS_AS(PartialTreeMap(v, 2, {{0, 5, a}}), Error);
  CHECK_THROWS_AS(PartialTreeMap(v, 2, {{0, 1, 9}}), Error);
}

TEST_CASE("pushforward") {
  PosetPtr v = vee();
  std::size_t a = v->index("a"), b = v->index("b"), bot = v->index("⊥");

  PartialTreeMap f(v, 2, {{0, 1, a}, {1, 2, b}, {2, 4, bot}});
  CHECK(f.pushforward() ==
        val(v, {{"a", "1/4"}, {"b", "1/4"}, {"⊥", "1/2"}}));

  PartialTreeMap empty(v, 3, {});
  CHECK(empty.pushforward() == SimpleValuation::zero(v));

  PartialTreeMap total(v, 1, {{0, 2, a}});
  CHECK(total.pushforward() == val(v, {{"a", "1"}}));
}

TEST_CASE("partial map order") {
  PosetPtr v = vee();
  std::size_t a = v->index("a"), b = v->index("b"), bot = v->index("⊥");

  PartialTreeMap f(v, 1, {{0, 1, bot}});
  PartialTreeMap g(v, 2, {{0, 1, a}, {1, 2, b}, {2, 4, bot}});
  CHECK(partial_map_leq(f, g));
  CHECK(partial_map_leq(f, f));
  CHECK(partial_map_leq(g, g));

  PosetPtr two = antichain(2);
  PartialTreeMap fa(two, 1, {{0, 1, two->index("a0")}});
  PartialTreeMap gb(two, 2, {{0, 1, two->index("a1")}});
  CHECK(!partial_map_leq(fa, gb));

  // Uncovered domain: 0 has no extension in dom g.
  PartialTreeMap sparse(v, 2, {{2, 4, bot}});
  CHECK(!partial_map_leq(f, sparse));

  CHECK_THROWS_AS((void)partial_map_leq(g, f), Error);
  CHECK_THROWS_AS((void)partial_map_leq(fa, g), Error);
}

TEST_CASE("partial map order is reflexive and transitive") {
  std::mt19937_64 rng(32);
  for (const PosetPtr& p : {vee(), diamond(), chain_poset(3)}) {
    for (int trial = 0; trial < 40; ++trial) {
      auto [f, g] = random_ordered_maps(p, rng, 2, 1);
      CHECK(partial_map_leq(f, f));
      CHECK(partial_map_leq(f, g));
      // Chain f <= g <= h built by refining g further.
      std::vector<MapInterval> refined;
      for (const MapInterval& iv : g.intervals())
        refined.push_back({iv.lo << 1, iv.hi << 1, iv.image});
      PartialTreeMap g_up(p, g.level() + 1, refined);
      CHECK(partial_map_leq(g, g_up));
      CHECK(partial_map_leq(f, g_up));
    }
  }
}

TEST_CASE("pushforward is monotone along the realization-shaped order") {
  std::mt19937_64 rng(33);
  for (const PosetPtr& p : {vee(), diamond(), en_poset()}) {
    for (int trial = 0; trial < 60; ++trial) {
      auto [f, g] = random_ordered_maps(p, rng, 2, 2);
      REQUIRE(partial_map_leq(f, g));
      CHECK(order_oracle(f.pushforward(), g.pushforward()).holds);
    }
  }
}

TEST_CASE("counting measures aggregate through projections") {
  // Every level-n cylinder collects exactly 1/2^n of the depth-d counting
  // mass, for all n <= 4 at depth 8.
  const unsigned d = 8;
  for (unsigned n = 0; n <= 4; ++n) {
    for (std::uint64_t k = 0; k < (std::uint64_t(1) << n); ++k) {
      Word cylinder(k, n);
      std::uint64_t count = 0;
      for (std::uint64_t i = 0; i < (std::uint64_t(1) << d); ++i)
        if (project(Word(i, d), n) == cylinder) ++count;
      CHECK(CountingMeasure{d}.mass_of_count(count) == Dyadic(1, n));
    }
  }
}
