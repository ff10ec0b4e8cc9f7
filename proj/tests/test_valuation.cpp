#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace valord;
using namespace fixtures;

TEST_CASE("construction canonicalizes and validates") {
  PosetPtr v = vee();
  SimpleValuation mu = val(v, {{"a", "1/4"}, {"b", "0"}, {"⊥", "1/4"}});
  CHECK(mu.weights().size() == 2);  // zero weight dropped
  CHECK(mu.total_mass() == dy("1/2"));
  CHECK(mu == val(v, {{"⊥", "1/4"}, {"a", "1/4"}}));

  CHECK_THROWS_AS(val(v, {{"a", "9/8"}}), Error);
  CHECK_THROWS_AS(val(v, {{"a", "-1/8"}}), Error);
  CHECK_THROWS_AS(val(v, {{"missing", "1/8"}}), Error);
}

TEST_CASE("valuation mass on upper sets") {
  PosetPtr v = vee();
  SimpleValuation mu = val(v, {{"a", "1/2"}, {"⊥", "1/4"}});
  std::vector<std::size_t> just_a{v->index("a")};
  CHECK(mu.mass(v->upper_closure(just_a)) == dy("1/2"));

  UpperSet empty = v->upper_set(std::vector<bool>(v->size(), false));
  CHECK(mu.mass(empty) == Dyadic());

  SimpleValuation nu =
      val(v, {{"a", "1/4"}, {"b", "1/4"}, {"⊥", "1/2"}});
  std::vector<std::size_t> ab{v->index("a"), v->index("b")};
  CHECK(nu.mass(v->upper_closure(ab)) == dy("1/2"));

  PosetPtr other = vee();
  CHECK_THROWS_AS((void)mu.mass(other->full_upper_set()), Error);
}

TEST_CASE("order oracle examples") {
  PosetPtr v = vee();
  SimpleValuation mu = val(v, {{"⊥", "1/2"}});
  SimpleValuation nu = val(v, {{"a", "1/4"}, {"b", "1/4"}});
  CHECK(v->enumerate_upper_sets().size() == 5);
  CHECK(order_oracle(mu, nu).holds);

  PosetPtr two = antichain(2);
  SimpleValuation da = val(two, {{"a0", "1/2"}});
  SimpleValuation db = val(two, {{"a1", "1/2"}});
  OrderDecision d = order_oracle(da, db);
  CHECK(!d.holds);
  REQUIRE(d.witness.has_value());
  CHECK(d.witness->indices() == std::vector<std::size_t>{two->index("a0")});

  CHECK(order_oracle(SimpleValuation::zero(v), nu).holds);
}

TEST_CASE("order oracle is a partial order and bounds total mass") {
  std::mt19937_64 rng(11);
  for (const PosetPtr& p : {vee(), diamond(), en_poset(), chain_poset(4)}) {
    for (int trial = 0; trial < 40; ++trial) {
      SimpleValuation a = random_valuation(p, rng, 4);
      SimpleValuation b = random_valuation(p, rng, 4);
      SimpleValuation c = random_valuation(p, rng, 4);
      CHECK(order_oracle(a, a).holds);
      if (order_oracle(a, b).holds && order_oracle(b, a).holds) CHECK(a == b);
      if (order_oracle(a, b).holds && order_oracle(b, c).holds)
        CHECK(order_oracle(a, c).holds);
      if (order_oracle(a, b).holds) CHECK(a.total_mass() <= b.total_mass());
    }
  }
}

TEST_CASE("mass is modular on random upper-set pairs") {
  std::mt19937_64 rng(12);
  for (const PosetPtr& p : {vee(), diamond(), en_poset()}) {
    auto uppers = p->enumerate_upper_sets();
    for (int trial = 0; trial < 60; ++trial) {
      SimpleValuation mu = random_valuation(p, rng, 5);
      const UpperSet& u = uppers[std::uniform_int_distribution<std::size_t>(
          0, uppers.size() - 1)(rng)];
      const UpperSet& w = uppers[std::uniform_int_distribution<std::size_t>(
          0, uppers.size() - 1)(rng)];
      CHECK(mu.mass(upper_union(u, w)) + mu.mass(upper_intersection(u, w)) ==
            mu.mass(u) + mu.mass(w));
    }
  }
}

TEST_CASE("monotone integration") {
  PosetPtr v = vee();
  SimpleValuation half_bottom = val(v, {{"⊥", "1/2"}});
  MonotoneFunction one{{{0, Dyadic::one()},
                        {1, Dyadic::one()},
                        {2, Dyadic::one()}}};
  CHECK(integrate_monotone(half_bottom, one) == dy("1/2"));

  SimpleValuation mu = val(v, {{"a", "1/4"}, {"b", "1/4"}});
  MonotoneFunction indicator{{{v->index("a"), Dyadic::one()},
                              {v->index("b"), Dyadic()},
                              {v->index("⊥"), Dyadic()}}};
  CHECK(integrate_monotone(mu, indicator) == dy("1/4"));

  CHECK(integrate_monotone(SimpleValuation::zero(v), one) == Dyadic());

  MonotoneFunction decreasing{{{v->index("⊥"), Dyadic::one()},
                               {v->index("a"), Dyadic()},
                               {v->index("b"), Dyadic()}}};
  CHECK_THROWS_AS((void)integrate_monotone(mu, decreasing), Error);

  MonotoneFunction partial{{{v->index("a"), Dyadic::one()}}};
  CHECK_THROWS_AS((void)integrate_monotone(mu, partial), Error);
}

TEST_CASE("indicator integrals characterize the order") {
  std::mt19937_64 rng(13);
  for (const PosetPtr& p : {vee(), diamond(), en_poset(), antichain(3)}) {
    auto uppers = p->enumerate_upper_sets();
    for (int trial = 0; trial < 30; ++trial) {
      SimpleValuation mu = random_valuation(p, rng, 4);
      SimpleValuation nu = random_valuation(p, rng, 4);
      bool all_integrals = true;
      for (const UpperSet& u : uppers) {
        MonotoneFunction indicator;
        for (std::size_t i = 0; i < p->size(); ++i)
          indicator.values[i] = u.contains(i) ? Dyadic::one() : Dyadic();
        if (integrate_monotone(mu, indicator) >
            integrate_monotone(nu, indicator)) {
          all_integrals = false;
          break;
        }
      }
      CHECK(all_integrals == order_oracle(mu, nu).holds);
    }
  }
}

TEST_CASE("portmanteau checker") {
  PosetPtr flat = flat01();

  SUBCASE("the flat-poset sequence passes at horizon 5, tolerance 1/32") {
    std::vector<SimpleValuation> sequence;
    for (unsigned n = 1; n <= 10; ++n) {
      sequence.push_back(SimpleValuation::make_indexed(
          flat, {{flat->index("0"), Dyadic(pow2(n) - 1, n)},
                 {flat->index("1"), Dyadic(1, n)}}));
    }
    SimpleValuation limit = val(flat, {{"0", "1"}});
    ConvergenceCertificate cert =
        portmanteau_check(sequence, limit, 5, dy("1/32"));
    CHECK(cert.passed());

    // Direct evaluation of the two binding tails.
    std::vector<std::size_t> zero{flat->index("0")};
    std::vector<std::size_t> one{flat->index("1")};
    CHECK(sequence[4].mass(flat->upper_closure(zero)) == dy("31/32"));
    CHECK(sequence[4].mass(flat->upper_closure(one)) == dy("1/32"));

    // Tightening the tolerance breaks the liminf side.
    ConvergenceCertificate tight =
        portmanteau_check(sequence, limit, 5, dy("1/64"));
    CHECK(!tight.passed());
  }

  SUBCASE("constant sequences pass with zero tolerance at any horizon") {
    std::mt19937_64 rng(14);
    SimpleValuation mu = random_valuation(flat, rng, 4);
    std::vector<SimpleValuation> sequence(6, mu);
    for (std::size_t horizon : {1, 3, 6}) {
      CHECK(portmanteau_check(sequence, mu, horizon, Dyadic()).passed());
    }
  }

  SUBCASE("a constant sequence away from the limit fails with a witness") {
    PosetPtr two = antichain(2);
    std::vector<SimpleValuation> sequence(4, val(two, {{"a0", "1"}}));
    SimpleValuation limit = val(two, {{"a1", "1"}});
    ConvergenceCertificate cert =
        portmanteau_check(sequence, limit, 1, Dyadic());
    REQUIRE(!cert.passed());
    bool found = false;
    for (const auto& violation : cert.violations) {
      if (violation.condition == "liminf-open" &&
          violation.witness.indices() ==
              std::vector<std::size_t>{two->index("a1")})
        found = true;
    }
    CHECK(found);
  }

  SUBCASE("preconditions") {
    std::vector<SimpleValuation> sequence(3, SimpleValuation::zero(flat));
    CHECK_THROWS_AS(portmanteau_check(sequence, SimpleValuation::zero(flat), 4,
                                      Dyadic()),
                    Error);
    CHECK_THROWS_AS(portmanteau_check(sequence, SimpleValuation::zero(flat), 1,
                                      dy("-1/2")),
                    Error);
  }
}
