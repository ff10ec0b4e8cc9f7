#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "valord/certificate.hpp"

using namespace valord;
using namespace fixtures;

// The OpenMP kernels must reproduce the serial reference bit for bit.

TEST_CASE("exception scan: parallel equals serial") {
  PosetPtr flat = flat01();
  const unsigned depth = 9;
  FlatDemo demo = make_flat_demo(flat, depth);
  RealizationResult limit = realize_chain(demo.approximants);
  std::vector<RealizationResult> sequence;
  for (const auto& mu : demo.members) {
    std::vector<SimpleValuation> singleton{mu};
    sequence.push_back(realize_chain(singleton));
  }

  for (std::size_t tail : {1, 3, 7}) {
    ASConvergenceCertificate serial = empirical_convergence(
        sequence, limit, depth, tail, ExecPolicy::serial);
    ASConvergenceCertificate parallel = empirical_convergence(
        sequence, limit, depth, tail, ExecPolicy::parallel);
    CHECK(serial.exception_mass == parallel.exception_mass);
    CHECK(serial.dom_count == parallel.dom_count);
    REQUIRE(serial.exception_words.size() == parallel.exception_words.size());
    for (std::size_t i = 0; i < serial.exception_words.size(); ++i)
      CHECK(serial.exception_words[i] == parallel.exception_words[i]);
  }
}

TEST_CASE("exception scan on random chains: parallel equals serial") {
  std::mt19937_64 rng(61);
  for (const PosetPtr& p : {vee(), diamond(), en_poset()}) {
    std::vector<RealizationResult> sequence;
    for (int n = 0; n < 4; ++n) {
      auto chain = random_chain(p, rng, 2, 3);
      sequence.push_back(realize_chain(chain));
    }
    auto limit_chain = random_chain(p, rng, 3, 3);
    RealizationResult limit = realize_chain(limit_chain);
    unsigned depth = limit.top_level();
    for (const auto& r : sequence) depth = std::max(depth, r.top_level());

    ASConvergenceCertificate serial =
        empirical_convergence(sequence, limit, depth, 2, ExecPolicy::serial);
    ASConvergenceCertificate parallel =
        empirical_convergence(sequence, limit, depth, 2, ExecPolicy::parallel);
    CHECK(serial.exception_mass == parallel.exception_mass);
    REQUIRE(serial.exception_words.size() == parallel.exception_words.size());
    for (std::size_t i = 0; i < serial.exception_words.size(); ++i)
      CHECK(serial.exception_words[i] == parallel.exception_words[i]);
  }
}

TEST_CASE("cylinder sweep: parallel equals serial") {
  for (unsigned depth : {1, 3, 6}) {
    CylinderCheck serial = cylinder_pushforward_check(depth, ExecPolicy::serial);
    CylinderCheck parallel =
        cylinder_pushforward_check(depth, ExecPolicy::parallel);
    CHECK(serial.pass);
    CHECK(parallel.pass);
  }
}

TEST_CASE("grid pushforward: parallel equals serial") {
  std::mt19937_64 rng(62);
  for (const PosetPtr& p : {vee(), diamond()}) {
    for (int trial = 0; trial < 10; ++trial) {
      auto chain = random_chain(p, rng, 3, 3);
      RealizationResult r = realize_chain(chain);
      unsigned depth = r.top_level() + 2;
      CHECK(skorohod_grid_pushforward(r, depth, ExecPolicy::serial) ==
            skorohod_grid_pushforward(r, depth, ExecPolicy::parallel));
    }
  }
}
