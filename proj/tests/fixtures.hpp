#pragma once

#include <random>
#include <string>
#include <vector>

#include "valord/chain_quantile.hpp"
#include "valord/realization.hpp"

namespace fixtures {

using namespace valord;

// The V with bottom listed last: transported mass is then laid out ahead
// of mass staying at bottom, which the frozen realization values assume.
inline PosetPtr vee() {
  return FinitePoset::build({"a", "b", "⊥"},
                            {{"⊥", "a"}, {"⊥", "b"}}, "⊥");
}

inline PosetPtr lambda_poset() {
  return FinitePoset::build({"a", "b", "⊤"},
                            {{"a", "⊤"}, {"b", "⊤"}});
}

inline PosetPtr diamond() {
  return FinitePoset::build(
      {"⊥", "a", "b", "⊤"},
      {{"⊥", "a"}, {"⊥", "b"}, {"a", "⊤"}, {"b", "⊤"}},
      "⊥");
}

// Flat two-point poset with the points ahead of bottom in the enumeration.
inline PosetPtr flat01() {
  return FinitePoset::build({"0", "1", "⊥"},
                            {{"⊥", "0"}, {"⊥", "1"}}, "⊥");
}

inline PosetPtr chain_poset(std::size_t n) {
  std::vector<std::string> names;
  std::vector<FinitePoset::NamePair> covers;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("c" + std::to_string(i));
    if (i > 0) covers.push_back({names[i - 1], names[i]});
  }
  return FinitePoset::build(names, covers, names.front());
}

inline PosetPtr antichain(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
  return FinitePoset::build(names, {});
}

// The N shape: a < c, b < c, b < d.
inline PosetPtr en_poset() {
  return FinitePoset::build({"a", "b", "c", "d"},
                            {{"a", "c"}, {"b", "c"}, {"b", "d"}});
}

inline PosetPtr adjoin_bottom(const PosetPtr& base) {
  std::vector<std::string> names = base->names();
  std::vector<FinitePoset::NamePair> covers = base->cover_pairs();
  for (const std::string& name : names) covers.push_back({"⊥", name});
  names.push_back("⊥");
  return FinitePoset::build(names, covers, "⊥");
}

inline SimpleValuation val(
    const PosetPtr& poset,
    const std::vector<std::pair<std::string, std::string>>& mass) {
  std::vector<std::pair<std::string, Dyadic>> weights;
  for (const auto& [name, text] : mass)
    weights.push_back({name, Dyadic::parse(text)});
  return SimpleValuation::make(poset, weights);
}

inline Dyadic dy(const std::string& text) { return Dyadic::parse(text); }

// Random sub-probability valuation with denominator 2^denom_exp: integer
// budget 2^denom_exp split randomly, possibly leaving slack.
inline SimpleValuation random_valuation(const PosetPtr& poset,
                                        std::mt19937_64& rng,
                                        std::uint32_t denom_exp) {
  std::int64_t budget = std::int64_t(1) << denom_exp;
  std::map<std::size_t, Dyadic> weights;
  std::vector<std::size_t> order(poset->size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i : order) {
    if (budget == 0) break;
    std::int64_t w =
        std::uniform_int_distribution<std::int64_t>(0, budget)(rng);
    if (w > 0) weights.emplace(i, Dyadic(BigInt(w), denom_exp));
    budget -= w;
  }
  return SimpleValuation::make_indexed(poset, std::move(weights));
}

// Increasing chain built by moving mass upward and adding fresh mass.
inline std::vector<SimpleValuation> random_chain(const PosetPtr& poset,
                                                 std::mt19937_64& rng,
                                                 std::size_t length,
                                                 std::uint32_t step_exp) {
  std::vector<SimpleValuation> chain{random_valuation(poset, rng, step_exp)};
  while (chain.size() < length) {
    std::map<std::size_t, Dyadic> weights = chain.back().weights();
    // Move a slice of some weight to an element above it.
    std::vector<std::size_t> support;
    for (const auto& [i, w] : weights) support.push_back(i);
    if (!support.empty()) {
      std::size_t x =
          support[std::uniform_int_distribution<std::size_t>(
              0, support.size() - 1)(rng)];
      std::vector<std::size_t> above;
      for (std::size_t y = 0; y < poset->size(); ++y)
        if (poset->leq(x, y)) above.push_back(y);
      std::size_t y = above[std::uniform_int_distribution<std::size_t>(
          0, above.size() - 1)(rng)];
      if (y != x) {
        BigInt numer = weights[x].rescale_to_level(step_exp);
        std::int64_t limit = numer.convert_to<std::int64_t>();
        std::int64_t slice =
            std::uniform_int_distribution<std::int64_t>(0, limit)(rng);
        if (slice > 0) {
          Dyadic moved(BigInt(slice), step_exp);
          weights[x] -= moved;
          weights[y] += moved;
        }
      }
    }
    // Add fresh mass within the remaining slack.
    Dyadic total;
    for (const auto& [i, w] : weights) total += w;
    BigInt slack_numer = (Dyadic::one() - total).rescale_to_level(step_exp);
    std::int64_t slack = slack_numer.convert_to<std::int64_t>();
    if (slack > 0) {
      std::size_t y = std::uniform_int_distribution<std::size_t>(
          0, poset->size() - 1)(rng);
      std::int64_t add =
          std::uniform_int_distribution<std::int64_t>(0, slack)(rng);
      if (add > 0) weights[y] += Dyadic(BigInt(add), step_exp);
    }
    chain.push_back(SimpleValuation::make_indexed(poset, weights));
  }
  return chain;
}

// Random partial map on a level antichain: random runs of assigned and
// skipped indices.
inline PartialTreeMap random_tree_map(const PosetPtr& poset,
                                      std::mt19937_64& rng, unsigned level) {
  std::vector<MapInterval> intervals;
  std::uint64_t width = std::uint64_t(1) << level, pos = 0;
  while (pos < width) {
    std::uint64_t run =
        std::uniform_int_distribution<std::uint64_t>(1, width - pos)(rng);
    if (std::uniform_int_distribution<int>(0, 2)(rng) > 0) {
      std::size_t image = std::uniform_int_distribution<std::size_t>(
          0, poset->size() - 1)(rng);
      intervals.push_back({pos, pos + run, image});
    }
    pos += run;
  }
  return PartialTreeMap(poset, level, std::move(intervals));
}

// Random measure on the dyadic chain model, probability or sub-probability.
inline ChainMeasure random_chain_measure(std::mt19937_64& rng,
                                         std::uint32_t denom_exp,
                                         bool probability) {
  std::int64_t budget = std::int64_t(1) << denom_exp;
  std::vector<std::pair<Dyadic, Dyadic>> mass;
  std::size_t points = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
  for (std::size_t i = 0; i < points && budget > 0; ++i) {
    std::int64_t w =
        i + 1 == points && probability
            ? budget
            : std::uniform_int_distribution<std::int64_t>(0, budget)(rng);
    std::int64_t p = std::uniform_int_distribution<std::int64_t>(
        0, std::int64_t(1) << denom_exp)(rng);
    mass.push_back({Dyadic(BigInt(p), denom_exp), Dyadic(BigInt(w), denom_exp)});
    budget -= w;
  }
  return ChainMeasure::make(mass);
}

// Ordered pair f <= g where g fully covers the expansion of dom f: each
// f-block is refined into sub-blocks with images above the f-image, and
// fresh blocks may appear over the free region.
inline std::pair<PartialTreeMap, PartialTreeMap> random_ordered_maps(
    const PosetPtr& poset, std::mt19937_64& rng, unsigned level_f,
    unsigned step) {
  PartialTreeMap f = random_tree_map(poset, rng, level_f);
  unsigned level_g = level_f + step;
  std::vector<MapInterval> g_intervals;
  std::vector<bool> free_slot(std::uint64_t(1) << level_g, true);
  for (const MapInterval& iv : f.intervals()) {
    for (std::uint64_t w = iv.lo << step; w < (iv.hi << step); ++w) {
      std::vector<std::size_t> above;
      for (std::size_t y = 0; y < poset->size(); ++y)
        if (poset->leq(iv.image, y)) above.push_back(y);
      std::size_t image = above[std::uniform_int_distribution<std::size_t>(
          0, above.size() - 1)(rng)];
      g_intervals.push_back({w, w + 1, image});
      free_slot[w] = false;
    }
  }
  for (std::uint64_t w = 0; w < free_slot.size(); ++w) {
    if (!free_slot[w] || std::uniform_int_distribution<int>(0, 1)(rng)) continue;
    std::size_t image =
        std::uniform_int_distribution<std::size_t>(0, poset->size() - 1)(rng);
    g_intervals.push_back({w, w + 1, image});
  }
  return {std::move(f), PartialTreeMap(poset, level_g, std::move(g_intervals))};
}

}  // namespace fixtures
