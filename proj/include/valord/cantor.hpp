#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "valord/valuation.hpp"

namespace valord {

/// Finite bit word in the binary tree, ordered by prefix; the level is the
/// word length. Words are carried as the integer value of their bits
/// (most significant bit first), which is also their lexicographic index
/// within the level antichain. Levels are capped at 62.
class Word {
 public:
  Word() : bits_(0), level_(0) {}
  Word(std::uint64_t bits, unsigned level);

  static constexpr unsigned kMaxLevel = 62;

  /// Parses a bit string such as "0110"; the empty string is the root.
  static Word parse(std::string_view text);

  std::uint64_t bits() const { return bits_; }
  unsigned level() const { return level_; }
  bool bit(unsigned i) const;  // i = 0 is the first letter

  bool is_prefix_of(const Word& w) const;

  std::string str() const;
  bool operator==(const Word& o) const {
    return level_ == o.level_ && bits_ == o.bits_;
  }

 private:
  std::uint64_t bits_;
  unsigned level_;
};

/// Largest prefix of w of length at most n; the identity on shorter words.
Word project(const Word& w, unsigned n);

/// w padded with zeros to the target level; a section of project.
Word embed(const Word& w, unsigned target_level);

/// The antichain C_n of all 2^n words of length n in lexicographic order.
struct LevelAntichain {
  unsigned level = 0;
  std::uint64_t size() const { return std::uint64_t(1) << level; }
  Word word(std::uint64_t index) const { return Word(index, level); }
};

/// Normalized counting measure on C_n: every word carries mass 1/2^n.
struct CountingMeasure {
  unsigned level = 0;
  Dyadic word_mass() const { return Dyadic(1, level); }
  Dyadic mass_of_count(std::uint64_t count) const {
    return Dyadic(BigInt(count), level);
  }
};

/// Half-open block [lo, hi) of word indices at the map's level, all sent
/// to the same poset element.
struct MapInterval {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::size_t image = 0;
};

/// Partial map from a level antichain into a poset, constant on each of a
/// list of disjoint lexicographic intervals. Canonical form is sorted with
/// adjacent same-image intervals merged.
class PartialTreeMap {
 public:
  PartialTreeMap(PosetPtr poset, unsigned level,
                 std::vector<MapInterval> intervals);

  const PosetPtr& poset() const { return poset_; }
  unsigned level() const { return level_; }
  const std::vector<MapInterval>& intervals() const { return intervals_; }

  std::optional<std::size_t> image_of_index(std::uint64_t index) const;
  std::optional<std::size_t> image_of(const Word& w) const;
  std::uint64_t dom_size() const;
  bool dom_contains(std::uint64_t index) const {
    return image_of_index(index).has_value();
  }

  /// Push-forward of the level's counting measure: each word contributes
  /// 1/2^level to its image.
  SimpleValuation pushforward() const;

  bool operator==(const PartialTreeMap& o) const {
    return poset_ == o.poset_ && level_ == o.level_ &&
           intervals_ == o.intervals_;
  }

 private:
  PosetPtr poset_;
  unsigned level_;
  std::vector<MapInterval> intervals_;
};

bool operator==(const MapInterval& a, const MapInterval& b);

/// Partial-map order: dom f must sit below dom g, and f composed with the
/// projection must stay below g wherever both are defined.
bool partial_map_leq(const PartialTreeMap& f, const PartialTreeMap& g);

}  // namespace valord
