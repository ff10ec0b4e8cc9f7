#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "valord/error.hpp"

namespace valord {

class FinitePoset;
using PosetPtr = std::shared_ptr<const FinitePoset>;

/// Upward-closed subset of a poset, tied to the poset instance it came
/// from. Two upper sets compare equal only when they belong to the same
/// poset object.
class UpperSet {
 public:
  UpperSet(PosetPtr poset, std::vector<bool> members);

  const PosetPtr& poset() const { return poset_; }
  bool contains(std::size_t i) const { return members_[i]; }
  const std::vector<bool>& members() const { return members_; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<std::size_t> indices() const;

  bool operator==(const UpperSet& o) const {
    return poset_ == o.poset_ && members_ == o.members_;
  }

 private:
  PosetPtr poset_;
  std::vector<bool> members_;
};

UpperSet upper_union(const UpperSet& a, const UpperSet& b);
UpperSet upper_intersection(const UpperSet& a, const UpperSet& b);

struct PosetFlags {
  bool is_chain = false;
  bool is_bounded_complete = false;
  bool has_bottom = false;
  bool is_flat = false;
};

/// Finite partial order with a fixed element enumeration (input order),
/// used everywhere downstream for deterministic tie-breaking. The stored
/// relation is the reflexive-transitive closure of the covers. Way-below
/// defaults to the order itself; an explicitly supplied way-below relation
/// is absorbed on both sides (x' <= x << y <= y' forces x' << y').
class FinitePoset : public std::enable_shared_from_this<FinitePoset> {
 public:
  using NamePair = std::pair<std::string, std::string>;

  static PosetPtr build(
      std::vector<std::string> elements, std::vector<NamePair> cover_pairs,
      std::optional<std::string> bottom = std::nullopt,
      std::optional<std::vector<NamePair>> waybelow_pairs = std::nullopt);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t index(const std::string& name) const;

  bool leq(std::size_t a, std::size_t b) const { return leq_[a * size() + b]; }
  bool waybelow(std::size_t a, std::size_t b) const {
    return wb_[a * size() + b];
  }
  bool waybelow_is_default() const { return wb_is_default_; }

  std::optional<std::size_t> bottom() const { return bottom_; }

  static constexpr std::size_t kDefaultEnumerationBound = 20;

  /// All upward-closed subsets, each exactly once, in ascending bitmask
  /// order (element i is bit i). Includes the empty set and the full set.
  std::vector<UpperSet> enumerate_upper_sets(
      std::size_t bound = kDefaultEnumerationBound) const;

  UpperSet upper_closure(std::span<const std::size_t> seed) const;
  UpperSet upper_set(std::vector<bool> members) const;
  UpperSet full_upper_set() const;

  /// Greatest lower bound of a non-empty subset, when it exists.
  std::optional<std::size_t> infimum(std::span<const std::size_t> subset) const;

  PosetFlags classify() const;

  // Construction echoes, kept for serialization.
  const std::vector<NamePair>& cover_pairs() const { return covers_; }
  const std::optional<std::string>& bottom_name() const { return bottom_name_; }
  const std::optional<std::vector<NamePair>>& waybelow_pairs() const {
    return wb_pairs_;
  }

 private:
  FinitePoset() = default;

  std::vector<std::string> names_;
  std::vector<bool> leq_;  // row-major closure matrix
  std::vector<bool> wb_;
  bool wb_is_default_ = true;
  std::optional<std::size_t> bottom_;

  std::vector<NamePair> covers_;
  std::optional<std::string> bottom_name_;
  std::optional<std::vector<NamePair>> wb_pairs_;
};

}  // namespace valord
