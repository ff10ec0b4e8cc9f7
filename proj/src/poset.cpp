#include "valord/poset.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

namespace valord {

UpperSet::UpperSet(PosetPtr poset, std::vector<bool> members)
    : poset_(std::move(poset)), members_(std::move(members)) {
  if (members_.size() != poset_->size())
    raise(Errc::InvariantViolation, "upper set size does not match poset");
  for (std::size_t x = 0; x < members_.size(); ++x) {
    if (!members_[x]) continue;
    for (std::size_t y = 0; y < members_.size(); ++y) {
      if (poset_->leq(x, y) && !members_[y])
        raise(Errc::InvariantViolation,
              "set is not upward closed: contains " + poset_->name(x) +
                  " but not " + poset_->name(y));
    }
  }
}

std::size_t UpperSet::count() const {
  return static_cast<std::size_t>(
      std::count(members_.begin(), members_.end(), true));
}

std::vector<std::size_t> UpperSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i]) out.push_back(i);
  return out;
}

UpperSet upper_union(const UpperSet& a, const UpperSet& b) {
  if (a.poset() != b.poset())
    raise(Errc::ForeignUpperSet, "upper sets from different posets");
  std::vector<bool> m(a.members());
  for (std::size_t i = 0; i < m.size(); ++i)
    if (b.contains(i)) m[i] = true;
  return UpperSet(a.poset(), std::move(m));
}

UpperSet upper_intersection(const UpperSet& a, const UpperSet& b) {
  if (a.poset() != b.poset())
    raise(Errc::ForeignUpperSet, "upper sets from different posets");
  std::vector<bool> m(a.members());
  for (std::size_t i = 0; i < m.size(); ++i)
    if (!b.contains(i)) m[i] = false;
  return UpperSet(a.poset(), std::move(m));
}

PosetPtr FinitePoset::build(std::vector<std::string> elements,
                            std::vector<NamePair> cover_pairs,
                            std::optional<std::string> bottom,
                            std::optional<std::vector<NamePair>> waybelow_pairs) {
  auto poset = std::shared_ptr<FinitePoset>(new FinitePoset());
  poset->names_ = std::move(elements);
  const std::size_t n = poset->names_.size();

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!index.emplace(poset->names_[i], i).second)
      raise(Errc::InvariantViolation,
            "duplicate element '" + poset->names_[i] + "'");
  }
  auto resolve = [&](const std::string& name) -> std::size_t {
    auto it = index.find(name);
    if (it == index.end())
      raise(Errc::UnknownIdentifier, "unknown element '" + name + "'");
    return it->second;
  };

  poset->leq_.assign(n * n, false);
  for (std::size_t i = 0; i < n; ++i) poset->leq_[i * n + i] = true;

  std::vector<std::vector<std::size_t>> above(n);
  for (const auto& [lo, hi] : cover_pairs)
    above[resolve(lo)].push_back(resolve(hi));

  // Reflexive-transitive closure by DFS from each element.
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : above[v]) {
        if (!poset->leq_[s * n + w]) {
          poset->leq_[s * n + w] = true;
          stack.push_back(w);
        }
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (poset->leq_[i * n + j] && poset->leq_[j * n + i])
        raise(Errc::CycleDetected, "elements '" + poset->names_[i] + "' and '" +
                                       poset->names_[j] + "' form a cycle");

  if (bottom) {
    std::size_t b = resolve(*bottom);
    for (std::size_t i = 0; i < n; ++i)
      if (!poset->leq_[b * n + i])
        raise(Errc::BottomNotLeast, "'" + *bottom + "' is not below '" +
                                        poset->names_[i] + "'");
    poset->bottom_ = b;
  }

  if (waybelow_pairs) {
    poset->wb_is_default_ = false;
    poset->wb_.assign(n * n, false);
    for (const auto& [lo, hi] : *waybelow_pairs) {
      std::size_t x = resolve(lo), y = resolve(hi);
      if (!poset->leq_[x * n + y])
        raise(Errc::InvariantViolation, "way-below pair ('" + lo + "','" + hi +
                                            "') is not contained in the order");
      // Absorb on both sides.
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (poset->leq_[a * n + x] && poset->leq_[y * n + b])
            poset->wb_[a * n + b] = true;
    }
  } else {
    // On a finite poset every element is compact, so way-below defaults
    // to the order itself.
    poset->wb_ = poset->leq_;
  }

  poset->covers_ = std::move(cover_pairs);
  poset->bottom_name_ = std::move(bottom);
  poset->wb_pairs_ = std::move(waybelow_pairs);
  return poset;
}

std::size_t FinitePoset::index(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  raise(Errc::UnknownIdentifier, "unknown element '" + name + "'");
}

std::vector<UpperSet> FinitePoset::enumerate_upper_sets(
    std::size_t bound) const {
  const std::size_t n = size();
  if (n > bound || n > 32)
    raise(Errc::SizeLimit, "poset has " + std::to_string(n) +
                               " elements, enumeration bound is " +
                               std::to_string(std::min<std::size_t>(bound, 32)));

  // Strict up-set masks, and an order that lists larger elements first so
  // that membership of everything above x is settled before x is decided.
  std::vector<std::uint32_t> up(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y && leq(x, y)) up[x] |= (1u << y);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::popcount(up[a]) < std::popcount(up[b]);
  });

  std::vector<std::uint32_t> masks;
  std::vector<std::pair<std::size_t, std::uint32_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [k, mask] = stack.back();
    stack.pop_back();
    if (k == n) {
      masks.push_back(mask);
      continue;
    }
    std::size_t e = order[k];
    stack.push_back({k + 1, mask});  // exclude e
    if ((mask & up[e]) == up[e])     // include e only if its up-set is in
      stack.push_back({k + 1, mask | (1u << e)});
  }
  std::sort(masks.begin(), masks.end());

  std::vector<UpperSet> out;
  out.reserve(masks.size());
  auto self = shared_from_this();
  for (std::uint32_t mask : masks) {
    std::vector<bool> members(n, false);
    for (std::size_t i = 0; i < n; ++i) members[i] = (mask >> i) & 1u;
    out.emplace_back(self, std::move(members));
  }
  return out;
}

UpperSet FinitePoset::upper_closure(std::span<const std::size_t> seed) const {
  std::vector<bool> members(size(), false);
  for (std::size_t s : seed) {
    if (s >= size()) raise(Errc::OutOfRange, "element index out of range");
    for (std::size_t y = 0; y < size(); ++y)
      if (leq(s, y)) members[y] = true;
  }
  return UpperSet(shared_from_this(), std::move(members));
}

UpperSet FinitePoset::upper_set(std::vector<bool> members) const {
  return UpperSet(shared_from_this(), std::move(members));
}

UpperSet FinitePoset::full_upper_set() const {
  return UpperSet(shared_from_this(), std::vector<bool>(size(), true));
}

std::optional<std::size_t> FinitePoset::infimum(
    std::span<const std::size_t> subset) const {
  if (subset.empty()) raise(Errc::OutOfRange, "infimum of the empty set");
  std::vector<std::size_t> lower;
  for (std::size_t z = 0; z < size(); ++z) {
    bool below_all = true;
    for (std::size_t s : subset) {
      if (s >= size()) raise(Errc::OutOfRange, "element index out of range");
      if (!leq(z, s)) {
        below_all = false;
        break;
      }
    }
    if (below_all) lower.push_back(z);
  }
  for (std::size_t g : lower) {
    bool greatest = true;
    for (std::size_t z : lower)
      if (!leq(z, g)) {
        greatest = false;
        break;
      }
    if (greatest) return g;
  }
  return std::nullopt;
}

PosetFlags FinitePoset::classify() const {
  const std::size_t n = size();
  PosetFlags flags;

  flags.is_chain = true;
  for (std::size_t i = 0; i < n && flags.is_chain; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!leq(i, j) && !leq(j, i)) {
        flags.is_chain = false;
        break;
      }

  std::optional<std::size_t> least;
  for (std::size_t b = 0; b < n && !least; ++b) {
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i)
      if (!leq(b, i)) {
        ok = false;
        break;
      }
    if (ok) least = b;
  }
  flags.has_bottom = least.has_value();

  // Pairwise infima suffice: infima of larger finite subsets are obtained
  // by folding, so a finite poset is bounded complete iff every pair of
  // elements has a greatest lower bound.
  flags.is_bounded_complete = true;
  for (std::size_t i = 0; i < n && flags.is_bounded_complete; ++i)
    for (std::size_t j = i; j < n; ++j) {
      std::size_t pair[2] = {i, j};
      if (!infimum(std::span<const std::size_t>(pair, 2))) {
        flags.is_bounded_complete = false;
        break;
      }
    }

  flags.is_flat = flags.has_bottom;
  if (flags.is_flat) {
    for (std::size_t i = 0; i < n && flags.is_flat; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || i == *least || j == *least) continue;
        if (leq(i, j)) {
          flags.is_flat = false;
          break;
        }
      }
  }
  return flags;
}

}  // namespace valord
