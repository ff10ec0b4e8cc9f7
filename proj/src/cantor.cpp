#include "valord/cantor.hpp"

#include <algorithm>

namespace valord {

Word::Word(std::uint64_t bits, unsigned level) : bits_(bits), level_(level) {
  if (level > kMaxLevel)
    raise(Errc::SizeLimit, "word level " + std::to_string(level) +
                               " exceeds the representable maximum");
  if (level < 64 && bits >= (std::uint64_t(1) << level))
    raise(Errc::OutOfRange, "word index does not fit the level");
}

Word Word::parse(std::string_view text) {
  std::uint64_t bits = 0;
  for (char c : text) {
    if (c != '0' && c != '1')
      raise(Errc::ParseError, "invalid bit character in word");
    bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
  }
  if (text.size() > kMaxLevel)
    raise(Errc::SizeLimit, "word longer than the representable maximum");
  return Word(bits, static_cast<unsigned>(text.size()));
}

bool Word::bit(unsigned i) const {
  return (bits_ >> (level_ - 1 - i)) & 1u;
}

bool Word::is_prefix_of(const Word& w) const {
  if (level_ > w.level_) return false;
  return (w.bits_ >> (w.level_ - level_)) == bits_;
}

std::string Word::str() const {
  std::string s(level_, '0');
  for (unsigned i = 0; i < level_; ++i)
    if (bit(i)) s[i] = '1';
  return s;
}

Word project(const Word& w, unsigned n) {
  if (n >= w.level()) return w;
  return Word(w.bits() >> (w.level() - n), n);
}

Word embed(const Word& w, unsigned target_level) {
  if (target_level < w.level())
    raise(Errc::LevelTooSmall, "cannot embed a word into a shorter level");
  return Word(w.bits() << (target_level - w.level()), target_level);
}

PartialTreeMap::PartialTreeMap(PosetPtr poset, unsigned level,
                               std::vector<MapInterval> intervals)
    : poset_(std::move(poset)), level_(level), intervals_(std::move(intervals)) {
  if (level > Word::kMaxLevel)
    raise(Errc::SizeLimit, "map level exceeds the representable maximum");
  const std::uint64_t width = std::uint64_t(1) << level_;
  std::erase_if(intervals_, [](const MapInterval& iv) { return iv.lo == iv.hi; });
  std::sort(intervals_.begin(), intervals_.end(),
            [](const MapInterval& a, const MapInterval& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const MapInterval& iv = intervals_[i];
    if (iv.lo > iv.hi || iv.hi > width)
      raise(Errc::OutOfRange, "interval does not fit the level antichain");
    if (iv.image >= poset_->size())
      raise(Errc::OutOfRange, "interval image out of range");
    if (i > 0 && intervals_[i - 1].hi > iv.lo)
      raise(Errc::InvariantViolation, "intervals overlap");
  }
  // Canonical form: merge adjacent intervals with the same image.
  std::vector<MapInterval> merged;
  for (const MapInterval& iv : intervals_) {
    if (!merged.empty() && merged.back().hi == iv.lo &&
        merged.back().image == iv.image)
      merged.back().hi = iv.hi;
    else
      merged.push_back(iv);
  }
  intervals_ = std::move(merged);
}

std::optional<std::size_t> PartialTreeMap::image_of_index(
    std::uint64_t index) const {
  auto it = std::upper_bound(
      intervals_.begin(), intervals_.end(), index,
      [](std::uint64_t v, const MapInterval& iv) { return v < iv.lo; });
  if (it == intervals_.begin()) return std::nullopt;
  --it;
  if (index < it->hi) return it->image;
  return std::nullopt;
}

std::optional<std::size_t> PartialTreeMap::image_of(const Word& w) const {
  if (w.level() != level_)
    raise(Errc::LevelMismatch, "word level does not match the map level");
  return image_of_index(w.bits());
}

std::uint64_t PartialTreeMap::dom_size() const {
  std::uint64_t total = 0;
  for (const MapInterval& iv : intervals_) total += iv.hi - iv.lo;
  return total;
}

SimpleValuation PartialTreeMap::pushforward() const {
  std::map<std::size_t, std::uint64_t> counts;
  for (const MapInterval& iv : intervals_) counts[iv.image] += iv.hi - iv.lo;
  std::map<std::size_t, Dyadic> weights;
  for (const auto& [image, count] : counts)
    weights.emplace(image, Dyadic(BigInt(count), level_));
  return SimpleValuation::make_indexed(poset_, std::move(weights));
}

bool operator==(const MapInterval& a, const MapInterval& b) {
  return a.lo == b.lo && a.hi == b.hi && a.image == b.image;
}

namespace {

// Projection of an index block [lo, hi) at `from` down to level `to`.
MapInterval project_block(const MapInterval& iv, unsigned from, unsigned to) {
  unsigned shift = from - to;
  return {iv.lo >> shift, ((iv.hi - 1) >> shift) + 1, iv.image};
}

}  // namespace

bool partial_map_leq(const PartialTreeMap& f, const PartialTreeMap& g) {
  if (f.poset() != g.poset())
    raise(Errc::DifferentPosets, "maps target different posets");
  if (f.level() > g.level())
    raise(Errc::LevelMismatch, "left map sits above the right map");
  const auto& poset = *f.poset();

  // Wherever a g-word projects into dom f, the f-image must lie below.
  for (const MapInterval& giv : g.intervals()) {
    MapInterval down = project_block(giv, g.level(), f.level());
    for (const MapInterval& fiv : f.intervals()) {
      std::uint64_t lo = std::max(fiv.lo, down.lo);
      std::uint64_t hi = std::min(fiv.hi, down.hi);
      if (lo >= hi) continue;
      if (!poset.leq(fiv.image, giv.image)) return false;
    }
  }

  // Every word of dom f needs an extension in dom g: dom f must be covered
  // by the projection of dom g.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> projected;
  for (const MapInterval& giv : g.intervals()) {
    MapInterval down = project_block(giv, g.level(), f.level());
    projected.emplace_back(down.lo, down.hi);
  }
  std::sort(projected.begin(), projected.end());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> covered;
  for (const auto& [lo, hi] : projected) {
    if (!covered.empty() && lo <= covered.back().second)
      covered.back().second = std::max(covered.back().second, hi);
    else
      covered.emplace_back(lo, hi);
  }
  for (const MapInterval& fiv : f.intervals()) {
    std::uint64_t pos = fiv.lo;
    for (const auto& [lo, hi] : covered) {
      if (hi <= pos) continue;
      if (lo > pos) break;
      pos = hi;
      if (pos >= fiv.hi) break;
    }
    if (pos < fiv.hi) return false;
  }
  return true;
}

}  // namespace valord
