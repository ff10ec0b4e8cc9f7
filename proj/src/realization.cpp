#include "valord/realization.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace valord {

unsigned worker_count() {
#ifdef _OPENMP
  return static_cast<unsigned>(omp_get_max_threads());
#else
  return 1;
#endif
}

namespace {

constexpr unsigned kMaxScanDepth = 26;

std::uint64_t to_count(const BigInt& v) {
  return v.convert_to<std::uint64_t>();
}

std::uint32_t max_exponent(const SimpleValuation& v) {
  std::uint32_t e = 0;
  for (const auto& [i, w] : v.weights()) e = std::max(e, w.exponent());
  return e;
}

std::uint32_t max_exponent(const TransportPlan& plan) {
  std::uint32_t e = plan.leftover.exponent();
  for (const auto& [key, t] : plan.entries) e = std::max(e, t.exponent());
  for (const auto& [y, u] : plan.residuals) e = std::max(e, u.exponent());
  return e;
}

// Split [0, n) into per-worker chunks of nearly equal size.
std::vector<std::pair<std::uint64_t, std::uint64_t>> chunks(std::uint64_t n,
                                                            unsigned workers) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  if (workers == 0) workers = 1;
  std::uint64_t base = n / workers, extra = n % workers, pos = 0;
  for (unsigned t = 0; t < workers; ++t) {
    std::uint64_t len = base + (t < extra ? 1 : 0);
    out.emplace_back(pos, pos + len);
    pos += len;
  }
  return out;
}

}  // namespace

RealizationResult realize_chain(std::span<const SimpleValuation> chain) {
  if (chain.empty()) raise(Errc::OutOfRange, "empty chain");
  for (const auto& v : chain)
    if (v.poset() != chain.front().poset())
      raise(Errc::DifferentPosets, "chain members live on different posets");
  const PosetPtr& poset = chain.front().poset();

  RealizationResult result;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    TransportDecision decision = decide_order_maxflow(chain[i], chain[i + 1]);
    if (auto* refusal = std::get_if<TransportRefusal>(&decision)) {
      std::string names;
      for (std::size_t e : refusal->witness->indices()) {
        if (!names.empty()) names += ",";
        names += poset->name(e);
      }
      raise(Errc::NotAChain,
            "pair " + std::to_string(i + 1) + " -> " + std::to_string(i + 2) +
                " fails the valuation order; separating upper set {" + names +
                "}");
    }
    result.plans.push_back(std::get<TransportPlan>(std::move(decision)));
  }

  for (std::size_t i = 0; i < chain.size(); ++i) {
    std::uint32_t need = max_exponent(chain[i]);
    if (i > 0) {
      need = std::max(need, max_exponent(result.plans[i - 1]));
      need = std::max<std::uint32_t>(need, result.levels.back() + 1);
    }
    if (need > Word::kMaxLevel)
      raise(Errc::SizeLimit, "required level exceeds the representable maximum");
    result.levels.push_back(need);
  }

  // Basis: successive blocks in enumeration order, leftover at the right.
  {
    unsigned m = result.levels[0];
    std::vector<MapInterval> intervals;
    std::uint64_t pos = 0;
    for (const auto& [x, r] : chain[0].weights()) {
      std::uint64_t count = to_count(r.rescale_to_level(m));
      intervals.push_back({pos, pos + count, x});
      pos += count;
    }
    result.maps.emplace_back(poset, m, std::move(intervals));
  }

  for (std::size_t step = 1; step < chain.size(); ++step) {
    const PartialTreeMap& prev = result.maps.back();
    const TransportPlan& plan = result.plans[step - 1];
    unsigned m = result.levels[step];
    unsigned shift = m - result.levels[step - 1];

    // Remaining transported mass per source element, target-ascending.
    std::map<std::size_t, std::deque<std::pair<std::size_t, std::uint64_t>>>
        demand;
    for (const auto& [key, t] : plan.entries)
      demand[key.first].emplace_back(key.second,
                                     to_count(t.rescale_to_level(m)));

    std::vector<MapInterval> intervals;
    std::uint64_t covered = 0;
    for (const MapInterval& block : prev.intervals()) {
      std::uint64_t cur = block.lo << shift;
      std::uint64_t end = block.hi << shift;
      auto& queue = demand[block.image];
      while (cur < end) {
        if (queue.empty())
          raise(Errc::InvariantViolation,
                "internal: transported mass does not fill its source block");
        std::uint64_t take = std::min<std::uint64_t>(queue.front().second,
                                                     end - cur);
        intervals.push_back({cur, cur + take, queue.front().first});
        cur += take;
        queue.front().second -= take;
        if (queue.front().second == 0) queue.pop_front();
      }
      covered = std::max(covered, end);
    }
    for (const auto& [x, queue] : demand)
      if (!queue.empty())
        raise(Errc::InvariantViolation,
              "internal: transported mass exceeds its source block");

    // Residual blocks in enumeration order, in the expanded free region.
    std::uint64_t pos = prev.dom_size() << shift;
    for (const auto& [y, u] : plan.residuals) {
      std::uint64_t count = to_count(u.rescale_to_level(m));
      if (count == 0) continue;
      intervals.push_back({pos, pos + count, y});
      pos += count;
    }
    result.maps.emplace_back(poset, m, std::move(intervals));

    if (result.maps.back().pushforward() != chain[step])
      raise(Errc::InvariantViolation,
            "internal: push-forward does not reproduce the chain member");
  }
  return result;
}

std::optional<std::size_t> evaluate_limit(const RealizationResult& result,
                                          const Word& w) {
  if (w.level() < result.top_level())
    raise(Errc::DepthTooSmall, "word is shorter than the top level");
  const auto& poset = *result.maps.front().poset();
  std::optional<std::size_t> current;
  for (std::size_t i = 0; i < result.maps.size(); ++i) {
    auto image = result.maps[i].image_of(project(w, result.levels[i]));
    if (!image) continue;
    if (!current || poset.leq(*current, *image)) {
      current = image;
    } else if (!poset.leq(*image, *current)) {
      raise(Errc::InvariantViolation,
            "internal: projections yield incomparable values");
    }
  }
  return current;
}

ScottExtension::ScottExtension(PosetPtr poset,
                               std::vector<std::vector<std::size_t>> table)
    : poset_(std::move(poset)), table_(std::move(table)) {}

std::size_t ScottExtension::value_at(const Word& w) const {
  Word p = project(w, level());
  return table_[p.level()][p.bits()];
}

ScottExtension scott_extend(const PartialTreeMap& f) {
  PosetFlags flags = f.poset()->classify();
  if (!flags.is_bounded_complete || !flags.has_bottom)
    raise(Errc::NotBoundedComplete,
          "extension requires a bounded-complete poset with bottom");
  if (f.level() > 24)
    raise(Errc::SizeLimit, "extension table would be too large");

  const auto& poset = *f.poset();
  std::size_t bottom = 0;
  for (std::size_t b = 0; b < poset.size(); ++b) {
    bool least = true;
    for (std::size_t i = 0; i < poset.size(); ++i)
      if (!poset.leq(b, i)) {
        least = false;
        break;
      }
    if (least) {
      bottom = b;
      break;
    }
  }

  const unsigned n = f.level();
  std::vector<std::vector<std::size_t>> table(n + 1);
  std::vector<std::vector<bool>> full(n + 1);
  table[n].resize(std::uint64_t(1) << n);
  full[n].resize(std::uint64_t(1) << n);
  for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << n); ++idx) {
    auto image = f.image_of_index(idx);
    full[n][idx] = image.has_value();
    table[n][idx] = image.value_or(bottom);
  }
  for (unsigned l = n; l-- > 0;) {
    table[l].resize(std::uint64_t(1) << l);
    full[l].resize(std::uint64_t(1) << l);
    for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << l); ++idx) {
      bool both = full[l + 1][2 * idx] && full[l + 1][2 * idx + 1];
      full[l][idx] = both;
      if (!both) {
        table[l][idx] = bottom;
        continue;
      }
      std::size_t pair[2] = {table[l + 1][2 * idx], table[l + 1][2 * idx + 1]};
      auto inf = poset.infimum(std::span<const std::size_t>(pair, 2));
      if (!inf)
        raise(Errc::InvariantViolation,
              "internal: missing infimum in a bounded-complete poset");
      table[l][idx] = *inf;
    }
  }
  return ScottExtension(f.poset(), std::move(table));
}

Word unit_adjoint(const Dyadic& r, unsigned depth) {
  if (r.is_negative() || r > Dyadic::one())
    raise(Errc::OutOfRange, "adjoint argument " + r.str() + " outside [0,1]");
  if (depth > Word::kMaxLevel)
    raise(Errc::SizeLimit, "depth exceeds the representable maximum");
  if (r.exponent() > depth)
    raise(Errc::LevelTooSmall,
          "depth " + std::to_string(depth) + " cannot express " + r.str());
  if (r.is_zero()) return Word(0, depth);
  std::uint64_t k = r.numerator().convert_to<std::uint64_t>();
  unsigned pad = depth - r.exponent();
  std::uint64_t ones = pad == 0 ? 0 : ((std::uint64_t(1) << pad) - 1);
  return Word(((k - 1) << pad) | ones, depth);
}

Dyadic word_value_inf(const Word& w) {
  return Dyadic(BigInt(w.bits()), w.level());
}

Dyadic word_value_sup(const Word& w) {
  return Dyadic(BigInt(w.bits()) + 1, w.level());
}

CylinderCheck cylinder_pushforward_check(unsigned depth, ExecPolicy policy) {
  if (depth < 1) raise(Errc::OutOfRange, "depth must be at least 1");
  if (depth > 14) raise(Errc::SizeLimit, "cylinder sweep depth is capped at 14");

  const std::uint64_t grid = (std::uint64_t(1) << depth) + 1;

  // Grid membership count of the preimage of cylinder (n, k); the k = 0
  // preimage is closed at r = 0, so one endpoint is discounted there.
  auto measure_one = [&](unsigned n, std::uint64_t k) -> Dyadic {
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < grid; ++i) {
      Word w = unit_adjoint(Dyadic(BigInt(i), depth), depth);
      if ((w.bits() >> (depth - n)) == k) ++count;
    }
    return Dyadic(BigInt(count) - (k == 0 ? 1 : 0), depth);
  };

  CylinderCheck out;
  for (unsigned n = 1; n <= depth && out.pass; ++n) {
    const std::uint64_t width = std::uint64_t(1) << n;
    const Dyadic expected(1, n);
    std::optional<std::uint64_t> bad;

    if (policy == ExecPolicy::parallel) {
#ifdef _OPENMP
      std::int64_t first_bad = std::numeric_limits<std::int64_t>::max();
#pragma omp parallel for schedule(static) reduction(min : first_bad)
      for (std::int64_t k = 0; k < static_cast<std::int64_t>(width); ++k) {
        if (measure_one(n, static_cast<std::uint64_t>(k)) != expected)
          first_bad = std::min(first_bad, k);
      }
      if (first_bad != std::numeric_limits<std::int64_t>::max())
        bad = static_cast<std::uint64_t>(first_bad);
#else
      policy = ExecPolicy::serial;
#endif
    }
    if (policy == ExecPolicy::serial) {
      for (std::uint64_t k = 0; k < width && !bad; ++k)
        if (measure_one(n, k) != expected) bad = k;
    }

    if (bad) {
      out.pass = false;
      out.witness = Word(*bad, n);
      out.computed = measure_one(n, *bad);
      out.expected = expected;
    }
  }
  return out;
}

std::optional<std::size_t> skorohod_compose(const RealizationResult& result,
                                            const Dyadic& r, unsigned depth) {
  return evaluate_limit(result, unit_adjoint(r, depth));
}

SimpleValuation skorohod_grid_pushforward(const RealizationResult& result,
                                          unsigned depth, ExecPolicy policy) {
  if (depth < result.top_level())
    raise(Errc::DepthTooSmall, "resolution is below the top level");
  if (depth > kMaxScanDepth)
    raise(Errc::SizeLimit, "grid sweep depth is capped");
  const std::uint64_t cells = std::uint64_t(1) << depth;
  const PosetPtr& poset = result.maps.front().poset();

  // Cell k = (k/2^d, (k+1)/2^d]; its right endpoint selects the branch.
  auto cell_value = [&](std::uint64_t k) -> std::optional<std::size_t> {
    Word w = unit_adjoint(Dyadic(BigInt(k) + 1, depth), depth);
    return evaluate_limit(result, w);
  };

  std::map<std::size_t, std::uint64_t> counts;
  if (policy == ExecPolicy::parallel) {
#ifdef _OPENMP
    auto ranges = chunks(cells, worker_count());
    std::vector<std::map<std::size_t, std::uint64_t>> partial(ranges.size());
#pragma omp parallel num_threads(static_cast<int>(ranges.size()))
    {
      unsigned t = static_cast<unsigned>(omp_get_thread_num());
      for (std::uint64_t k = ranges[t].first; k < ranges[t].second; ++k)
        if (auto v = cell_value(k)) ++partial[t][*v];
    }
    for (const auto& part : partial)
      for (const auto& [image, c] : part) counts[image] += c;
#else
    policy = ExecPolicy::serial;
#endif
  }
  if (policy == ExecPolicy::serial) {
    for (std::uint64_t k = 0; k < cells; ++k)
      if (auto v = cell_value(k)) ++counts[*v];
  }

  std::map<std::size_t, Dyadic> weights;
  for (const auto& [image, c] : counts)
    weights.emplace(image, Dyadic(BigInt(c), depth));
  return SimpleValuation::make_indexed(poset, std::move(weights));
}

ASConvergenceCertificate empirical_convergence(
    std::span<const RealizationResult> sequence, const RealizationResult& limit,
    unsigned depth, std::size_t tail, ExecPolicy policy) {
  if (tail < 1 || tail > sequence.size())
    raise(Errc::OutOfRange, "tail must lie within the sequence");
  unsigned needed = limit.top_level();
  for (const auto& r : sequence) needed = std::max(needed, r.top_level());
  for (const auto& r : sequence)
    if (r.maps.front().poset() != limit.maps.front().poset())
      raise(Errc::DifferentPosets, "realizations target different posets");
  if (depth < needed)
    raise(Errc::DepthTooSmall, "depth is below a realization's top level");
  if (depth > kMaxScanDepth) raise(Errc::SizeLimit, "scan depth is capped");

  const std::uint64_t words = std::uint64_t(1) << depth;

  // A word counts toward the domain when the limit map is defined there;
  // it is an exception when some member at or past the tail disagrees.
  auto classify = [&](std::uint64_t idx, bool& in_dom) -> bool {
    Word w(idx, depth);
    auto lim = evaluate_limit(limit, w);
    in_dom = lim.has_value();
    if (!lim) return false;
    for (std::size_t n = tail - 1; n < sequence.size(); ++n) {
      auto v = evaluate_limit(sequence[n], w);
      if (!v || *v != *lim) return true;
    }
    return false;
  };

  std::uint64_t dom_count = 0;
  std::vector<std::uint64_t> exceptions;
  if (policy == ExecPolicy::parallel) {
#ifdef _OPENMP
    auto ranges = chunks(words, worker_count());
    std::vector<std::vector<std::uint64_t>> found(ranges.size());
    std::vector<std::uint64_t> doms(ranges.size(), 0);
#pragma omp parallel num_threads(static_cast<int>(ranges.size()))
    {
      unsigned t = static_cast<unsigned>(omp_get_thread_num());
      for (std::uint64_t idx = ranges[t].first; idx < ranges[t].second; ++idx) {
        bool in_dom = false;
        if (classify(idx, in_dom)) found[t].push_back(idx);
        if (in_dom) ++doms[t];
      }
    }
    // Chunks are contiguous and ascending, so concatenation preserves
    // lexicographic order.
    for (std::size_t t = 0; t < ranges.size(); ++t) {
      dom_count += doms[t];
      exceptions.insert(exceptions.end(), found[t].begin(), found[t].end());
    }
#else
    policy = ExecPolicy::serial;
#endif
  }
  if (policy == ExecPolicy::serial) {
    for (std::uint64_t idx = 0; idx < words; ++idx) {
      bool in_dom = false;
      if (classify(idx, in_dom)) exceptions.push_back(idx);
      if (in_dom) ++dom_count;
    }
  }

  ASConvergenceCertificate cert;
  cert.depth = depth;
  cert.tail = tail;
  cert.dom_count = dom_count;
  cert.exception_words.reserve(exceptions.size());
  for (std::uint64_t idx : exceptions) cert.exception_words.emplace_back(idx, depth);
  cert.exception_mass = Dyadic(BigInt(exceptions.size()), depth);
  return cert;
}

}  // namespace valord
