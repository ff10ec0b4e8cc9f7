#pragma once

#include <optional>
#include <span>
#include <vector>

#include "valord/cantor.hpp"
#include "valord/exec.hpp"
#include "valord/transport.hpp"

namespace valord {

/// An increasing chain of valuations realized as an increasing chain of
/// partial maps on level antichains: pushforward(maps[i]) reproduces the
/// i-th measure exactly and consecutive maps are ordered.
struct RealizationResult {
  std::vector<unsigned> levels;  // strictly increasing
  std::vector<PartialTreeMap> maps;
  std::vector<TransportPlan> plans;  // one per consecutive pair

  unsigned top_level() const { return levels.back(); }
};

/// Builds the realization of an increasing chain. Levels are chosen
/// minimal (every weight and transport number at step i has denominator
/// 2^levels[i], bumped to stay strictly increasing); intervals are
/// allocated lexicographically, transported mass first in target order
/// inside each source block, then the residual blocks, then the leftover
/// at the right end. Throws NotAChain when a consecutive pair fails the
/// valuation order.
RealizationResult realize_chain(std::span<const SimpleValuation> chain);

/// Value of the limit map at a word of depth at least the top level: the
/// supremum of the images of the word's projections, when any projection
/// lands in a domain.
std::optional<std::size_t> evaluate_limit(const RealizationResult& result,
                                          const Word& w);

/// Total monotone extension of a partial map on C_n to all words of length
/// at most n: a word maps to the infimum of the images above it when its
/// whole subtree at level n is in the domain, and to bottom otherwise.
/// Longer words evaluate through their level-n projection.
class ScottExtension {
 public:
  ScottExtension(PosetPtr poset, std::vector<std::vector<std::size_t>> table);

  const PosetPtr& poset() const { return poset_; }
  unsigned level() const { return static_cast<unsigned>(table_.size() - 1); }
  std::size_t value_at(const Word& w) const;
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

 private:
  PosetPtr poset_;
  std::vector<std::vector<std::size_t>> table_;  // table_[l][index], l <= n
};

ScottExtension scott_extend(const PartialTreeMap& f);

/// Depth-d truncation of the lower adjoint of the canonical surjection of
/// the Cantor set onto [0,1]: the lexicographically least branch whose
/// value reaches r. Below the truncation the branch continues with ones,
/// except at r = 0 where it is the all-zeros branch.
Word unit_adjoint(const Dyadic& r, unsigned depth);

/// Branch values of a truncated word: all-zeros and all-ones completions.
Dyadic word_value_inf(const Word& w);
Dyadic word_value_sup(const Word& w);

struct CylinderCheck {
  bool pass = true;
  std::optional<Word> witness;
  Dyadic computed;
  Dyadic expected;
};

/// Checks, for every cylinder of length 1..depth, that the exact Lebesgue
/// length of the adjoint's preimage of the cylinder equals the cylinder's
/// counting mass 1/2^n. Lengths are computed from the grid of dyadics at
/// resolution depth with half-open boundary conventions.
CylinderCheck cylinder_pushforward_check(unsigned depth,
                                         ExecPolicy policy = ExecPolicy::serial);

/// Composition of the limit map with the unit-interval adjoint.
std::optional<std::size_t> skorohod_compose(const RealizationResult& result,
                                            const Dyadic& r, unsigned depth);

/// Push-forward of the grid-weighted Lebesgue measure at resolution depth
/// under the composed map: cell (k/2^d, (k+1)/2^d] is carried onto the
/// depth-d word of index k.
SimpleValuation skorohod_grid_pushforward(const RealizationResult& result,
                                          unsigned depth,
                                          ExecPolicy policy = ExecPolicy::serial);

struct ASConvergenceCertificate {
  unsigned depth = 0;
  std::size_t tail = 1;
  std::uint64_t dom_count = 0;  // words of the limit domain inspected
  std::vector<Word> exception_words;
  Dyadic exception_mass;
  bool empty() const { return exception_words.empty(); }
};

/// Enumerates every depth-d word in the limit map's domain and reports
/// those where some sequence member at or past the tail disagrees with the
/// limit value. Exceptions come back in lexicographic order under either
/// policy; their mass is exact.
ASConvergenceCertificate empirical_convergence(
    std::span<const RealizationResult> sequence, const RealizationResult& limit,
    unsigned depth, std::size_t tail, ExecPolicy policy = ExecPolicy::serial);

}  // namespace valord
