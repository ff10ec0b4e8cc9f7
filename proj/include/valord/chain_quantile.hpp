#pragma once

#include <map>
#include <optional>
#include <vector>

#include "valord/valuation.hpp"

namespace valord {

/// Simple measure on the dyadic chain model of [0,1]: support points are
/// dyadics ordered numerically, with bottom 0 and top 1 adjoined to the
/// chain. Weights are positive and sum to at most one.
class ChainMeasure {
 public:
  static ChainMeasure make(
      const std::vector<std::pair<Dyadic, Dyadic>>& mass);
  static ChainMeasure zero() { return ChainMeasure({}); }

  const std::map<Dyadic, Dyadic>& weights() const { return weights_; }
  Dyadic total_mass() const;

  bool operator==(const ChainMeasure& o) const {
    return weights_ == o.weights_;
  }

 private:
  explicit ChainMeasure(std::map<Dyadic, Dyadic> weights)
      : weights_(std::move(weights)) {}
  std::map<Dyadic, Dyadic> weights_;
};

/// Cumulative distribution at x: the mass of the closed down-set of x.
Dyadic cdf(const ChainMeasure& mu, const Dyadic& x);

/// Lower adjoint of the distribution function: the least chain point whose
/// cumulative mass reaches r. Resolves to the top 1 when no point does,
/// and to the bottom 0 at r = 0.
Dyadic quantile(const ChainMeasure& mu, const Dyadic& r);

enum class StepSide { right_continuous, left_continuous };

/// Monotone step function on [0,1]: values.size() == breakpoints.size()+1,
/// with the side convention fixing which endpoint each region owns.
struct StepFunction {
  StepSide side = StepSide::right_continuous;
  std::vector<Dyadic> breakpoints;
  std::vector<Dyadic> values;
};

StepFunction cdf_function(const ChainMeasure& mu);       // right-continuous
StepFunction quantile_function(const ChainMeasure& mu);  // left-continuous

/// Push-forward of Lebesgue measure under the quantile map, computed from
/// the step structure: each point receives the exact length of the
/// half-open parameter interval mapped onto it. For sub-probability input
/// the missing mass lands on the top and is flagged as the deviation.
struct QuantilePushforward {
  ChainMeasure measure = ChainMeasure::zero();
  Dyadic top_deviation;
  bool deviates() const { return !top_deviation.is_zero(); }
};

QuantilePushforward quantile_pushforward(const ChainMeasure& mu);

/// Two-sided check of the order correspondence between the valuation order
/// (via the brute-force oracle on the induced sub-chain poset) and the
/// pointwise order of quantile functions on the dyadic grid of the given
/// resolution. The correspondence is certified only for pairs of equal
/// total mass; other pairs are evaluated but marked outside the verified
/// hypothesis.
struct ChainIsoReport {
  bool valuation_holds = false;
  std::optional<UpperSet> upper_witness;
  bool quantile_holds = false;
  std::optional<Dyadic> r_witness;
  bool equal_mass = false;
  bool consistent() const { return valuation_holds == quantile_holds; }
  bool pass() const { return consistent(); }
};

ChainIsoReport chain_order_iso_check(const ChainMeasure& mu,
                                     const ChainMeasure& nu,
                                     unsigned resolution);

}  // namespace valord
