#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "valord/dyadic.hpp"
#include "valord/poset.hpp"

namespace valord {

/// Simple sub-probability valuation: a finite weighted sum of point masses
/// with exact dyadic weights. Zero weights are dropped on construction, so
/// equality of valuations is representational; the empty support is the
/// zero valuation. Total mass is at most one.
class SimpleValuation {
 public:
  static SimpleValuation make(
      PosetPtr poset, const std::vector<std::pair<std::string, Dyadic>>& mass);
  static SimpleValuation make_indexed(PosetPtr poset,
                                      std::map<std::size_t, Dyadic> weights);
  static SimpleValuation zero(PosetPtr poset);

  const PosetPtr& poset() const { return poset_; }
  /// Support indices in enumeration order, each with a positive weight.
  const std::map<std::size_t, Dyadic>& weights() const { return weights_; }
  Dyadic weight(std::size_t i) const;
  Dyadic total_mass() const;

  /// Mass of an upper set of this valuation's poset.
  Dyadic mass(const UpperSet& upper) const;

  bool operator==(const SimpleValuation& o) const {
    return poset_ == o.poset_ && weights_ == o.weights_;
  }

 private:
  SimpleValuation(PosetPtr poset, std::map<std::size_t, Dyadic> weights)
      : poset_(std::move(poset)), weights_(std::move(weights)) {}

  PosetPtr poset_;
  std::map<std::size_t, Dyadic> weights_;
};

/// Monotone non-negative function given by its values on part of a poset.
struct MonotoneFunction {
  std::map<std::size_t, Dyadic> values;
};

struct OrderDecision {
  bool holds = false;
  std::optional<UpperSet> witness;  // a separating upper set on failure
};

/// Brute-force order oracle: checks mu(U) <= nu(U) over every upper set.
OrderDecision order_oracle(
    const SimpleValuation& mu, const SimpleValuation& nu,
    std::size_t bound = FinitePoset::kDefaultEnumerationBound);

/// Exact integral of a monotone function against a simple valuation.
Dyadic integrate_monotone(const SimpleValuation& mu, const MonotoneFunction& f);

struct PortmanteauViolation {
  std::string condition;  // "liminf-open" or "limsup-upper"
  UpperSet witness;
  Dyadic observed;
  Dyadic required;
};

struct ConvergenceCertificate {
  std::size_t horizon = 1;
  Dyadic tolerance;
  std::vector<PortmanteauViolation> violations;
  bool passed() const { return violations.empty(); }
};

/// Finite-horizon convergence check over the tail n >= horizon (1-based):
/// every upper set O must satisfy min_n mu_n(O) >= mu(O) - tolerance, and
/// every finitely generated upper set over the supports must satisfy
/// max_n mu_n(up F) <= mu(up F) + tolerance. Emits a certificate over the
/// inspected tail, never a claim about a true limit.
ConvergenceCertificate portmanteau_check(
    std::span<const SimpleValuation> sequence, const SimpleValuation& limit,
    std::size_t horizon, const Dyadic& tolerance,
    std::size_t bound = FinitePoset::kDefaultEnumerationBound);

}  // namespace valord
