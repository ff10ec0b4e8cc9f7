#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "valord/valuation.hpp"

namespace valord {

enum class TransportRelation { leq, waybelow };
enum class MassRule { strict_total, strict_per_element };

const char* relation_name(TransportRelation r);
const char* mass_rule_name(MassRule r);
MassRule parse_mass_rule(const std::string& text);

/// Transport matrix certifying mu <= nu: positive entries sit on
/// order-related pairs, rows sum exactly to the mu-weights, columns stay
/// within the nu-weights. residuals[y] is the nu-mass at y not needed for
/// transported mass, and leftover is the unit mass missing from nu.
struct TransportPlan {
  TransportRelation relation = TransportRelation::leq;
  std::map<std::pair<std::size_t, std::size_t>, Dyadic> entries;
  std::map<std::size_t, Dyadic> residuals;
  Dyadic leftover;
};

/// Constructive refusal. For order decisions the witness is an upper set
/// with mu(U) > nu(U) (separating_mu/nu are those masses). For way-below
/// decisions refused on flow grounds the witness is the way-below closure
/// of the stuck supply nodes and separating_mu is their total supply; for
/// mass-rule refusals there is no set witness.
struct TransportRefusal {
  std::string reason;  // "flow-deficit" or "mass-rule"
  std::optional<UpperSet> witness;
  Dyadic separating_mu;
  Dyadic separating_nu;
  std::vector<std::size_t> cut_supply;  // the stuck support nodes of mu
  std::string detail;
};

using TransportDecision = std::variant<TransportPlan, TransportRefusal>;

/// Decides mu <= nu by exact max-flow on the transport network and returns
/// either the plan or a separating witness. Augmenting-path search is
/// breadth-first with elements scanned in enumeration order, so the plan
/// is reproducible.
TransportDecision decide_order_maxflow(const SimpleValuation& mu,
                                       const SimpleValuation& nu);

struct WayBelowDecision {
  TransportDecision decision;
  MassRule rule = MassRule::strict_total;
  bool strict_total_holds = false;
  bool strict_per_element_holds = false;
  std::optional<std::size_t> per_element_violator;
  bool rules_disagree() const {
    return strict_total_holds != strict_per_element_holds;
  }
};

/// Way-below variant: inner edges require x << y and the selected strict
/// mass condition must hold as well. Both mass readings are evaluated so
/// callers can surface a disagreement between them.
WayBelowDecision decide_way_below(const SimpleValuation& mu,
                                  const SimpleValuation& nu,
                                  MassRule rule = MassRule::strict_total);

struct PlanCheck {
  bool ok = true;
  std::string violated;  // name of the first violated constraint
  std::string detail;
};

/// Re-checks every plan invariant by exact arithmetic, independently of
/// the solver.
PlanCheck verify_transport_plan(const SimpleValuation& mu,
                                const SimpleValuation& nu,
                                const TransportPlan& plan);

}  // namespace valord
