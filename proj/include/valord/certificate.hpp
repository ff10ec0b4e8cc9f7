#pragma once

#include <string>

#include "valord/json_io.hpp"

namespace valord {

/// Machine-checkable result document. A certificate embeds the input
/// documents, the decision, the constructive witnesses (plans, witness
/// sets, exception words, realizations) and a transcript of re-checked
/// invariants, so a third party can reproduce the decision from the
/// embedded data alone, without the solver.
///
/// Layout: {schema, command:{name,params}, inputs:{digest,documents},
/// decision, witnesses, transcript:[{check,ok,detail}...]}.
Json build_certificate(const std::string& command, const Json& params,
                       const Json& documents, const Json& witnesses);

/// True for decisions mapped to exit status 0.
bool decision_is_positive(const std::string& decision);

struct VerifyOutcome {
  bool valid = false;
  std::string detail;
};

/// Re-runs the transcript's checks on the embedded data and confirms that
/// they reproduce the stored decision and transcript bit for bit.
VerifyOutcome verify_certificate(const Json& certificate);

Json refusal_to_json(const TransportRefusal& refusal, const FinitePoset& poset);

std::string fnv1a_digest(const std::string& bytes);

/// Fixture construction for the flat-poset demonstration: the sequence
/// (2^n-1)/2^n at the first point plus 2^-n at the second, its limit
/// concentrated at the first point, and the approximating chain that
/// trades the second point's mass for bottom mass.
struct FlatDemo {
  PosetPtr poset;
  std::size_t zero, one, bottom;
  std::vector<SimpleValuation> members;  // mu_n, n = 1..depth
  std::vector<SimpleValuation> approximants;  // sigma_n, an increasing chain
};
FlatDemo make_flat_demo(PosetPtr poset, unsigned depth);

}  // namespace valord
