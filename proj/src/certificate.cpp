#include "valord/certificate.hpp"

#include <cstdio>
#include <functional>

namespace valord {

namespace {

constexpr const char* kSchema = "valord.certificate/1";

Json entry(const std::string& check, bool ok, const std::string& detail = "") {
  Json e{{"check", check}, {"ok", ok}};
  if (!detail.empty()) e["detail"] = detail;
  return e;
}

// Runs a check body, folding thrown errors into a failed entry.
Json safe_entry(const std::string& check,
                const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [ok, detail] = body();
    return entry(check, ok, detail);
  } catch (const Error& e) {
    return entry(check, false, e.what());
  }
}

struct Recheck {
  std::string decision;
  Json transcript = Json::array();
};

TransportRefusal refusal_from_json(const Json& doc, const PosetPtr& poset) {
  TransportRefusal refusal;
  refusal.reason = doc.at("reason").get<std::string>();
  if (doc.contains("witness"))
    refusal.witness = upper_set_from_json(doc.at("witness"), poset);
  refusal.separating_mu = Dyadic::parse(doc.at("separating_mu").get<std::string>());
  refusal.separating_nu = Dyadic::parse(doc.at("separating_nu").get<std::string>());
  if (doc.contains("cut_supply"))
    for (const Json& name : doc.at("cut_supply"))
      refusal.cut_supply.push_back(poset->index(name.get<std::string>()));
  if (doc.contains("detail")) refusal.detail = doc.at("detail").get<std::string>();
  return refusal;
}

void check_realization(const std::vector<SimpleValuation>& chain,
                       const RealizationResult& result, const std::string& tag,
                       Json& transcript) {
  bool shape = result.maps.size() == chain.size() &&
               result.levels.size() == chain.size() &&
               result.plans.size() + 1 == chain.size();
  transcript.push_back(entry(tag + "shape", shape));
  if (!shape) return;

  bool increasing = true;
  for (std::size_t i = 0; i + 1 < result.levels.size(); ++i)
    if (result.levels[i] >= result.levels[i + 1]) increasing = false;
  transcript.push_back(entry(tag + "levels-increasing", increasing));

  bool exact = true;
  std::string detail;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (!(result.maps[i].pushforward() == chain[i])) {
      exact = false;
      detail = "push-forward of map " + std::to_string(i + 1) +
               " does not reproduce the measure";
      break;
    }
  }
  transcript.push_back(entry(tag + "pushforwards-exact", exact, detail));

  transcript.push_back(safe_entry(
      tag + "maps-ordered", [&]() -> std::pair<bool, std::string> {
        for (std::size_t i = 0; i + 1 < result.maps.size(); ++i)
          if (!partial_map_leq(result.maps[i], result.maps[i + 1]))
            return {false, "maps " + std::to_string(i + 1) + " and " +
                               std::to_string(i + 2) + " are unordered"};
        return {true, ""};
      }));

  bool plans_ok = true;
  std::string plan_detail;
  for (std::size_t i = 0; i < result.plans.size(); ++i) {
    PlanCheck pc = verify_transport_plan(chain[i], chain[i + 1], result.plans[i]);
    if (!pc.ok) {
      plans_ok = false;
      plan_detail = "plan " + std::to_string(i + 1) + ": " + pc.violated;
      break;
    }
  }
  transcript.push_back(entry(tag + "plans-valid", plans_ok, plan_detail));
}

void check_plan_witness(const SimpleValuation& mu, const SimpleValuation& nu,
                        const TransportPlan& plan, Json& transcript) {
  PlanCheck pc = verify_transport_plan(mu, nu, plan);
  transcript.push_back(entry("plan-invariants", pc.ok,
                             pc.ok ? "" : pc.violated + ": " + pc.detail));
  Dyadic transported;
  for (const auto& [key, t] : plan.entries) transported += t;
  bool mass_ok = transported == mu.total_mass();
  transcript.push_back(entry("transported-mass", mass_ok,
                             transported.str() + " of " +
                                 mu.total_mass().str()));
  transcript.push_back(
      entry("dyadic-entries", true, "structural: every entry is dyadic"));
}

void check_order_refusal(const SimpleValuation& mu, const SimpleValuation& nu,
                         const Json& refusal_doc, Json& transcript) {
  transcript.push_back(safe_entry(
      "witness-separates", [&]() -> std::pair<bool, std::string> {
        TransportRefusal refusal = refusal_from_json(refusal_doc, mu.poset());
        if (!refusal.witness) return {false, "refusal carries no witness"};
        Dyadic mu_mass = mu.mass(*refusal.witness);
        Dyadic nu_mass = nu.mass(*refusal.witness);
        bool ok = mu_mass > nu_mass && mu_mass == refusal.separating_mu &&
                  nu_mass == refusal.separating_nu;
        return {ok, mu_mass.str() + " > " + nu_mass.str()};
      }));
}

Recheck recheck_order(const Json& params, const Json& docs,
                      const Json& witnesses, bool with_oracle) {
  PosetPtr poset = poset_from_json(docs.at("poset"));
  SimpleValuation mu = valuation_from_json(docs.at("mu"), poset);
  SimpleValuation nu = valuation_from_json(docs.at("nu"), poset);

  Recheck out;
  if (witnesses.contains("plan")) {
    out.decision = "holds";
    TransportPlan plan = plan_from_json(witnesses.at("plan"), *poset);
    check_plan_witness(mu, nu, plan, out.transcript);
  } else {
    out.decision = "fails";
    check_order_refusal(mu, nu, witnesses.at("refusal"), out.transcript);
  }

  if (with_oracle) {
    std::size_t bound = params.value("oracle_bound",
                                     FinitePoset::kDefaultEnumerationBound);
    if (poset->size() <= bound) {
      OrderDecision od = order_oracle(mu, nu, bound);
      out.transcript.push_back(entry("oracle-agrees",
                                     od.holds == (out.decision == "holds")));
    } else {
      out.transcript.push_back(entry(
          "oracle-agrees", true, "skipped: poset exceeds the enumeration bound"));
    }
  }
  return out;
}

Recheck recheck_waybelow(const Json& params, const Json& docs,
                         const Json& witnesses) {
  PosetPtr poset = poset_from_json(docs.at("poset"));
  SimpleValuation mu = valuation_from_json(docs.at("mu"), poset);
  SimpleValuation nu = valuation_from_json(docs.at("nu"), poset);
  MassRule rule = parse_mass_rule(params.at("mass_rule").get<std::string>());

  Recheck out;
  Dyadic supply = mu.total_mass();
  bool total_holds = supply < nu.total_mass();
  bool per_element_holds = true;
  for (const auto& [y, s] : nu.weights())
    if (!(supply < s)) {
      per_element_holds = false;
      break;
    }

  out.transcript.push_back(
      entry("mass-strict-total",
            total_holds == witnesses.at("strict_total_holds").get<bool>(),
            total_holds ? "strict" : "not strict"));
  out.transcript.push_back(entry(
      "mass-strict-per-element",
      per_element_holds == witnesses.at("strict_per_element_holds").get<bool>(),
      per_element_holds ? "strict" : "not strict"));
  if (total_holds != per_element_holds)
    out.transcript.push_back(
        entry("mass-readings-disagree", true,
              "the two readings of the strict mass condition differ here"));

  bool mass_ok = rule == MassRule::strict_total ? total_holds : per_element_holds;
  if (witnesses.contains("plan")) {
    out.decision = "holds";
    out.transcript.push_back(entry("mass-rule-holds", mass_ok,
                                   mass_rule_name(rule)));
    TransportPlan plan = plan_from_json(witnesses.at("plan"), *poset);
    bool relation_ok = plan.relation == TransportRelation::waybelow;
    out.transcript.push_back(entry("plan-relation", relation_ok, "waybelow"));
    check_plan_witness(mu, nu, plan, out.transcript);
  } else {
    out.decision = "fails";
    const Json& refusal_doc = witnesses.at("refusal");
    std::string reason = refusal_doc.at("reason").get<std::string>();
    if (reason == "mass-rule") {
      out.transcript.push_back(entry("mass-rule-refused", !mass_ok,
                                     mass_rule_name(rule)));
    } else {
      out.transcript.push_back(safe_entry(
          "cut-separates", [&]() -> std::pair<bool, std::string> {
            TransportRefusal refusal = refusal_from_json(refusal_doc, poset);
            if (!refusal.witness) return {false, "refusal carries no witness"};
            // The witness must be the way-below closure of the stuck
            // supply, and the stuck supply must outweigh it.
            std::vector<bool> closure(poset->size(), false);
            Dyadic stuck;
            for (std::size_t x : refusal.cut_supply) {
              stuck += mu.weight(x);
              for (std::size_t z = 0; z < poset->size(); ++z)
                if (poset->waybelow(x, z)) closure[z] = true;
            }
            if (closure != refusal.witness->members())
              return {false, "witness is not the closure of the cut supply"};
            Dyadic covered = nu.mass(*refusal.witness);
            bool ok = stuck > covered && stuck == refusal.separating_mu &&
                      covered == refusal.separating_nu;
            return {ok, stuck.str() + " > " + covered.str()};
          }));
    }
  }
  return out;
}

Recheck recheck_realize(const Json& docs, const Json& witnesses) {
  PosetPtr poset = poset_from_json(docs.at("poset"));
  std::vector<SimpleValuation> chain;
  for (const Json& doc : docs.at("chain"))
    chain.push_back(valuation_from_json(doc, poset));

  Recheck out;
  if (witnesses.contains("realization")) {
    out.decision = "pass";
    RealizationResult result =
        realization_from_json(witnesses.at("realization"), poset);
    check_realization(chain, result, "", out.transcript);
  } else {
    out.decision = "fails";
    std::size_t pair_index = witnesses.at("pair_index").get<std::size_t>();
    bool in_range = pair_index >= 1 && pair_index < chain.size();
    out.transcript.push_back(entry("pair-index", in_range));
    if (in_range)
      check_order_refusal(chain[pair_index - 1], chain[pair_index],
                          witnesses.at("refusal"), out.transcript);
  }
  return out;
}

Recheck recheck_extend(const Json& docs, const Json& witnesses) {
  PosetPtr poset = poset_from_json(docs.at("poset"));
  PartialTreeMap f = tree_map_from_json(docs.at("map"), poset);

  Recheck out;
  out.decision = "pass";
  const Json& table = witnesses.at("extension");
  const unsigned n = f.level();

  bool shape = table.is_array() && table.size() == n + 1;
  if (shape)
    for (unsigned l = 0; l <= n; ++l)
      if (table[l].size() != (std::uint64_t(1) << l)) shape = false;
  out.transcript.push_back(entry("table-shape", shape));
  if (!shape) return out;

  std::size_t bottom = 0;
  for (std::size_t b = 0; b < poset->size(); ++b) {
    bool least = true;
    for (std::size_t i = 0; i < poset->size(); ++i)
      if (!poset->leq(b, i)) least = false;
    if (least) {
      bottom = b;
      break;
    }
  }

  // Defining formula: a word maps to the infimum over its full level-n
  // subtree when that subtree is inside the domain, and to bottom
  // otherwise.
  out.transcript.push_back(safe_entry(
      "definition", [&]() -> std::pair<bool, std::string> {
        for (unsigned l = 0; l <= n; ++l) {
          for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << l); ++idx) {
            std::uint64_t lo = idx << (n - l), hi = (idx + 1) << (n - l);
            std::vector<std::size_t> images;
            bool covered = true;
            for (std::uint64_t w = lo; w < hi && covered; ++w) {
              auto image = f.image_of_index(w);
              if (!image)
                covered = false;
              else
                images.push_back(*image);
            }
            std::size_t expected = bottom;
            if (covered) {
              auto inf = poset->infimum(images);
              if (!inf) return {false, "missing infimum"};
              expected = *inf;
            }
            if (table[l][idx].get<std::string>() != poset->name(expected))
              return {false, "entry at level " + std::to_string(l) +
                                 ", index " + std::to_string(idx) +
                                 " violates the definition"};
          }
        }
        return {true, ""};
      }));

  out.transcript.push_back(safe_entry(
      "restriction-equals-map", [&]() -> std::pair<bool, std::string> {
        for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << n); ++idx) {
          auto image = f.image_of_index(idx);
          if (image &&
              table[n][idx].get<std::string>() != poset->name(*image))
            return {false, "extension disagrees with the map on its domain"};
        }
        return {true, ""};
      }));

  out.transcript.push_back(safe_entry(
      "extension-monotone", [&]() -> std::pair<bool, std::string> {
        for (unsigned l = 0; l < n; ++l)
          for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << l); ++idx) {
            std::size_t parent = poset->index(table[l][idx].get<std::string>());
            for (std::uint64_t child = 2 * idx; child <= 2 * idx + 1; ++child) {
              std::size_t value =
                  poset->index(table[l + 1][child].get<std::string>());
              if (!poset->leq(parent, value))
                return {false, "extension decreases along a tree edge"};
            }
          }
        return {true, ""};
      }));
  return out;
}

ChainMeasure pushforward_from_steps(const StepFunction& g) {
  std::vector<std::pair<Dyadic, Dyadic>> mass;
  Dyadic previous;
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    Dyadic next = i < g.breakpoints.size() ? g.breakpoints[i] : Dyadic::one();
    if (next > previous) mass.emplace_back(g.values[i], next - previous);
    previous = next;
  }
  return ChainMeasure::make(mass);
}

Recheck recheck_quantile(const Json& params, const Json& docs,
                         const Json& witnesses) {
  ChainMeasure mu = chain_measure_from_json(docs.at("measure"));
  bool roundtrip = params.value("check_roundtrip", false);
  unsigned grid = params.value("grid_exponent", 8u);

  Recheck out;
  out.transcript.push_back(
      entry("cdf-reproduced",
            step_function_to_json(cdf_function(mu)) == witnesses.at("cdf")));
  StepFunction g = quantile_function(mu);
  out.transcript.push_back(entry(
      "quantile-reproduced", step_function_to_json(g) == witnesses.at("quantile")));

  // Push-forward recomputed from the embedded step structure alone.
  ChainMeasure computed = pushforward_from_steps(g);
  Dyadic gap = Dyadic::one() - mu.total_mass();
  out.transcript.push_back(
      entry("pushforward-reproduced",
            chain_measure_to_json(computed) == witnesses.at("pushforward")));
  out.transcript.push_back(entry(
      "deviation-exact",
      Dyadic::parse(witnesses.at("top_deviation").get<std::string>()) == gap,
      gap.str()));
  out.transcript.push_back(safe_entry(
      "roundtrip-identity", [&]() -> std::pair<bool, std::string> {
        std::vector<std::pair<Dyadic, Dyadic>> expected(mu.weights().begin(),
                                                        mu.weights().end());
        expected.emplace_back(Dyadic::one(), gap);
        bool ok = computed == ChainMeasure::make(expected);
        return {ok, "measure plus its gap at the top"};
      }));

  out.transcript.push_back(safe_entry(
      "adjunction", [&]() -> std::pair<bool, std::string> {
        for (unsigned e = 0; e <= grid; ++e) {
          std::uint64_t from = e == 0 ? 0 : 1, step = e == 0 ? 1 : 2;
          for (std::uint64_t k = from; k <= (std::uint64_t(1) << e); k += step) {
            Dyadic r(BigInt(k), e);
            if (r <= mu.total_mass() && cdf(mu, quantile(mu, r)) < r)
              return {false, "F(G(r)) < r at r = " + r.str()};
            if (quantile(mu, cdf(mu, r)) > r)
              return {false, "G(F(x)) > x at x = " + r.str()};
          }
        }
        return {true, ""};
      }));

  std::string flag = witnesses.value("flag", "");
  std::string expected_flag =
      gap.is_zero() ? "" : "mass " + gap.str() + " assigned to ⊤";
  out.transcript.push_back(entry("flag-consistent", flag == expected_flag));

  out.decision = !roundtrip ? "pass"
                            : (gap.is_zero() ? "pass" : "pass-with-deviation");
  return out;
}

Recheck recheck_portmanteau(const Json& params, const Json& docs,
                            const Json& witnesses) {
  PosetPtr poset = poset_from_json(docs.at("poset"));
  std::vector<SimpleValuation> sequence;
  for (const Json& doc : docs.at("sequence"))
    sequence.push_back(valuation_from_json(doc, poset));
  SimpleValuation limit = valuation_from_json(docs.at("limit"), poset);
  std::size_t horizon = params.at("horizon").get<std::size_t>();
  Dyadic tolerance = Dyadic::parse(params.at("tolerance").get<std::string>());

  ConvergenceCertificate cert =
      portmanteau_check(sequence, limit, horizon, tolerance);

  Recheck out;
  out.decision = cert.passed() ? "pass" : "fail";
  out.transcript.push_back(
      entry("certificate-reproduced",
            portmanteau_to_json(cert, *poset) == witnesses.at("certificate")));
  return out;
}

Recheck recheck_converge(const Json& params, const Json& docs,
                         const Json& witnesses) {
  PosetPtr poset = poset_from_json(docs.at("poset"));
  auto parse_chain = [&](const Json& arr) {
    std::vector<SimpleValuation> chain;
    for (const Json& doc : arr) chain.push_back(valuation_from_json(doc, poset));
    return chain;
  };

  unsigned depth = params.at("depth").get<unsigned>();
  std::size_t tail = params.at("tail").get<std::size_t>();

  Recheck out;
  std::vector<RealizationResult> sequence;
  for (const Json& doc : witnesses.at("realizations").at("sequence"))
    sequence.push_back(realization_from_json(doc, poset));
  RealizationResult limit =
      realization_from_json(witnesses.at("realizations").at("limit"), poset);

  {
    Json sub = Json::array();
    const Json& chains = docs.at("sequence");
    bool ok = chains.size() == sequence.size();
    for (std::size_t i = 0; ok && i < sequence.size(); ++i) {
      Json inner = Json::array();
      check_realization(parse_chain(chains[i]), sequence[i], "", inner);
      for (const Json& e : inner)
        if (!e.at("ok").get<bool>()) ok = false;
      sub.push_back(inner);
    }
    out.transcript.push_back(entry("sequence-realizations-valid", ok));
  }
  {
    Json inner = Json::array();
    check_realization(parse_chain(docs.at("limit")), limit, "", inner);
    bool ok = true;
    for (const Json& e : inner)
      if (!e.at("ok").get<bool>()) ok = false;
    out.transcript.push_back(entry("limit-realization-valid", ok));
  }

  ASConvergenceCertificate scanned =
      empirical_convergence(sequence, limit, depth, tail);
  out.transcript.push_back(
      entry("exceptions-reproduced",
            as_certificate_to_json(scanned) == witnesses.at("certificate")));

  if (params.contains("bound")) {
    Dyadic bound = Dyadic::parse(params.at("bound").get<std::string>());
    out.decision = scanned.exception_mass <= bound ? "pass" : "fail";
    out.transcript.push_back(entry("mass-within-bound",
                                   out.decision == "pass",
                                   scanned.exception_mass.str() + " vs " +
                                       bound.str()));
  } else {
    out.decision = "pass";
  }
  return out;
}

Recheck recheck_demo(const Json& params, const Json& docs,
                     const Json& witnesses) {
  PosetPtr poset = poset_from_json(docs.at("poset"));
  unsigned depth = params.at("depth").get<unsigned>();
  FlatDemo demo = make_flat_demo(poset, depth);

  Recheck out;
  std::vector<RealizationResult> members;
  for (const Json& doc : witnesses.at("realizations").at("members"))
    members.push_back(realization_from_json(doc, poset));
  RealizationResult limit = realization_from_json(
      witnesses.at("realizations").at("approximant_chain"), poset);

  {
    bool ok = members.size() == demo.members.size();
    for (std::size_t i = 0; ok && i < members.size(); ++i) {
      Json inner = Json::array();
      std::vector<SimpleValuation> singleton{demo.members[i]};
      check_realization(singleton, members[i], "", inner);
      for (const Json& e : inner)
        if (!e.at("ok").get<bool>()) ok = false;
    }
    out.transcript.push_back(entry("member-realizations-valid", ok));
  }
  {
    Json inner = Json::array();
    check_realization(demo.approximants, limit, "", inner);
    bool ok = true;
    for (const Json& e : inner)
      if (!e.at("ok").get<bool>()) ok = false;
    out.transcript.push_back(entry("approximant-realization-valid", ok));
  }

  bool bounds_ok = true, masses_match = true;
  const Json& tails = witnesses.at("tails");
  if (tails.size() != depth) masses_match = false;
  for (std::size_t i = 0; i < tails.size(); ++i) {
    std::size_t tail = tails[i].at("tail").get<std::size_t>();
    ASConvergenceCertificate cert =
        empirical_convergence(members, limit, depth, tail);
    Dyadic bound(1, static_cast<std::uint32_t>(tail));
    if (Dyadic::parse(tails[i].at("mass").get<std::string>()) !=
        cert.exception_mass)
      masses_match = false;
    if (cert.exception_mass > bound) bounds_ok = false;
  }
  out.transcript.push_back(entry("tail-masses-match", masses_match));
  out.transcript.push_back(entry("tail-masses-bounded", bounds_ok));

  bool all_ones_ok = false, others_ok = true;
  {
    std::uint64_t top = (std::uint64_t(1) << depth) - 1;
    auto v = evaluate_limit(limit, Word(top, depth));
    all_ones_ok = v && *v == demo.bottom;
    for (std::uint64_t idx = 0; idx < top && others_ok; ++idx) {
      auto w = evaluate_limit(limit, Word(idx, depth));
      if (!w || *w != demo.zero) others_ok = false;
    }
  }
  out.transcript.push_back(entry(
      "all-ones-evaluates-to-bottom", all_ones_ok,
      "limit map at the all-ones word"));
  out.transcript.push_back(
      entry("other-words-evaluate-to-first-point", others_ok));

  bool positive = masses_match && bounds_ok && all_ones_ok && others_ok;
  for (const Json& e : out.transcript)
    if (!e.at("ok").get<bool>()) positive = false;
  out.decision = positive ? "pass" : "fail";
  return out;
}

Recheck recheck_command(const std::string& name, const Json& params,
                        const Json& docs, const Json& witnesses) {
  if (name == "order") return recheck_order(params, docs, witnesses, true);
  if (name == "split") return recheck_order(params, docs, witnesses, false);
  if (name == "waybelow") return recheck_waybelow(params, docs, witnesses);
  if (name == "realize") return recheck_realize(docs, witnesses);
  if (name == "extend") return recheck_extend(docs, witnesses);
  if (name == "quantile") return recheck_quantile(params, docs, witnesses);
  if (name == "portmanteau") return recheck_portmanteau(params, docs, witnesses);
  if (name == "converge") return recheck_converge(params, docs, witnesses);
  if (name == "skorohod-demo") return recheck_demo(params, docs, witnesses);
  raise(Errc::ParseError, "unknown certificate command '" + name + "'");
}

}  // namespace

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "fnv1a:%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

bool decision_is_positive(const std::string& decision) {
  return decision == "holds" || decision == "pass" ||
         decision == "pass-with-deviation";
}

Json build_certificate(const std::string& command, const Json& params,
                       const Json& documents, const Json& witnesses) {
  Recheck rc = recheck_command(command, params, documents, witnesses);
  return Json{{"schema", kSchema},
              {"command", Json{{"name", command}, {"params", params}}},
              {"inputs", Json{{"digest", fnv1a_digest(documents.dump())},
                              {"documents", documents}}},
              {"decision", rc.decision},
              {"witnesses", witnesses},
              {"transcript", rc.transcript}};
}

VerifyOutcome verify_certificate(const Json& certificate) {
  try {
    if (certificate.value("schema", "") != kSchema)
      return {false, "unknown certificate schema"};
    const Json& documents = certificate.at("inputs").at("documents");
    std::string digest = certificate.at("inputs").at("digest").get<std::string>();
    if (digest != fnv1a_digest(documents.dump()))
      return {false, "input digest does not match the embedded documents"};

    Recheck rc = recheck_command(
        certificate.at("command").at("name").get<std::string>(),
        certificate.at("command").at("params"), documents,
        certificate.at("witnesses"));
    if (rc.decision != certificate.at("decision").get<std::string>())
      return {false, "re-checking yields decision '" + rc.decision +
                         "', certificate says '" +
                         certificate.at("decision").get<std::string>() + "'"};
    if (rc.transcript != certificate.at("transcript"))
      return {false, "re-checked transcript disagrees with the certificate"};
    for (const Json& e : rc.transcript)
      if (!e.at("ok").get<bool>())
        return {false, "transcript check '" +
                           e.at("check").get<std::string>() + "' fails"};
    return {true, "decision '" + rc.decision + "' reproduced"};
  } catch (const Error& e) {
    return {false, e.what()};
  } catch (const Json::exception& e) {
    return {false, std::string("malformed certificate: ") + e.what()};
  }
}

Json refusal_to_json(const TransportRefusal& refusal, const FinitePoset& poset) {
  Json doc{{"reason", refusal.reason},
           {"separating_mu", refusal.separating_mu.str()},
           {"separating_nu", refusal.separating_nu.str()}};
  if (refusal.witness) doc["witness"] = upper_set_to_json(*refusal.witness);
  Json supply = Json::array();
  for (std::size_t x : refusal.cut_supply) supply.push_back(poset.name(x));
  doc["cut_supply"] = supply;
  if (!refusal.detail.empty()) doc["detail"] = refusal.detail;
  return doc;
}

FlatDemo make_flat_demo(PosetPtr poset, unsigned depth) {
  if (depth < 1) raise(Errc::OutOfRange, "demo depth must be at least 1");
  PosetFlags flags = poset->classify();
  if (!flags.is_flat || !poset->bottom())
    raise(Errc::InvariantViolation,
          "the demonstration needs a flat poset with a declared bottom");
  FlatDemo demo;
  demo.bottom = *poset->bottom();
  std::vector<std::size_t> points;
  for (std::size_t i = 0; i < poset->size(); ++i)
    if (i != demo.bottom) points.push_back(i);
  if (points.size() < 2)
    raise(Errc::InvariantViolation,
          "the demonstration needs two points above bottom");
  demo.zero = points[0];
  demo.one = points[1];
  demo.poset = poset;

  for (unsigned n = 1; n <= depth; ++n) {
    Dyadic big(pow2(n) - 1, n);
    Dyadic small(1, n);
    demo.members.push_back(SimpleValuation::make_indexed(
        poset, {{demo.zero, big}, {demo.one, small}}));
    demo.approximants.push_back(SimpleValuation::make_indexed(
        poset, {{demo.zero, big}, {demo.bottom, small}}));
  }
  return demo;
}

}  // namespace valord
