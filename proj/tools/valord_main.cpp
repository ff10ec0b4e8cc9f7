#include <CLI11.hpp>
#include <iostream>

#include "valord/certificate.hpp"

namespace {

using namespace valord;

int emit(const Json& certificate, const std::string& output) {
  std::string text = certificate.dump(2) + "\n";
  if (output.empty())
    std::cout << text;
  else
    write_file(output, text);
  return decision_is_positive(certificate.at("decision").get<std::string>())
             ? 0
             : 1;
}

Json embed_valuation(const SimpleValuation& v) {
  return valuation_to_json(v, "embedded");
}

Json order_witnesses(const TransportDecision& decision,
                     const FinitePoset& poset) {
  if (const auto* plan = std::get_if<TransportPlan>(&decision))
    return Json{{"plan", plan_to_json(*plan, poset)}};
  return Json{
      {"refusal",
       refusal_to_json(std::get<TransportRefusal>(decision), poset)}};
}

int run_order(DocumentStore& store, const std::string& mu_path,
              const std::string& nu_path, const std::string& command,
              const std::string& output) {
  SimpleValuation mu = store.load_valuation(mu_path);
  SimpleValuation nu = store.load_valuation(nu_path);
  if (mu.poset() != nu.poset())
    raise(Errc::DifferentPosets, "the two valuations name different posets");
  Json documents{{"poset", poset_to_json(*mu.poset())},
                 {"mu", embed_valuation(mu)},
                 {"nu", embed_valuation(nu)}};
  Json params = Json::object();
  if (command == "order")
    params["oracle_bound"] = FinitePoset::kDefaultEnumerationBound;
  TransportDecision decision = decide_order_maxflow(mu, nu);
  return emit(build_certificate(command, params, documents,
                                order_witnesses(decision, *mu.poset())),
              output);
}

int run_waybelow(DocumentStore& store, const std::string& mu_path,
                 const std::string& nu_path, const std::string& rule_text,
                 const std::string& output) {
  SimpleValuation mu = store.load_valuation(mu_path);
  SimpleValuation nu = store.load_valuation(nu_path);
  if (mu.poset() != nu.poset())
    raise(Errc::DifferentPosets, "the two valuations name different posets");
  MassRule rule = parse_mass_rule(rule_text);
  WayBelowDecision decision = decide_way_below(mu, nu, rule);

  Json witnesses = order_witnesses(decision.decision, *mu.poset());
  witnesses["strict_total_holds"] = decision.strict_total_holds;
  witnesses["strict_per_element_holds"] = decision.strict_per_element_holds;
  witnesses["rules_disagree"] = decision.rules_disagree();
  if (decision.per_element_violator)
    witnesses["per_element_violator"] =
        mu.poset()->name(*decision.per_element_violator);

  Json documents{{"poset", poset_to_json(*mu.poset())},
                 {"mu", embed_valuation(mu)},
                 {"nu", embed_valuation(nu)}};
  return emit(build_certificate("waybelow", {{"mass_rule", rule_text}},
                                documents, witnesses),
              output);
}

int run_realize(DocumentStore& store, const std::vector<std::string>& paths,
                const std::string& output) {
  std::vector<SimpleValuation> chain;
  if (paths.size() == 1) {
    chain = store.load_valuation_chain(paths[0]);
  } else {
    for (const std::string& path : paths)
      chain.push_back(store.load_valuation(path));
  }
  for (const auto& v : chain)
    if (v.poset() != chain.front().poset())
      raise(Errc::DifferentPosets, "chain members name different posets");

  Json chain_docs = Json::array();
  for (const auto& v : chain) chain_docs.push_back(embed_valuation(v));
  Json documents{{"poset", poset_to_json(*chain.front().poset())},
                 {"chain", chain_docs}};

  Json witnesses;
  bool ordered = true;
  for (std::size_t i = 0; i + 1 < chain.size() && ordered; ++i) {
    TransportDecision decision = decide_order_maxflow(chain[i], chain[i + 1]);
    if (const auto* refusal = std::get_if<TransportRefusal>(&decision)) {
      witnesses = Json{{"pair_index", i + 1},
                       {"refusal",
                        refusal_to_json(*refusal, *chain.front().poset())}};
      ordered = false;
    }
  }
  if (ordered)
    witnesses =
        Json{{"realization", realization_to_json(realize_chain(chain))}};
  return emit(
      build_certificate("realize", Json::object(), documents, witnesses),
      output);
}

int run_extend(DocumentStore& store, const std::string& poset_path,
               const std::string& map_path, const std::string& output) {
  PosetPtr poset = store.load_poset(poset_path);
  Json map_doc = parse_json_file(map_path);
  if (map_doc.contains("map")) map_doc = map_doc.at("map");
  PartialTreeMap f = tree_map_from_json(map_doc, poset);
  ScottExtension extension = scott_extend(f);

  Json table = Json::array();
  for (unsigned l = 0; l <= extension.level(); ++l) {
    Json row = Json::array();
    for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << l); ++idx)
      row.push_back(poset->name(extension.table()[l][idx]));
    table.push_back(row);
  }
  Json documents{{"poset", poset_to_json(*poset)},
                 {"map", tree_map_to_json(f)}};
  return emit(build_certificate("extend", Json::object(), documents,
                                Json{{"extension", table}}),
              output);
}

int run_quantile(DocumentStore& store, const std::string& measure_path,
                 bool check_roundtrip, const std::string& output) {
  ChainMeasure mu = store.load_chain_measure(measure_path);
  QuantilePushforward push = quantile_pushforward(mu);

  Json witnesses{{"cdf", step_function_to_json(cdf_function(mu))},
                 {"quantile", step_function_to_json(quantile_function(mu))},
                 {"pushforward", chain_measure_to_json(push.measure)},
                 {"top_deviation", push.top_deviation.str()}};
  if (push.deviates())
    witnesses["flag"] =
        "mass " + push.top_deviation.str() + " assigned to ⊤";
  Json params{{"check_roundtrip", check_roundtrip}, {"grid_exponent", 8u}};
  return emit(build_certificate("quantile", params,
                                Json{{"measure", chain_measure_to_json(mu)}},
                                witnesses),
              output);
}

int run_portmanteau(DocumentStore& store, const std::string& limit_path,
                    const std::vector<std::string>& sequence_paths,
                    std::size_t horizon, const std::string& tolerance_text,
                    const std::string& output) {
  SimpleValuation limit = store.load_valuation(limit_path);
  std::vector<SimpleValuation> sequence;
  for (const std::string& path : sequence_paths)
    sequence.push_back(store.load_valuation(path));
  for (const auto& v : sequence)
    if (v.poset() != limit.poset())
      raise(Errc::DifferentPosets, "sequence members name different posets");
  Dyadic tolerance = Dyadic::parse(tolerance_text);

  ConvergenceCertificate cert =
      portmanteau_check(sequence, limit, horizon, tolerance);

  Json sequence_docs = Json::array();
  for (const auto& v : sequence) sequence_docs.push_back(embed_valuation(v));
  Json documents{{"poset", poset_to_json(*limit.poset())},
                 {"sequence", sequence_docs},
                 {"limit", embed_valuation(limit)}};
  Json params{{"horizon", horizon}, {"tolerance", tolerance.str()}};
  Json witnesses{{"certificate", portmanteau_to_json(cert, *limit.poset())}};
  return emit(build_certificate("portmanteau", params, documents, witnesses),
              output);
}

int run_converge(DocumentStore& store, const std::string& limit_path,
                 const std::vector<std::string>& sequence_paths, unsigned depth,
                 std::size_t tail, const std::string& bound_text,
                 const std::string& output) {
  std::vector<SimpleValuation> limit_chain =
      store.load_valuation_chain(limit_path);
  std::vector<std::vector<SimpleValuation>> chains;
  for (const std::string& path : sequence_paths)
    chains.push_back(store.load_valuation_chain(path));

  RealizationResult limit = realize_chain(limit_chain);
  std::vector<RealizationResult> sequence;
  for (const auto& chain : chains) sequence.push_back(realize_chain(chain));

  ASConvergenceCertificate cert = empirical_convergence(
      sequence, limit, depth, tail, ExecPolicy::parallel);

  auto chain_docs = [&](const std::vector<SimpleValuation>& chain) {
    Json docs = Json::array();
    for (const auto& v : chain) docs.push_back(embed_valuation(v));
    return docs;
  };
  Json sequence_docs = Json::array();
  for (const auto& chain : chains) sequence_docs.push_back(chain_docs(chain));
  Json documents{{"poset", poset_to_json(*limit_chain.front().poset())},
                 {"sequence", sequence_docs},
                 {"limit", chain_docs(limit_chain)}};

  Json realizations{{"limit", realization_to_json(limit)}};
  Json sequence_real = Json::array();
  for (const auto& r : sequence) sequence_real.push_back(realization_to_json(r));
  realizations["sequence"] = sequence_real;

  Json params{{"depth", depth}, {"tail", tail}};
  if (!bound_text.empty()) params["bound"] = Dyadic::parse(bound_text).str();
  Json witnesses{{"realizations", realizations},
                 {"certificate", as_certificate_to_json(cert)}};
  return emit(build_certificate("converge", params, documents, witnesses),
              output);
}

int run_demo(DocumentStore& store, const std::string& poset_path,
             unsigned depth, const std::string& output) {
  PosetPtr poset = store.load_poset(poset_path);
  FlatDemo demo = make_flat_demo(poset, depth);

  RealizationResult approx = realize_chain(demo.approximants);
  std::vector<RealizationResult> members;
  for (const auto& mu : demo.members) {
    std::vector<SimpleValuation> singleton{mu};
    members.push_back(realize_chain(singleton));
  }

  Json tails = Json::array();
  for (std::size_t tail = 1; tail <= depth; ++tail) {
    ASConvergenceCertificate cert = empirical_convergence(
        members, approx, depth, tail, ExecPolicy::parallel);
    tails.push_back(Json{{"tail", tail},
                         {"mass", cert.exception_mass.str()},
                         {"bound", Dyadic(1, tail).str()}});
  }

  Json member_docs = Json::array();
  for (const auto& r : members) member_docs.push_back(realization_to_json(r));
  Json witnesses{
      {"realizations", Json{{"approximant_chain", realization_to_json(approx)},
                            {"members", member_docs}}},
      {"tails", tails}};
  return emit(build_certificate("skorohod-demo", Json{{"depth", depth}},
                                Json{{"poset", poset_to_json(*poset)}},
                                witnesses),
              output);
}

int run_verify(const std::string& certificate_path) {
  Json certificate = parse_json_file(certificate_path);
  VerifyOutcome outcome = verify_certificate(certificate);
  std::cout << (outcome.valid ? "valid" : "invalid") << ": " << outcome.detail
            << "\n";
  return outcome.valid ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact order decisions for simple measures on finite posets, tree-map "
      "realizations, and quantile adjoints, with self-validating JSON "
      "certificates"};
  app.require_subcommand(1);

  std::string mu_path, nu_path, output, mass_rule = "strict_total";
  std::string poset_path, map_path, measure_path, limit_path, bound, cert_path;
  std::vector<std::string> paths;
  std::string tolerance = "0";
  std::size_t horizon = 1, tail = 1;
  unsigned depth = 10;
  bool check_roundtrip = false;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", output, "write the certificate to a file");
  };

  CLI::App* order = app.add_subcommand(
      "order", "decide mu <= nu by max-flow, cross-checked by enumeration");
  order->add_option("mu", mu_path)->required();
  order->add_option("nu", nu_path)->required();
  add_output(order);

  CLI::App* split = app.add_subcommand(
      "split", "decide mu <= nu and extract the transport plan");
  split->add_option("mu", mu_path)->required();
  split->add_option("nu", nu_path)->required();
  add_output(split);

  CLI::App* waybelow =
      app.add_subcommand("waybelow", "decide mu way-below nu");
  waybelow->add_option("mu", mu_path)->required();
  waybelow->add_option("nu", nu_path)->required();
  waybelow->add_option("--mass-rule", mass_rule,
                       "strict_total or strict_per_element");
  add_output(waybelow);

  CLI::App* realize = app.add_subcommand(
      "realize", "realize an increasing chain as maps on the binary tree");
  realize->add_option("chain", paths, "valuation files, or one chain file")
      ->required();
  add_output(realize);

  CLI::App* extend = app.add_subcommand(
      "extend", "extend a partial tree map monotonically to the whole tree");
  extend->add_option("poset", poset_path)->required();
  extend->add_option("map", map_path)->required();
  add_output(extend);

  CLI::App* quantile = app.add_subcommand(
      "quantile", "distribution function and quantile adjoint on the chain");
  quantile->add_option("measure", measure_path)->required();
  quantile->add_flag("--check-roundtrip", check_roundtrip,
                     "verify the push-forward identity");
  add_output(quantile);

  CLI::App* portmanteau = app.add_subcommand(
      "portmanteau", "finite-horizon convergence certificate");
  portmanteau->add_option("sequence", paths)->required();
  portmanteau->add_option("--limit", limit_path)->required();
  portmanteau->add_option("--horizon", horizon)->required();
  portmanteau->add_option("--tolerance", tolerance)->required();
  add_output(portmanteau);

  CLI::App* converge = app.add_subcommand(
      "converge", "empirical almost-sure convergence certificate");
  converge->add_option("sequence", paths)->required();
  converge->add_option("--limit", limit_path)->required();
  converge->add_option("--depth", depth)->required();
  converge->add_option("--tail", tail)->required();
  converge->add_option("--bound", bound, "exception mass bound");
  add_output(converge);

  CLI::App* demo = app.add_subcommand(
      "skorohod-demo", "flat-poset demonstration fixture");
  demo->add_option("poset", poset_path)->required();
  demo->add_option("--depth", depth);
  add_output(demo);

  CLI::App* verify =
      app.add_subcommand("verify", "re-check an emitted certificate");
  verify->add_option("certificate", cert_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    DocumentStore store;
    if (order->parsed()) return run_order(store, mu_path, nu_path, "order", output);
    if (split->parsed()) return run_order(store, mu_path, nu_path, "split", output);
    if (waybelow->parsed())
      return run_waybelow(store, mu_path, nu_path, mass_rule, output);
    if (realize->parsed()) return run_realize(store, paths, output);
    if (extend->parsed()) return run_extend(store, poset_path, map_path, output);
    if (quantile->parsed())
      return run_quantile(store, measure_path, check_roundtrip, output);
    if (portmanteau->parsed())
      return run_portmanteau(store, limit_path, paths, horizon, tolerance,
                             output);
    if (converge->parsed())
      return run_converge(store, limit_path, paths, depth, tail, bound, output);
    if (demo->parsed()) return run_demo(store, poset_path, depth, output);
    if (verify->parsed()) return run_verify(cert_path);
  } catch (const valord::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
