#include <doctest.h>

#include "fixtures.hpp"
#include "valord/certificate.hpp"

using namespace valord;
using namespace fixtures;

namespace {

Json order_documents(const SimpleValuation& mu, const SimpleValuation& nu) {
  return Json{{"poset", poset_to_json(*mu.poset())},
              {"mu", valuation_to_json(mu, "embedded")},
              {"nu", valuation_to_json(nu, "embedded")}};
}

Json order_certificate(const SimpleValuation& mu, const SimpleValuation& nu) {
  TransportDecision decision = decide_order_maxflow(mu, nu);
  Json witnesses;
  if (const auto* plan = std::get_if<TransportPlan>(&decision))
    witnesses = Json{{"plan", plan_to_json(*plan, *mu.poset())}};
  else
    witnesses = Json{{"refusal", refusal_to_json(
                                     std::get<TransportRefusal>(decision),
                                     *mu.poset())}};
  return build_certificate(
      "order", Json{{"oracle_bound", FinitePoset::kDefaultEnumerationBound}},
      order_documents(mu, nu), witnesses);
}

}  // namespace

TEST_CASE("order certificates verify and tampering is caught") {
  PosetPtr v = vee();
  SimpleValuation mu = val(v, {{"⊥", "1/2"}});
  SimpleValuation nu = val(v, {{"a", "1/4"}, {"b", "1/4"}});

  Json holds = order_certificate(mu, nu);
  CHECK(holds.at("decision") == "holds");
  CHECK(verify_certificate(holds).valid);

  Json fails = order_certificate(nu, val(v, {{"⊥", "1/4"}}));
  CHECK(fails.at("decision") == "fails");
  CHECK(verify_certificate(fails).valid);

  SUBCASE("flipping the decision invalidates") {
    Json tampered = holds;
    tampered["decision"] = "fails";
    CHECK(!verify_certificate(tampered).valid);
  }
  SUBCASE("altering a plan entry invalidates") {
    Json tampered = holds;
    tampered["witnesses"]["plan"]["t"]["⊥|a"] = "3/8";
    CHECK(!verify_certificate(tampered).valid);
  }
  SUBCASE("altering the inputs invalidates the digest") {
    Json tampered = holds;
    tampered["inputs"]["documents"]["mu"]["mass"]["⊥"] = "1/4";
    CHECK(!verify_certificate(tampered).valid);
  }
  SUBCASE("a forged witness set is rejected") {
    Json tampered = fails;
    tampered["witnesses"]["refusal"]["witness"] = Json::array({"a"});
    CHECK(!verify_certificate(tampered).valid);
  }
}

TEST_CASE("certificates are byte-deterministic") {
  PosetPtr v = vee();
  SimpleValuation mu = val(v, {{"⊥", "1/2"}});
  SimpleValuation nu = val(v, {{"a", "1/4"}, {"b", "1/4"}});
  CHECK(order_certificate(mu, nu).dump(2) == order_certificate(mu, nu).dump(2));
}

TEST_CASE("realize certificates embed the realization") {
  PosetPtr v = vee();
  std::vector<SimpleValuation> chain{
      val(v, {{"⊥", "1/2"}}),
      val(v, {{"a", "1/4"}, {"b", "1/4"}, {"⊥", "1/2"}})};
  Json chain_docs = Json::array();
  for (const auto& m : chain)
    chain_docs.push_back(valuation_to_json(m, "embedded"));
  Json documents{{"poset", poset_to_json(*v)}, {"chain", chain_docs}};

  RealizationResult r = realize_chain(chain);
  Json cert = build_certificate(
      "realize", Json::object(), documents,
      Json{{"realization", realization_to_json(r)}});
  CHECK(cert.at("decision") == "pass");
  CHECK(verify_certificate(cert).valid);

  Json tampered = cert;
  tampered["witnesses"]["realization"]["maps"][1][0]["image"] = "b";
  CHECK(!verify_certificate(tampered).valid);
}

TEST_CASE("quantile certificates flag the sub-probability deviation") {
  ChainMeasure mu = ChainMeasure::make({{dy("1/2"), dy("1/2")}});
  QuantilePushforward push = quantile_pushforward(mu);
  Json witnesses{{"cdf", step_function_to_json(cdf_function(mu))},
                 {"quantile", step_function_to_json(quantile_function(mu))},
                 {"pushforward", chain_measure_to_json(push.measure)},
                 {"top_deviation", push.top_deviation.str()},
                 {"flag", "mass 1/2 assigned to ⊤"}};
  Json cert = build_certificate(
      "quantile", Json{{"check_roundtrip", true}, {"grid_exponent", 8u}},
      Json{{"measure", chain_measure_to_json(mu)}}, witnesses);
  CHECK(cert.at("decision") == "pass-with-deviation");
  CHECK(verify_certificate(cert).valid);

  Json tampered = cert;
  tampered["witnesses"]["top_deviation"] = "0";
  CHECK(!verify_certificate(tampered).valid);
}

TEST_CASE("verify rejects foreign documents") {
  CHECK(!verify_certificate(Json{{"schema", "other"}}).valid);
  CHECK(!verify_certificate(Json::object()).valid);
}
