#include "valord/json_io.hpp"

#include <fstream>
#include <sstream>

namespace valord {

namespace {

const Json& expect(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key))
    raise(Errc::ParseError, std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::string expect_string(const Json& doc, const char* key) {
  const Json& v = expect(doc, key);
  if (!v.is_string())
    raise(Errc::ParseError, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

Json poset_to_json(const FinitePoset& poset) {
  Json doc;
  doc["elements"] = poset.names();
  Json covers = Json::array();
  for (const auto& [lo, hi] : poset.cover_pairs()) covers.push_back({lo, hi});
  doc["covers"] = covers;
  if (poset.bottom_name()) doc["bottom"] = *poset.bottom_name();
  if (poset.waybelow_pairs()) {
    Json wb = Json::array();
    for (const auto& [lo, hi] : *poset.waybelow_pairs()) wb.push_back({lo, hi});
    doc["waybelow"] = wb;
  }
  return doc;
}

PosetPtr poset_from_json(const Json& doc) {
  const Json& elements = expect(doc, "elements");
  if (!elements.is_array()) raise(Errc::ParseError, "'elements' must be a list");
  std::vector<std::string> names = elements.get<std::vector<std::string>>();

  auto parse_pairs = [](const Json& arr, const char* what) {
    std::vector<FinitePoset::NamePair> pairs;
    if (!arr.is_array())
      raise(Errc::ParseError, std::string("'") + what + "' must be a list");
    for (const Json& p : arr) {
      if (!p.is_array() || p.size() != 2)
        raise(Errc::ParseError, std::string("each entry of '") + what +
                                    "' must be a pair");
      pairs.push_back({p[0].get<std::string>(), p[1].get<std::string>()});
    }
    return pairs;
  };

  std::vector<FinitePoset::NamePair> covers;
  if (doc.contains("covers")) covers = parse_pairs(doc.at("covers"), "covers");
  std::optional<std::string> bottom;
  if (doc.contains("bottom")) bottom = expect_string(doc, "bottom");
  std::optional<std::vector<FinitePoset::NamePair>> waybelow;
  if (doc.contains("waybelow"))
    waybelow = parse_pairs(doc.at("waybelow"), "waybelow");
  return FinitePoset::build(std::move(names), std::move(covers),
                            std::move(bottom), std::move(waybelow));
}

Json valuation_to_json(const SimpleValuation& v, const std::string& poset_ref) {
  Json mass = Json::object();
  for (const auto& [i, w] : v.weights())
    mass[v.poset()->name(i)] = w.str();
  return Json{{"poset", poset_ref}, {"mass", mass}};
}

SimpleValuation valuation_from_json(const Json& doc, PosetPtr poset) {
  const Json& mass = expect(doc, "mass");
  if (!mass.is_object()) raise(Errc::ParseError, "'mass' must be an object");
  std::vector<std::pair<std::string, Dyadic>> weights;
  for (const auto& [name, value] : mass.items()) {
    if (!value.is_string())
      raise(Errc::ParseError, "masses must be dyadic strings");
    weights.push_back({name, Dyadic::parse(value.get<std::string>())});
  }
  return SimpleValuation::make(std::move(poset), weights);
}

Json chain_measure_to_json(const ChainMeasure& m) {
  Json mass = Json::object();
  for (const auto& [p, w] : m.weights()) mass[p.str()] = w.str();
  return Json{{"poset", "chain"}, {"mass", mass}};
}

ChainMeasure chain_measure_from_json(const Json& doc) {
  const Json& mass = expect(doc, "mass");
  std::vector<std::pair<Dyadic, Dyadic>> weights;
  for (const auto& [point, value] : mass.items()) {
    if (!value.is_string())
      raise(Errc::ParseError, "masses must be dyadic strings");
    weights.push_back(
        {Dyadic::parse(point), Dyadic::parse(value.get<std::string>())});
  }
  return ChainMeasure::make(weights);
}

Json upper_set_to_json(const UpperSet& upper) {
  Json names = Json::array();
  for (std::size_t i : upper.indices()) names.push_back(upper.poset()->name(i));
  return names;
}

UpperSet upper_set_from_json(const Json& doc, const PosetPtr& poset) {
  if (!doc.is_array()) raise(Errc::ParseError, "upper set must be a list");
  std::vector<bool> members(poset->size(), false);
  for (const Json& name : doc)
    members[poset->index(name.get<std::string>())] = true;
  return poset->upper_set(std::move(members));
}

Json plan_to_json(const TransportPlan& plan, const FinitePoset& poset) {
  Json t = Json::object();
  for (const auto& [key, value] : plan.entries)
    t[poset.name(key.first) + "|" + poset.name(key.second)] = value.str();
  Json u = Json::object();
  for (const auto& [y, value] : plan.residuals) u[poset.name(y)] = value.str();
  return Json{{"relation", relation_name(plan.relation)},
              {"t", t},
              {"u", u},
              {"w", plan.leftover.str()}};
}

TransportPlan plan_from_json(const Json& doc, const FinitePoset& poset) {
  TransportPlan plan;
  std::string relation = expect_string(doc, "relation");
  if (relation == "leq")
    plan.relation = TransportRelation::leq;
  else if (relation == "waybelow")
    plan.relation = TransportRelation::waybelow;
  else
    raise(Errc::ParseError, "unknown relation '" + relation + "'");
  for (const auto& [key, value] : expect(doc, "t").items()) {
    auto bar = key.find('|');
    if (bar == std::string::npos)
      raise(Errc::ParseError, "plan entry key must be 'x|y'");
    plan.entries[{poset.index(key.substr(0, bar)),
                  poset.index(key.substr(bar + 1))}] =
        Dyadic::parse(value.get<std::string>());
  }
  for (const auto& [key, value] : expect(doc, "u").items())
    plan.residuals[poset.index(key)] = Dyadic::parse(value.get<std::string>());
  plan.leftover = Dyadic::parse(expect_string(doc, "w"));
  return plan;
}

Json tree_map_to_json(const PartialTreeMap& map) {
  Json entries = Json::array();
  for (const MapInterval& iv : map.intervals())
    entries.push_back(Json{{"interval", {iv.lo, iv.hi}},
                           {"level", map.level()},
                           {"image", map.poset()->name(iv.image)}});
  return entries;
}

PartialTreeMap tree_map_from_json(const Json& doc, PosetPtr poset) {
  if (!doc.is_array()) raise(Errc::ParseError, "partial map must be a list");
  std::vector<MapInterval> intervals;
  std::optional<unsigned> level;
  for (const Json& entry : doc) {
    const Json& iv = expect(entry, "interval");
    if (!iv.is_array() || iv.size() != 2)
      raise(Errc::ParseError, "'interval' must be a [lo, hi) pair");
    unsigned entry_level = expect(entry, "level").get<unsigned>();
    if (level && *level != entry_level)
      raise(Errc::ParseError, "map entries carry different levels");
    level = entry_level;
    intervals.push_back({iv[0].get<std::uint64_t>(), iv[1].get<std::uint64_t>(),
                         poset->index(expect_string(entry, "image"))});
  }
  if (!level) raise(Errc::ParseError, "partial map has no entries");
  return PartialTreeMap(std::move(poset), *level, std::move(intervals));
}

Json realization_to_json(const RealizationResult& result) {
  Json maps = Json::array();
  for (const PartialTreeMap& map : result.maps) maps.push_back(tree_map_to_json(map));
  Json plans = Json::array();
  const FinitePoset& poset = *result.maps.front().poset();
  for (const TransportPlan& plan : result.plans)
    plans.push_back(plan_to_json(plan, poset));
  return Json{{"levels", result.levels}, {"maps", maps}, {"plans", plans}};
}

RealizationResult realization_from_json(const Json& doc, PosetPtr poset) {
  RealizationResult result;
  result.levels = expect(doc, "levels").get<std::vector<unsigned>>();
  for (const Json& map : expect(doc, "maps"))
    result.maps.push_back(tree_map_from_json(map, poset));
  for (const Json& plan : expect(doc, "plans"))
    result.plans.push_back(plan_from_json(plan, *poset));
  if (result.levels.empty() || result.maps.size() != result.levels.size())
    raise(Errc::ParseError, "realization levels and maps do not match");
  for (std::size_t i = 0; i < result.maps.size(); ++i)
    if (result.maps[i].level() != result.levels[i])
      raise(Errc::ParseError, "map level disagrees with the level list");
  return result;
}

Json step_function_to_json(const StepFunction& f) {
  Json breakpoints = Json::array(), values = Json::array();
  for (const Dyadic& b : f.breakpoints) breakpoints.push_back(b.str());
  for (const Dyadic& v : f.values) values.push_back(v.str());
  return Json{{"side", f.side == StepSide::right_continuous
                           ? "right-continuous"
                           : "left-continuous"},
              {"breakpoints", breakpoints},
              {"values", values}};
}

Json as_certificate_to_json(const ASConvergenceCertificate& cert) {
  Json words = Json::array();
  for (const Word& w : cert.exception_words) words.push_back(w.str());
  return Json{{"depth", cert.depth},
              {"tail", cert.tail},
              {"dom_count", cert.dom_count},
              {"exception_words", words},
              {"exception_mass", cert.exception_mass.str()}};
}

Json portmanteau_to_json(const ConvergenceCertificate& cert,
                         const FinitePoset& poset) {
  (void)poset;
  Json violations = Json::array();
  for (const PortmanteauViolation& v : cert.violations)
    violations.push_back(Json{{"condition", v.condition},
                              {"witness", upper_set_to_json(v.witness)},
                              {"observed", v.observed.str()},
                              {"required", v.required.str()}});
  return Json{{"horizon", cert.horizon},
              {"tolerance", cert.tolerance.str()},
              {"violations", violations}};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::IoError, "cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::IoError, "cannot write '" + path.string() + "'");
  out << content;
}

Json parse_json_file(const std::filesystem::path& path) {
  std::string text = read_file(path);
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded())
    raise(Errc::ParseError, "invalid JSON in '" + path.string() + "'");
  return doc;
}

PosetPtr DocumentStore::load_poset(const std::filesystem::path& path) {
  std::error_code ec;
  std::filesystem::path canonical = std::filesystem::weakly_canonical(path, ec);
  std::string key = ec ? path.string() : canonical.string();
  auto it = posets_.find(key);
  if (it != posets_.end()) return it->second;
  PosetPtr poset = poset_from_json(parse_json_file(path));
  posets_.emplace(key, poset);
  return poset;
}

SimpleValuation DocumentStore::load_valuation(
    const std::filesystem::path& path) {
  Json doc = parse_json_file(path);
  std::string ref = expect_string(doc, "poset");
  if (ref == "chain")
    raise(Errc::ParseError,
          "'" + path.string() + "' is a chain measure, not a valuation");
  std::filesystem::path poset_path = path.parent_path() / ref;
  return valuation_from_json(doc, load_poset(poset_path));
}

ChainMeasure DocumentStore::load_chain_measure(
    const std::filesystem::path& path) {
  Json doc = parse_json_file(path);
  if (expect_string(doc, "poset") != "chain")
    raise(Errc::ParseError,
          "'" + path.string() + "' does not declare the chain model");
  return chain_measure_from_json(doc);
}

std::vector<SimpleValuation> DocumentStore::load_valuation_chain(
    const std::filesystem::path& path) {
  Json doc = parse_json_file(path);
  if (doc.contains("chain")) {
    std::vector<SimpleValuation> chain;
    for (const Json& member : doc.at("chain")) {
      std::filesystem::path member_path =
          path.parent_path() / member.get<std::string>();
      chain.push_back(load_valuation(member_path));
    }
    if (chain.empty()) raise(Errc::ParseError, "empty chain document");
    return chain;
  }
  return {load_valuation(path)};
}

}  // namespace valord
