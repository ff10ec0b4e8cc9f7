#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "valord/chain_quantile.hpp"
#include "valord/realization.hpp"

namespace valord {

using Json = nlohmann::json;

Json poset_to_json(const FinitePoset& poset);
PosetPtr poset_from_json(const Json& doc);

Json valuation_to_json(const SimpleValuation& v, const std::string& poset_ref);
SimpleValuation valuation_from_json(const Json& doc, PosetPtr poset);

Json chain_measure_to_json(const ChainMeasure& m);
ChainMeasure chain_measure_from_json(const Json& doc);

Json upper_set_to_json(const UpperSet& upper);
UpperSet upper_set_from_json(const Json& doc, const PosetPtr& poset);

Json plan_to_json(const TransportPlan& plan, const FinitePoset& poset);
TransportPlan plan_from_json(const Json& doc, const FinitePoset& poset);

Json tree_map_to_json(const PartialTreeMap& map);
PartialTreeMap tree_map_from_json(const Json& doc, PosetPtr poset);

Json realization_to_json(const RealizationResult& result);
RealizationResult realization_from_json(const Json& doc, PosetPtr poset);

Json step_function_to_json(const StepFunction& f);

Json as_certificate_to_json(const ASConvergenceCertificate& cert);

Json portmanteau_to_json(const ConvergenceCertificate& cert,
                         const FinitePoset& poset);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);
Json parse_json_file(const std::filesystem::path& path);

/// Loads documents for the CLI. A valuation document names its poset by a
/// path resolved relative to the document's own directory; loaded posets
/// are cached per canonical path so valuations referring to the same file
/// share one poset instance.
class DocumentStore {
 public:
  PosetPtr load_poset(const std::filesystem::path& path);
  SimpleValuation load_valuation(const std::filesystem::path& path);
  ChainMeasure load_chain_measure(const std::filesystem::path& path);
  /// A valuation file (singleton chain) or {"chain": [paths...]}.
  std::vector<SimpleValuation> load_valuation_chain(
      const std::filesystem::path& path);

 private:
  std::map<std::string, PosetPtr> posets_;
};

}  // namespace valord
