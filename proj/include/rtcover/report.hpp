#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rtcover/covering_tree.hpp"
#include "rtcover/epsilon_cover.hpp"
#include "rtcover/subgroup_cover.hpp"

namespace rtcover {

using Json = nlohmann::json;

/// FNV-1a 64-bit, rendered as 16 hex digits.
std::string fnv1a64(std::string_view bytes);

struct Check {
  std::string name;
  bool pass = true;
  Json witness;  // null when there is nothing to show
};

struct RunReport {
  std::string command;
  std::map<std::string, std::string> inputs;  // file -> digest
  std::optional<std::uint64_t> seed;
  std::vector<Check> checks;
  Json results = Json::object();
  std::map<std::string, double> timings;  // milliseconds

  bool pass() const;
  void check(std::string name, bool pass, Json witness = nullptr);
};

/// Keys come out sorted; timings are included only on request so that the
/// default report is byte-identical across runs.
Json to_json(const RunReport& r, bool with_timings);

Json to_json(const Rational& q);
Json to_json(const MetricGraph& g, const FiberReport& f);
Json to_json(const FourPointReport& r);
Json to_json(const HausdorffReport& r);
Json to_json(const StabilizationReport& r);
Json to_json(const GeneratorSet& gens, const UniversalityReport& r);
Json to_json(const GeneratorSet& gens, const DeckReport& r);

}  // namespace rtcover
