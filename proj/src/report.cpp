#include "rtcover/report.hpp"

#include <cstdio>

namespace rtcover {

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool RunReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void RunReport::check(std::string name, bool ok, Json witness) {
  checks.push_back({std::move(name), ok, std::move(witness)});
}

Json to_json(const RunReport& r, bool with_timings) {
  Json out;
  out["schema"] = 1;
  out["command"] = r.command;
  out["inputs"] = r.inputs;
  out["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
  out["checks"] = std::move(checks);
  out["pass"] = r.pass();
  out["results"] = r.results;
  if (with_timings) out["timings_ms"] = r.timings;
  return out;
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const MetricGraph& g, const FiberReport& f) {
  Json points = Json::array();
  for (const auto& p : f.points)
    points.push_back({{"path", format_path(g, p.path())}, {"length", to_json(p.length())}});
  Json out{{"point", g.format_point(f.base_point)}, {"radius", to_json(f.radius)}, {"count", f.points.size()},
           {"points", std::move(points)}};
  if (!f.distances.empty()) {
    Json rows = Json::array();
    for (const auto& row : f.distances) {
      Json r = Json::array();
      for (const auto& d : row) r.push_back(to_json(d));
      rows.push_back(std::move(r));
    }
    out["distances"] = std::move(rows);
  }
  return out;
}

Json to_json(const FourPointReport& r) {
  Json out{{"points", r.points}, {"bases_checked", r.bases_checked}, {"triples", r.triples},
           {"violations", r.violations}};
  out["min_slack"] = r.min_slack ? to_json(*r.min_slack) : Json(nullptr);
  out["witness"] = r.witness ? Json(*r.witness) : Json(nullptr);
  return out;
}

Json to_json(const HausdorffReport& r) {
  return {{"value", to_json(r.value)},
          {"graph_distance", to_json(r.graph_distance)},
          {"radius", to_json(r.radius)},
          {"required_radius", to_json(r.required_radius)},
          {"attained", r.attained}};
}

Json to_json(const StabilizationReport& r) {
  Json scales = Json::array();
  for (const auto& s : r.scales)
    scales.push_back({{"eps", to_json(s.eps)},
                      {"component", s.component},
                      {"edges", s.edges},
                      {"triangles", s.triangles},
                      {"generators", s.generators},
                      {"relations", s.relations},
                      {"remaining_relations", s.remaining_relations},
                      {"free", s.free},
                      {"rank", s.rank},
                      {"boundary", s.boundary}});
  Json pairs = Json::array();
  for (const auto& p : r.pairs)
    pairs.push_back({{"coarse", to_json(p.coarse)},
                     {"fine", to_json(p.fine)},
                     {"both_free", p.both_free},
                     {"isomorphism", p.isomorphism}});
  return {{"scales", std::move(scales)},
          {"pairs", std::move(pairs)},
          {"stable_rank", r.stable_rank ? Json(*r.stable_rank) : Json(nullptr)}};
}

Json to_json(const GeneratorSet& gens, const UniversalityReport& r) {
  return {{"pass", r.pass},
          {"bound", r.bound},
          {"words_checked", r.words_checked},
          {"witness", r.witness ? Json(format_word(gens, *r.witness)) : Json(nullptr)},
          {"reason", r.reason}};
}

Json to_json(const GeneratorSet& gens, const DeckReport& r) {
  return {{"conjugation_bound", r.conjugation_bound},
          {"violating_conjugate", r.violating_conjugate ? Json(format_word(gens, *r.violating_conjugate)) : Json(nullptr)},
          {"order", r.order()},
          {"automorphisms", r.automorphisms},
          {"index", r.index ? Json(*r.index) : Json(nullptr)},
          {"normal_by_action", r.normal_by_action}};
}

}  // namespace rtcover
