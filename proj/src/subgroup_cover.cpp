#include "rtcover/subgroup_cover.hpp"

#include <algorithm>
#include <sstream>

namespace rtcover {

SubgroupSpec parse_subgroup(const GeneratorSet& gens, std::string_view text) {
  SubgroupSpec spec;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string line(text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream in(line);
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() == 1 && tokens[0] == "normal") {
      spec.claimed_normal = true;
      continue;
    }
    if (tokens.size() == 1 && tokens[0] == "1") {
      spec.generators.emplace_back();
      continue;
    }
    try {
      spec.generators.push_back(parse_word(gens, line));
    } catch (const std::invalid_argument& ex) {
      throw ParseError(line_no, ex.what());
    }
  }
  return spec;
}

CoverGraph::Layout CoverGraph::layout(const MetricGraph& base, const GeneratorSet& gens, const SubgroupGraph& sheets) {
  const std::size_t nv = base.vertex_count();
  const std::size_t ne = base.edge_count();
  const std::size_t ns = sheets.vertex_count();
  std::vector<std::string> vertex_ids;
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t v = 0; v < nv; ++v) vertex_ids.push_back(base.vertex_id(v) + "." + std::to_string(s));

  std::vector<Edge> edges;
  std::vector<std::size_t> projection;
  std::vector<std::vector<std::size_t>> out(ns * nv, std::vector<std::size_t>(ne, none));
  std::vector<std::vector<std::size_t>> in(ns * nv, std::vector<std::size_t>(ne, none));
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t e = 0; e < ne; ++e) {
      const Edge& edge = base.edge(e);
      std::size_t target_sheet = s;
      if (!gens.in_tree(e)) {
        target_sheet = sheets.target(s, *gens.generator_for_edge(e));
        if (target_sheet == none) continue;
      }
      std::size_t tail = s * nv + edge.tail;
      std::size_t head = target_sheet * nv + edge.head;
      out[tail][e] = edges.size();
      in[head][e] = edges.size();
      projection.push_back(e);
      edges.push_back({edge.id + "." + std::to_string(s), tail, head, edge.length});
    }
  }
  if (edges.empty()) throw std::invalid_argument("cover has no edges; raise the hang depth");
  MetricGraph space(std::move(vertex_ids), std::move(edges), base.base_vertex());
  return {std::move(projection), std::move(out), std::move(in), std::move(space)};
}

CoverGraph::CoverGraph(const MetricGraph& base, const GeneratorSet& gens, SubgroupGraph sheets,
                       std::size_t core_sheets, std::size_t hang_depth)
    : CoverGraph(base, sheets, core_sheets, hang_depth, layout(base, gens, sheets)) {}

CoverGraph::CoverGraph(const MetricGraph& base, SubgroupGraph sheets, std::size_t core_sheets,
                       std::size_t hang_depth, Layout layout)
    : base_(base),
      sheets_(std::move(sheets)),
      core_sheets_(core_sheets),
      hang_depth_(hang_depth),
      base_vertex_count_(base.vertex_count()),
      edge_projection_(std::move(layout.edge_projection)),
      out_edge_(std::move(layout.out_edge)),
      in_edge_(std::move(layout.in_edge)),
      space_(std::move(layout.space)) {}

GraphPoint CoverGraph::project(const GraphPoint& p) const {
  if (p.is_vertex()) return GraphPoint::vertex(project_vertex(p.vertex_index()));
  return base_.point_on_edge(project_edge(p.edge_index()), p.offset());
}

std::vector<GraphPoint> CoverGraph::fiber(const GraphPoint& base_point) const {
  std::vector<GraphPoint> out;
  if (base_point.is_vertex()) {
    for (std::size_t s = 0; s < sheets_.vertex_count(); ++s)
      out.push_back(GraphPoint::vertex(cover_vertex(s, base_point.vertex_index())));
  } else {
    for (std::size_t ce = 0; ce < edge_projection_.size(); ++ce)
      if (edge_projection_[ce] == base_point.edge_index()) out.push_back(space_.point_on_edge(ce, base_point.offset()));
  }
  return out;
}

CoverGraph fold(const MetricGraph& g, const GeneratorSet& gens, const SubgroupSpec& G, FoldOptions options) {
  SubgroupGraph sheets = fold_subgroup(gens.rank(), G.generators);
  const std::size_t core = sheets.vertex_count();
  std::size_t hang_depth = 0;
  if (!sheets.is_complete()) {
    hang_depth = options.hang_depth;
    std::vector<std::size_t> depth(core, 0);
    for (std::size_t i = 0; i < depth.size(); ++i) {
      if (depth[i] >= hang_depth) continue;
      for (std::size_t gen = 0; gen < gens.rank(); ++gen) {
        if (sheets.target(i, gen) == SubgroupGraph::none) {
          std::size_t w = sheets.add_vertex();
          sheets.add_edge(i, gen, w);
          depth.push_back(depth[i] + 1);
        }
        if (sheets.source(i, gen) == SubgroupGraph::none) {
          std::size_t w = sheets.add_vertex();
          sheets.add_edge(w, gen, i);
          depth.push_back(depth[i] + 1);
        }
      }
    }
  }
  return CoverGraph(g, gens, std::move(sheets), core, hang_depth);
}

bool accepts(const CoverGraph& cv, const LoopWord& w) { return cv.sheets().accepts(w); }

std::optional<EdgePath> lift_to_cover(const MetricGraph& g, const CoverGraph& cv, const EdgePath& c,
                                      const GraphPoint& cover_start) {
  if (cv.project(cover_start) != c.start()) throw std::invalid_argument("cover start does not lie over the path start");
  const MetricGraph& space = cv.space();
  std::vector<Step> steps;
  GraphPoint at = cover_start;
  for (const auto& s : c.steps()) {
    std::size_t ce;
    if (at.is_vertex()) {
      const Edge& edge = g.edge(s.edge);
      if (s.enter == 0 && cv.project_vertex(at.vertex_index()) == edge.tail)
        ce = cv.out_edge(at.vertex_index(), s.edge);
      else if (s.enter == edge.length && cv.project_vertex(at.vertex_index()) == edge.head)
        ce = cv.in_edge(at.vertex_index(), s.edge);
      else
        throw std::logic_error("path step does not leave the current vertex");
      if (ce == CoverGraph::none) return std::nullopt;
    } else {
      ce = at.edge_index();
    }
    steps.push_back({ce, s.enter, s.exit});
    at = space.point_on_edge(ce, s.exit);
  }
  return EdgePath(space, cover_start, std::move(steps));
}

EdgePath project_path(const CoverGraph& cv, const MetricGraph& g, const EdgePath& cover_path) {
  std::vector<Step> steps;
  for (const auto& s : cover_path.steps()) steps.push_back({cv.project_edge(s.edge), s.enter, s.exit});
  return EdgePath(g, cv.project(cover_path.start()), std::move(steps));
}

bool lifts_as_loop(const MetricGraph& g, const GeneratorSet& gens, const CoverGraph& cv, const LoopWord& w) {
  RhoPath loop = evaluate_word(g, gens, w);
  GraphPoint home = cv.space().base_point();
  auto lifted = lift_to_cover(g, cv, loop.as_edge_path(), home);
  return lifted && lifted->end(cv.space()) == home;
}

std::optional<GraphPoint> quotient_point(const MetricGraph& g, const CoverGraph& cv, const TreePoint& c) {
  auto lifted = lift_to_cover(g, cv, c.path().as_edge_path(), cv.space().base_point());
  if (!lifted) return std::nullopt;
  return lifted->end(cv.space());
}

UniversalityReport is_g_universal(const MetricGraph& g, const GeneratorSet& gens, const CoverGraph& cv,
                                  const SubgroupSpec& G, std::size_t bound) {
  if (bound < 1) throw std::invalid_argument("universality bound must be at least 1");
  UniversalityReport report;
  report.bound = bound;
  for (const auto& h : G.generators) {
    ++report.words_checked;
    if (!lifts_as_loop(g, gens, cv, h)) {
      report.pass = false;
      report.witness = h;
      report.reason = "generator of G does not lift as a loop";
      return report;
    }
  }
  SubgroupGraph membership = fold_subgroup(gens.rank(), G.generators);
  for (const auto& w : reduced_words(gens.rank(), bound)) {
    ++report.words_checked;
    if (lifts_as_loop(g, gens, cv, w) && !membership.accepts(w)) {
      report.pass = false;
      report.witness = w;
      report.reason = "word lifts as a loop but is not in G";
      return report;
    }
  }
  return report;
}

Rational fiber_min_distance(const CoverGraph& cv, const GraphPoint& cover_p, const GraphPoint& base_q) {
  std::optional<Rational> best;
  for (const auto& q : cv.fiber(base_q)) {
    Rational d = cover_distance(cv, cover_p, q);
    if (!best || d < *best) best = d;
  }
  return best.value();
}

FactorMap factor_map(const MetricGraph& g, const GeneratorSet& gens, const CoverGraph& cv_g, const SubgroupSpec& G,
                     const CoverGraph& cv_h) {
  for (const auto& w : G.generators)
    if (!accepts(cv_h, w)) throw InclusionError(w, "generator " + format_word(gens, w) + " is not in H");

  const SubgroupGraph& from = cv_g.sheets();
  const SubgroupGraph& to = cv_h.sheets();
  std::vector<std::size_t> sheet_map(from.vertex_count(), SubgroupGraph::none);
  sheet_map[0] = 0;
  std::vector<std::size_t> queue{0};
  auto assign = [&](std::size_t v, std::size_t image) {
    if (image == SubgroupGraph::none) throw std::logic_error("factor map leaves the truncated target cover");
    if (sheet_map[v] == SubgroupGraph::none) {
      sheet_map[v] = image;
      queue.push_back(v);
    } else if (sheet_map[v] != image) {
      throw std::logic_error("inconsistent factor map");
    }
  };
  for (std::size_t i = 0; i < queue.size(); ++i) {
    std::size_t v = queue[i];
    for (std::size_t gen = 0; gen < from.rank(); ++gen) {
      if (auto t = from.target(v, gen); t != SubgroupGraph::none) assign(t, to.target(sheet_map[v], gen));
      if (auto s = from.source(v, gen); s != SubgroupGraph::none) assign(s, to.source(sheet_map[v], gen));
    }
  }

  FactorMap map;
  map.sheet_map = sheet_map;
  const MetricGraph& space_g = cv_g.space();
  map.vertex_map.resize(space_g.vertex_count());
  for (std::size_t cvx = 0; cvx < space_g.vertex_count(); ++cvx)
    map.vertex_map[cvx] = cv_h.cover_vertex(sheet_map[cv_g.sheet_of(cvx)], cv_g.project_vertex(cvx));
  map.edge_map.resize(space_g.edge_count());
  for (std::size_t ce = 0; ce < space_g.edge_count(); ++ce) {
    std::size_t image = cv_h.out_edge(map.vertex_map[space_g.edge(ce).tail], cv_g.project_edge(ce));
    if (image == CoverGraph::none) throw std::logic_error("factor map edge image missing");
    map.edge_map[ce] = image;
  }
  (void)g;
  std::vector<std::size_t> sorted = sheet_map;
  std::sort(sorted.begin(), sorted.end());
  map.is_isomorphism = sheet_map.size() == to.vertex_count() &&
                       std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  return map;
}

DeckReport deck_transformations(const MetricGraph& g, const GeneratorSet& gens, const CoverGraph& cv,
                                const SubgroupSpec& G, std::optional<std::size_t> conjugation_bound) {
  DeckReport report;
  std::size_t longest = 0;
  for (const auto& h : G.generators) longest = std::max(longest, h.size());
  report.conjugation_bound = conjugation_bound.value_or(std::min<std::size_t>(std::max<std::size_t>(2 * longest, 1), 8));
  for (const auto& u : reduced_words(gens.rank(), report.conjugation_bound)) {
    if (u.empty()) continue;
    for (const auto& h : G.generators) {
      LoopWord conj = u * h * u.inverse();
      if (!accepts(cv, conj)) {
        report.violating_conjugate = conj;
        return report;
      }
    }
  }
  (void)g;
  if (!cv.complete()) return report;

  const SubgroupGraph& sheets = cv.sheets();
  const std::size_t n = sheets.vertex_count();
  report.index = n;
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<std::size_t> perm(n, SubgroupGraph::none);
    perm[0] = t;
    std::vector<std::size_t> queue{0};
    bool ok = true;
    for (std::size_t i = 0; i < queue.size() && ok; ++i) {
      std::size_t v = queue[i];
      for (std::size_t gen = 0; gen < sheets.rank() && ok; ++gen) {
        for (bool forward : {true, false}) {
          std::size_t w = forward ? sheets.target(v, gen) : sheets.source(v, gen);
          std::size_t image = forward ? sheets.target(perm[v], gen) : sheets.source(perm[v], gen);
          if (perm[w] == SubgroupGraph::none) {
            perm[w] = image;
            queue.push_back(w);
          } else if (perm[w] != image) {
            ok = false;
            break;
          }
        }
      }
    }
    std::vector<std::size_t> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    if (ok && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) report.automorphisms.push_back(perm);
  }
  report.normal_by_action = report.automorphisms.size() == n;
  return report;
}

GraphPoint apply_deck(const CoverGraph& cv, const std::vector<std::size_t>& perm, const GraphPoint& p) {
  if (p.is_vertex()) {
    std::size_t v = p.vertex_index();
    return GraphPoint::vertex(cv.cover_vertex(perm.at(cv.sheet_of(v)), cv.project_vertex(v)));
  }
  const Edge& edge = cv.space().edge(p.edge_index());
  std::size_t tail = cv.cover_vertex(perm.at(cv.sheet_of(edge.tail)), cv.project_vertex(edge.tail));
  return cv.space().point_on_edge(cv.out_edge(tail, cv.project_edge(p.edge_index())), p.offset());
}

std::string to_dot(const MetricGraph& g, const GeneratorSet& gens, const CoverGraph& cv) {
  std::ostringstream out;
  const MetricGraph& space = cv.space();
  out << "digraph cover {\n";
  for (std::size_t v = 0; v < space.vertex_count(); ++v) {
    out << "  \"" << space.vertex_id(v) << "\"";
    if (v == space.base_vertex()) out << " [shape=doublecircle]";
    out << ";\n";
  }
  for (std::size_t e = 0; e < space.edge_count(); ++e) {
    const Edge& edge = space.edge(e);
    std::size_t base_edge = cv.project_edge(e);
    auto gen = gens.generator_for_edge(base_edge);
    std::string label = gen ? gens.at(*gen).name : g.edge(base_edge).id;
    out << "  \"" << space.vertex_id(edge.tail) << "\" -> \"" << space.vertex_id(edge.head) << "\" [label=\""
        << label << "\", tooltip=\"" << to_string(edge.length) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace rtcover
