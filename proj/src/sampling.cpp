#include "rtcover/sampling.hpp"

#include <string>
#include <vector>

namespace rtcover {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

Rational quarter(const Rational& length, std::size_t k) { return length * Rational(static_cast<int>(k), 4); }

}  // namespace

EdgePath random_edge_path(const MetricGraph& g, std::mt19937_64& rng, const GraphPoint& start, std::size_t steps) {
  std::vector<Step> out;
  GraphPoint here = start;
  for (std::size_t i = 0; i < steps; ++i) {
    std::size_t e;
    Rational from;
    if (here.is_vertex()) {
      const auto& ends = g.ends_at(here.vertex_index());
      const EdgeEnd& end = ends[pick(rng, ends.size())];
      e = end.edge;
      from = end.forward ? Rational(0) : g.edge(e).length;
    } else {
      e = here.edge_index();
      from = here.offset();
    }
    const Rational& len = g.edge(e).length;
    Rational to;
    if (pick(rng, 3) == 0) {
      do to = quarter(len, 1 + pick(rng, 3));
      while (to == from);
    } else if (from == 0) {
      to = len;
    } else if (from == len) {
      to = Rational(0);
    } else {
      to = pick(rng, 2) ? len : Rational(0);
    }
    out.push_back({e, from, to});
    here = g.point_on_edge(e, to);
  }
  return EdgePath(g, start, std::move(out));
}

TreePoint random_tree_point(const MetricGraph& g, std::mt19937_64& rng, std::size_t steps) {
  return TreePoint(g, reduce(g, random_edge_path(g, rng, g.base_point(), steps)));
}

GraphPoint random_graph_point(const MetricGraph& g, std::mt19937_64& rng) {
  if (pick(rng, 2) == 0) return GraphPoint::vertex(pick(rng, g.vertex_count()));
  std::size_t e = pick(rng, g.edge_count());
  return g.point_on_edge(e, quarter(g.edge(e).length, 1 + pick(rng, 3)));
}

Word random_word(std::size_t rank, std::size_t length, std::mt19937_64& rng) {
  std::vector<Letter> letters;
  while (letters.size() < length) {
    Letter l = make_letter(pick(rng, rank), pick(rng, 2) == 1);
    if (!letters.empty() && letters.back() == -l) continue;
    letters.push_back(l);
  }
  return Word(std::move(letters));
}

MetricGraph random_graph(std::mt19937_64& rng, std::size_t vertices, std::size_t extra_edges) {
  std::vector<std::string> ids;
  for (std::size_t v = 0; v < vertices; ++v) ids.push_back("v" + std::to_string(v));
  std::vector<Edge> edges;
  auto add = [&](std::size_t a, std::size_t b) {
    Rational length(static_cast<int>(1 + pick(rng, 4)), 2);
    edges.push_back({"e" + std::to_string(edges.size()), a, b, length});
  };
  for (std::size_t v = 1; v < vertices; ++v) {
    std::size_t u = pick(rng, v);
    pick(rng, 2) ? add(u, v) : add(v, u);
  }
  for (std::size_t i = 0; i < extra_edges; ++i) add(pick(rng, vertices), pick(rng, vertices));
  return MetricGraph(std::move(ids), std::move(edges), 0);
}

}  // namespace rtcover
