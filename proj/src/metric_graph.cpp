#include "rtcover/metric_graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace rtcover {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

// Returns the index of some vertex not reachable from vertex 0, if any.
std::optional<std::size_t> unreachable_vertex(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : edges) {
    adj[e.tail].push_back(e.head);
    adj[e.head].push_back(e.tail);
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!seen[v]) return v;
  return std::nullopt;
}

}  // namespace

MetricGraph::MetricGraph(std::vector<std::string> vertices, std::vector<Edge> edges, std::size_t base)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), base_(base) {
  if (vertices_.empty()) throw std::invalid_argument("graph has no vertices");
  if (edges_.empty()) throw std::invalid_argument("graph has no edges");
  if (base_ >= vertices_.size()) throw std::invalid_argument("basepoint out of range");
  std::set<std::string_view> ids(vertices_.begin(), vertices_.end());
  if (ids.size() != vertices_.size()) throw std::invalid_argument("duplicate vertex id");
  std::set<std::string_view> edge_ids;
  for (const auto& e : edges_) {
    if (!edge_ids.insert(e.id).second) throw std::invalid_argument("duplicate edge id " + e.id);
    if (e.tail >= vertices_.size() || e.head >= vertices_.size())
      throw std::invalid_argument("dangling endpoint on edge " + e.id);
    if (e.length <= 0) throw std::invalid_argument("non-positive length on edge " + e.id);
  }
  if (auto v = unreachable_vertex(vertices_.size(), edges_))
    throw std::invalid_argument("disconnected graph: vertex " + vertices_[*v] + " unreachable");
  ends_.resize(vertices_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    ends_[edges_[i].tail].push_back({i, true});
    ends_[edges_[i].head].push_back({i, false});
  }
}

std::optional<std::size_t> MetricGraph::find_vertex(std::string_view id) const {
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    if (vertices_[v] == id) return v;
  return std::nullopt;
}

std::optional<std::size_t> MetricGraph::find_edge(std::string_view id) const {
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].id == id) return e;
  return std::nullopt;
}

MetricGraph MetricGraph::with_base(std::size_t v) const {
  MetricGraph copy = *this;
  if (v >= vertices_.size()) throw std::invalid_argument("basepoint out of range");
  copy.base_ = v;
  return copy;
}

GraphPoint MetricGraph::point_on_edge(std::size_t e, const Rational& offset) const {
  const Edge& edge = edges_.at(e);
  if (offset < 0 || offset > edge.length)
    throw std::invalid_argument("offset " + to_string(offset) + " outside edge " + edge.id);
  if (offset == 0) return GraphPoint::vertex(edge.tail);
  if (offset == edge.length) return GraphPoint::vertex(edge.head);
  return GraphPoint(false, e, offset);
}

GraphPoint MetricGraph::parse_point(std::string_view text) const {
  if (auto at = text.find('@'); at != std::string_view::npos) {
    auto e = find_edge(text.substr(0, at));
    if (!e) throw std::invalid_argument("unknown edge in point: " + std::string(text));
    return point_on_edge(*e, parse_rational(text.substr(at + 1)));
  }
  auto v = find_vertex(text);
  if (!v) throw std::invalid_argument("unknown vertex: " + std::string(text));
  return GraphPoint::vertex(*v);
}

std::string MetricGraph::format_point(const GraphPoint& p) const {
  if (p.is_vertex()) return vertices_.at(p.vertex_index());
  return edges_.at(p.edge_index()).id + "@" + to_string(p.offset());
}

MetricGraph parse_graph(std::string_view text) {
  std::vector<std::string> vertices;
  std::map<std::string, std::size_t, std::less<>> vertex_index;
  std::map<std::string, std::size_t, std::less<>> vertex_line;
  struct PendingEdge {
    std::string id, tail, head;
    Rational length;
    std::size_t line;
  };
  std::vector<PendingEdge> pending;
  std::set<std::string, std::less<>> edge_ids;
  std::optional<std::pair<std::string, std::size_t>> base;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok[0] == "v") {
      if (tok.size() != 2) throw ParseError(line_no, "expected `v <id>`");
      std::string id(tok[1]);
      if (vertex_index.count(id)) throw ParseError(line_no, "duplicate vertex id " + id);
      vertex_index.emplace(id, vertices.size());
      vertex_line.emplace(id, line_no);
      vertices.push_back(id);
    } else if (tok[0] == "e") {
      if (tok.size() != 5) throw ParseError(line_no, "expected `e <id> <tail> <head> <length>`");
      std::string id(tok[1]);
      if (!edge_ids.insert(id).second) throw ParseError(line_no, "duplicate edge id " + id);
      Rational length;
      try {
        length = parse_rational(tok[4]);
      } catch (const std::invalid_argument& ex) {
        throw ParseError(line_no, ex.what());
      }
      if (length <= 0) throw ParseError(line_no, "non-positive length on edge " + id);
      pending.push_back({id, std::string(tok[2]), std::string(tok[3]), length, line_no});
    } else if (tok[0] == "base") {
      if (tok.size() != 2) throw ParseError(line_no, "expected `base <vertex-id>`");
      if (base) throw ParseError(line_no, "duplicate base directive");
      base.emplace(std::string(tok[1]), line_no);
    } else {
      throw ParseError(line_no, "unknown record `" + std::string(tok[0]) + "`");
    }
  }

  std::vector<Edge> edges;
  for (const auto& p : pending) {
    auto t = vertex_index.find(p.tail);
    auto h = vertex_index.find(p.head);
    if (t == vertex_index.end())
      throw ParseError(p.line, "dangling endpoint reference " + p.tail + " on edge " + p.id);
    if (h == vertex_index.end())
      throw ParseError(p.line, "dangling endpoint reference " + p.head + " on edge " + p.id);
    edges.push_back({p.id, t->second, h->second, p.length});
  }
  if (vertices.empty()) throw ParseError(0, "graph has no vertices");
  if (edges.empty()) throw ParseError(0, "graph has no edges");
  if (auto v = unreachable_vertex(vertices.size(), edges))
    throw ParseError(vertex_line.at(vertices[*v]), "disconnected graph: vertex " + vertices[*v] + " unreachable");

  std::size_t base_index;
  if (base) {
    auto it = vertex_index.find(base->first);
    if (it == vertex_index.end()) throw ParseError(base->second, "unknown base vertex " + base->first);
    base_index = it->second;
  } else {
    base_index = vertex_index.begin()->second;
  }
  return MetricGraph(std::move(vertices), std::move(edges), base_index);
}

MetricGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open graph file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

std::string write_graph(const MetricGraph& g) {
  std::ostringstream out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) out << "v " << g.vertex_id(v) << "\n";
  for (const auto& e : g.edges())
    out << "e " << e.id << " " << g.vertex_id(e.tail) << " " << g.vertex_id(e.head) << " " << to_string(e.length)
        << "\n";
  out << "base " << g.vertex_id(g.base_vertex()) << "\n";
  return out.str();
}

std::vector<Rational> vertex_distances(const MetricGraph& g, const GraphPoint& p) {
  // Dijkstra with exact keys; -1 marks "unreached".
  std::vector<Rational> dist(g.vertex_count(), Rational(-1));
  using Item = std::pair<Rational, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  auto relax = [&](std::size_t v, const Rational& d) {
    if (dist[v] < 0 || d < dist[v]) {
      dist[v] = d;
      queue.emplace(d, v);
    }
  };
  if (p.is_vertex()) {
    relax(p.vertex_index(), Rational(0));
  } else {
    const Edge& e = g.edge(p.edge_index());
    relax(e.tail, p.offset());
    relax(e.head, e.length - p.offset());
  }
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    for (const auto& end : g.ends_at(v)) {
      const Edge& e = g.edge(end.edge);
      relax(end.forward ? e.head : e.tail, d + e.length);
    }
  }
  return dist;
}

Rational graph_distance(const MetricGraph& g, const GraphPoint& p, const GraphPoint& q) {
  auto dist = vertex_distances(g, p);
  if (q.is_vertex()) return dist[q.vertex_index()];
  const Edge& e = g.edge(q.edge_index());
  Rational best = std::min(dist[e.tail] + q.offset(), dist[e.head] + (e.length - q.offset()));
  if (!p.is_vertex() && p.edge_index() == q.edge_index()) best = std::min(best, Rational(abs(p.offset() - q.offset())));
  return best;
}

std::size_t germ_valency(const MetricGraph& g, const GraphPoint& p) {
  if (!p.is_vertex()) return 2;
  return g.ends_at(p.vertex_index()).size();
}

}  // namespace rtcover
