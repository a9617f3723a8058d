#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rtcover/rational.hpp"

namespace rtcover {

/// Raised for malformed graph documents; `line()` is 1-based, 0 when the
/// problem is not tied to a single line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct Edge {
  std::string id;
  std::size_t tail = 0;
  std::size_t head = 0;
  Rational length;

  bool is_loop() const { return tail == head; }
};

/// A point of the length space: either a vertex, or a point strictly inside an
/// edge at `offset` measured from the tail. Vertex points always use the
/// vertex form, so equality is structural.
class GraphPoint {
 public:
  static GraphPoint vertex(std::size_t v) { return GraphPoint(true, v, Rational(0)); }

  bool is_vertex() const { return on_vertex_; }
  std::size_t vertex_index() const { return index_; }
  std::size_t edge_index() const { return index_; }
  const Rational& offset() const { return offset_; }

  friend bool operator==(const GraphPoint&, const GraphPoint&) = default;
  friend bool operator<(const GraphPoint& a, const GraphPoint& b) {
    if (a.on_vertex_ != b.on_vertex_) return a.on_vertex_;
    if (a.index_ != b.index_) return a.index_ < b.index_;
    return a.offset_ < b.offset_;
  }

 private:
  friend class MetricGraph;
  GraphPoint(bool on_vertex, std::size_t index, Rational offset)
      : on_vertex_(on_vertex), index_(index), offset_(std::move(offset)) {}

  bool on_vertex_;
  std::size_t index_;
  Rational offset_;
};

/// An edge end at a vertex: walking `edge` away from the vertex, forward when
/// the vertex is the tail. Loops contribute two ends.
struct EdgeEnd {
  std::size_t edge;
  bool forward;
};

class MetricGraph {
 public:
  /// Validates everything except line-numbered parse errors: positive lengths,
  /// endpoints in range, connectivity, at least one edge, unique ids.
  MetricGraph(std::vector<std::string> vertices, std::vector<Edge> edges, std::size_t base);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::string& vertex_id(std::size_t v) const { return vertices_.at(v); }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<EdgeEnd>& ends_at(std::size_t v) const { return ends_.at(v); }

  std::optional<std::size_t> find_vertex(std::string_view id) const;
  std::optional<std::size_t> find_edge(std::string_view id) const;

  std::size_t base_vertex() const { return base_; }
  GraphPoint base_point() const { return GraphPoint::vertex(base_); }
  MetricGraph with_base(std::size_t v) const;

  /// Canonical point at `offset` along edge `e`; offsets 0 and length collapse
  /// to the tail and head vertex respectively.
  GraphPoint point_on_edge(std::size_t e, const Rational& offset) const;

  /// Point syntax: `<vertex-id>` or `<edge-id>@<rational>`.
  GraphPoint parse_point(std::string_view text) const;
  std::string format_point(const GraphPoint& p) const;

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeEnd>> ends_;
  std::size_t base_;
};

/// Graph document: `v <id>`, `e <id> <tail> <head> <length>`, `base <id>`,
/// `#` comments. The basepoint defaults to the lexicographically smallest id.
MetricGraph parse_graph(std::string_view text);
MetricGraph load_graph(const std::string& path);
std::string write_graph(const MetricGraph& g);

/// Exact shortest-path distance from `p` to every vertex.
std::vector<Rational> vertex_distances(const MetricGraph& g, const GraphPoint& p);

Rational graph_distance(const MetricGraph& g, const GraphPoint& p, const GraphPoint& q);

/// Number of germ directions at `p`: 2 inside an edge, the degree (loops
/// counted twice) at a vertex.
std::size_t germ_valency(const MetricGraph& g, const GraphPoint& p);

}  // namespace rtcover
