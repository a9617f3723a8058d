#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rtcover/metric_graph.hpp"

namespace rtcover {

/// One traversal along a single edge, from edge-offset `enter` to `exit`
/// (forward when enter < exit). Offsets are in the edge's own coordinates.
struct Step {
  std::size_t edge = 0;
  Rational enter;
  Rational exit;

  bool forward() const { return enter < exit; }
  Rational length() const { return enter < exit ? Rational(exit - enter) : Rational(enter - exit); }
  Step reversed() const { return {edge, exit, enter}; }

  friend bool operator==(const Step&, const Step&) = default;
  friend bool operator<(const Step& a, const Step& b) {
    if (a.edge != b.edge) return a.edge < b.edge;
    if (a.enter != b.enter) return a.enter < b.enter;
    return a.exit < b.exit;
  }
};

/// A rectifiable path on the graph stored combinatorially: a start point and
/// a chain of non-degenerate steps, each beginning where the previous ended.
/// Partial steps and turnarounds inside an edge are allowed here.
class EdgePath {
 public:
  /// Constant path at `start`.
  explicit EdgePath(GraphPoint start) : start_(std::move(start)) {}
  /// Validates offsets and junctions; throws std::invalid_argument.
  EdgePath(const MetricGraph& g, GraphPoint start, std::vector<Step> steps);

  const GraphPoint& start() const { return start_; }
  const std::vector<Step>& steps() const { return steps_; }
  bool is_constant() const { return steps_.empty(); }
  Rational length() const;
  GraphPoint end(const MetricGraph& g) const;

  friend bool operator==(const EdgePath&, const EdgePath&) = default;

 private:
  friend class RhoPath;
  friend EdgePath restrict_to(const EdgePath& c, const Rational& t);
  EdgePath(GraphPoint start, std::vector<Step> steps, bool /*trusted*/)
      : start_(std::move(start)), steps_(std::move(steps)) {}

  GraphPoint start_;
  std::vector<Step> steps_;
};

/// A reduced path: no step is followed by a step on the same edge that picks
/// up at the same offset. On a graph this is exactly weak normality, so each
/// fixed-endpoint homotopy class has one RhoPath, and its steps are full edges
/// except possibly the first and last.
class RhoPath {
 public:
  explicit RhoPath(GraphPoint start) : path_(std::move(start)) {}

  const GraphPoint& start() const { return path_.start(); }
  const std::vector<Step>& steps() const { return path_.steps(); }
  bool is_constant() const { return path_.is_constant(); }
  Rational length() const { return path_.length(); }
  GraphPoint end(const MetricGraph& g) const { return path_.end(g); }
  const EdgePath& as_edge_path() const { return path_; }

  friend bool operator==(const RhoPath&, const RhoPath&) = default;
  friend bool operator<(const RhoPath& a, const RhoPath& b);

 private:
  friend RhoPath reduce(const MetricGraph& g, const EdgePath& c);
  friend RhoPath inverse(const MetricGraph& g, const RhoPath& c);
  friend RhoPath truncate(const RhoPath& c, const Rational& t);
  friend RhoPath meet(const MetricGraph& g, const RhoPath& c1, const RhoPath& c2);
  RhoPath(GraphPoint start, std::vector<Step> steps) : path_(std::move(start), std::move(steps), true) {}

  EdgePath path_;
};

/// Plain concatenation c∗d; throws when c does not end where d starts.
EdgePath concat(const MetricGraph& g, const EdgePath& c, const EdgePath& d);

/// The prefix of `c` of arclength `t` (clamped to [0, L(c)]).
EdgePath restrict_to(const EdgePath& c, const Rational& t);

/// Free reduction: cancel every step against an immediate continuation on the
/// same edge, repeatedly, via a stack. Yields the unique reduced path
/// homotopic to `c` rel endpoints.
RhoPath reduce(const MetricGraph& g, const EdgePath& c);
RhoPath inverse(const MetricGraph& g, const RhoPath& c);
RhoPath truncate(const RhoPath& c, const Rational& t);

/// Maximal common prefix by arclength; throws on start mismatch.
RhoPath meet(const MetricGraph& g, const RhoPath& c1, const RhoPath& c2);
/// L(meet(c1, c2)) without building the path.
Rational meet_length(const RhoPath& c1, const RhoPath& c2);

/// L(c1) + L(c2) - 2 L(c1 ∧ c2).
Rational tree_distance(const RhoPath& c1, const RhoPath& c2);
/// Gromov product at the common start, equal to L(c1 ∧ c2).
Rational gromov_product(const RhoPath& c1, const RhoPath& c2);

/// Cancelled concatenation c ⋆ d.
RhoPath concat_cancelled(const MetricGraph& g, const RhoPath& c, const RhoPath& d);

/// Path syntax: whitespace-separated `+e` / `-e` tokens, the first and last
/// optionally clamped as `+e@[lo,hi]` (edge coordinates). `.@<point>` is the
/// constant path.
EdgePath parse_path(const MetricGraph& g, std::string_view text);
std::string format_path(const MetricGraph& g, const EdgePath& c);
inline std::string format_path(const MetricGraph& g, const RhoPath& c) { return format_path(g, c.as_edge_path()); }

}  // namespace rtcover
