#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rtcover/loop_group.hpp"
#include "rtcover/tree_point.hpp"

namespace rtcover {

/// The endpoint map from the covering tree onto the graph.
GraphPoint endpoint(const MetricGraph& g, const TreePoint& c);

struct Lift {
  /// Lift at the start of `c` and after each of its steps.
  std::vector<TreePoint> breakpoints;
  TreePoint terminal;
  /// Sum of tree distances between consecutive breakpoints.
  Rational lifted_length;
};

/// Unique lift of `c` starting at `base`: at each breakpoint t it is
/// base ⋆ reduce(c|[0,t]). Throws when c does not start at endpoint(base).
Lift lift_path(const MetricGraph& g, const TreePoint& base, const EdgePath& c);

/// Geodesic in the tree from `from` down to the meet and up to `to`.
class TreeGeodesic {
 public:
  TreeGeodesic(const MetricGraph& g, TreePoint from, TreePoint to);

  const TreePoint& from() const { return from_; }
  const TreePoint& to() const { return to_; }
  const TreePoint& turn() const { return turn_; }
  const Rational& length() const { return length_; }
  /// Point at arclength `s` from `from`, s in [0, length()].
  TreePoint at(const MetricGraph& g, const Rational& s) const;

 private:
  TreePoint from_, to_, turn_;
  Rational length_;
};

inline TreeGeodesic tree_geodesic(const MetricGraph& g, const TreePoint& a, const TreePoint& b) {
  return TreeGeodesic(g, a, b);
}

struct FourPointReport {
  std::size_t points = 0;
  std::size_t bases_checked = 0;  // the basepoint plus every re-based point
  std::size_t triples = 0;        // ordered triples of distinct indices, summed over bases
  std::size_t violations = 0;
  std::optional<Rational> min_slack;
  /// First violating (i, j, k, base) when violations > 0; base = points for the original basepoint.
  std::optional<std::array<std::size_t, 4>> witness;
};

struct FourPointOptions {
  /// How many of the points (in order) to also use as re-based basepoints.
  std::size_t rebase_limit = static_cast<std::size_t>(-1);
};

/// Exact check of (c1,c2) >= min((c1,c3), (c3,c2)) for the Gromov product at
/// the basepoint, then again after re-basing the whole set at each point.
FourPointReport check_four_point(const MetricGraph& g, std::span<const TreePoint> points,
                                 FourPointOptions options = {});

struct FiberReport {
  GraphPoint base_point;
  Rational radius;
  std::vector<TreePoint> points;  // sorted by (length, path)
  std::vector<std::vector<Rational>> distances;
};

/// Every tree point of length <= radius over `x`, by depth-first enumeration
/// of reduced paths with distance-to-target pruning.
FiberReport fiber(const MetricGraph& g, const GraphPoint& x, const Rational& radius, bool with_distances = true);

struct HausdorffReport {
  Rational value;
  Rational graph_distance;
  Rational radius;
  Rational required_radius;
  /// Every compared point has a partner at exactly d(x, y): the nearest-point
  /// infimum is a minimum.
  bool attained = false;
};

/// Smallest truncation radius fiber_hausdorff_distance accepts for (x, y).
Rational hausdorff_radius(const MetricGraph& g, const GraphPoint& x, const GraphPoint& y);

/// Hausdorff distance between the fibers over x and y, truncated at `radius`.
/// Points of length <= radius - d(x, y) are compared against the full
/// truncated opposite fiber, which holds each one's nearest partner. Throws
/// std::domain_error when radius < d(x, y) + max(longest generator loop,
/// d(*, x), d(*, y)).
HausdorffReport fiber_hausdorff_distance(const MetricGraph& g, const GraphPoint& x, const GraphPoint& y,
                                         const Rational& radius);

/// Length of the shortest nontrivial reduced loop at vertex `v`, found by
/// enumerating the fiber over v at growing radius. nullopt on a tree.
std::optional<Rational> shortest_nontrivial_loop(const MetricGraph& g, std::size_t v);

}  // namespace rtcover
