#pragma once

#include "rtcover/rho_path.hpp"

namespace rtcover {

/// A point of the covering tree: a reduced path anchored at the graph's
/// basepoint. The root is the constant path.
class TreePoint {
 public:
  static TreePoint root(const MetricGraph& g) { return TreePoint(RhoPath(g.base_point())); }

  /// Throws std::invalid_argument unless `path` starts at the basepoint.
  TreePoint(const MetricGraph& g, RhoPath path) : path_(std::move(path)) {
    if (path_.start() != g.base_point()) throw std::invalid_argument("tree point must start at the basepoint");
  }

  const RhoPath& path() const { return path_; }
  Rational length() const { return path_.length(); }

  friend bool operator==(const TreePoint&, const TreePoint&) = default;
  friend bool operator<(const TreePoint& a, const TreePoint& b) { return a.path_ < b.path_; }

 private:
  explicit TreePoint(RhoPath path) : path_(std::move(path)) {}
  RhoPath path_;
};

inline Rational tree_distance(const TreePoint& a, const TreePoint& b) { return tree_distance(a.path(), b.path()); }

}  // namespace rtcover
