#include "rtcover/covering_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace rtcover {

GraphPoint endpoint(const MetricGraph& g, const TreePoint& c) { return c.path().end(g); }

Lift lift_path(const MetricGraph& g, const TreePoint& base, const EdgePath& c) {
  if (c.start() != endpoint(g, base)) throw std::invalid_argument("path does not start at the lift's base");
  std::vector<TreePoint> breakpoints{base};
  std::vector<Step> prefix;
  for (const auto& s : c.steps()) {
    prefix.push_back(s);
    RhoPath reduced = reduce(g, EdgePath(g, c.start(), prefix));
    breakpoints.emplace_back(g, concat_cancelled(g, base.path(), reduced));
  }
  Rational lifted(0);
  for (std::size_t i = 1; i < breakpoints.size(); ++i) lifted += tree_distance(breakpoints[i - 1], breakpoints[i]);
  TreePoint terminal = breakpoints.back();
  return {std::move(breakpoints), std::move(terminal), std::move(lifted)};
}

TreeGeodesic::TreeGeodesic(const MetricGraph& g, TreePoint from, TreePoint to)
    : from_(std::move(from)),
      to_(std::move(to)),
      turn_(g, meet(g, from_.path(), to_.path())),
      length_(tree_distance(from_, to_)) {}

TreePoint TreeGeodesic::at(const MetricGraph& g, const Rational& s) const {
  if (s < 0 || s > length_) throw std::out_of_range("geodesic parameter outside [0, length]");
  Rational descent = from_.length() - turn_.length();
  if (s <= descent) return TreePoint(g, truncate(from_.path(), from_.length() - s));
  return TreePoint(g, truncate(to_.path(), turn_.length() + (s - descent)));
}

namespace {

void check_one_base(const std::vector<RhoPath>& paths, std::size_t base_label, FourPointReport& report) {
  const std::size_t n = paths.size();
  std::vector<std::vector<Rational>> gp(n, std::vector<Rational>(n));
  std::vector<Rational> values;
  values.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      gp[i][j] = gp[j][i] = gromov_product(paths[i], paths[j]);
      values.push_back(gp[i][j]);
    }
  // Rank-compress the products so the cubic sweep compares integers; order is
  // preserved exactly, so the verdicts are unchanged.
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<std::vector<std::uint32_t>> rank(n, std::vector<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rank[i][j] = static_cast<std::uint32_t>(std::lower_bound(values.begin(), values.end(), gp[i][j]) - values.begin());

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::uint32_t best = 0;
      std::size_t best_k = n;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        std::uint32_t m = std::min(rank[i][k], rank[k][j]);
        if (rank[i][j] < m) {
          if (!report.witness) report.witness = std::array<std::size_t, 4>{i, j, k, base_label};
          ++report.violations;
        }
        if (best_k == n || m > best) {
          best = m;
          best_k = k;
        }
        ++report.triples;
      }
      if (best_k == n) continue;
      Rational slack = gp[i][j] - std::min(gp[i][best_k], gp[best_k][j]);
      if (!report.min_slack || slack < *report.min_slack) report.min_slack = slack;
    }
  }
}

}  // namespace

FourPointReport check_four_point(const MetricGraph& g, std::span<const TreePoint> points, FourPointOptions options) {
  if (points.size() < 3) throw std::invalid_argument("four-point check needs at least three points");
  FourPointReport report;
  report.points = points.size();
  std::vector<RhoPath> paths;
  paths.reserve(points.size());
  for (const auto& p : points) paths.push_back(p.path());
  check_one_base(paths, points.size(), report);
  ++report.bases_checked;

  std::size_t limit = std::min(options.rebase_limit, points.size());
  for (std::size_t w = 0; w < limit; ++w) {
    RhoPath back = inverse(g, points[w].path());
    std::vector<RhoPath> rebased;
    rebased.reserve(points.size());
    for (const auto& p : points) rebased.push_back(concat_cancelled(g, back, p.path()));
    check_one_base(rebased, w, report);
    ++report.bases_checked;
  }
  return report;
}

namespace {

struct FiberSearch {
  const MetricGraph& g;
  const GraphPoint& target;
  const Rational& radius;
  std::vector<Rational> to_target;
  std::vector<Step> steps;
  std::vector<TreePoint> found;

  bool continues(const Step& next) const {
    return !steps.empty() && steps.back().edge == next.edge && steps.back().exit == next.enter;
  }

  void emit(std::vector<Step> path) { found.emplace_back(g, reduce(g, EdgePath(g, g.base_point(), std::move(path)))); }

  void visit(std::size_t v, const Rational& len) {
    if (target.is_vertex()) {
      if (target.vertex_index() == v) emit(steps);
    } else {
      const std::size_t e = target.edge_index();
      const Edge& edge = g.edge(e);
      const Rational& s = target.offset();
      if (edge.tail == v) {
        Step last{e, Rational(0), s};
        if (!continues(last) && len + s <= radius) {
          auto path = steps;
          path.push_back(last);
          emit(std::move(path));
        }
      }
      if (edge.head == v) {
        Step last{e, edge.length, s};
        if (!continues(last) && len + (edge.length - s) <= radius) {
          auto path = steps;
          path.push_back(last);
          emit(std::move(path));
        }
      }
    }
    for (const auto& end : g.ends_at(v)) {
      const Edge& edge = g.edge(end.edge);
      Step next = end.forward ? Step{end.edge, Rational(0), edge.length} : Step{end.edge, edge.length, Rational(0)};
      if (continues(next)) continue;
      std::size_t w = end.forward ? edge.head : edge.tail;
      Rational next_len = len + edge.length;
      if (next_len + to_target[w] > radius) continue;
      steps.push_back(std::move(next));
      visit(w, next_len);
      steps.pop_back();
    }
  }
};

Rational longest_generator(const GeneratorSet& gens) {
  Rational best(0);
  for (const auto& gen : gens.all()) best = std::max(best, gen.loop.length());
  return best;
}

}  // namespace

FiberReport fiber(const MetricGraph& g, const GraphPoint& x, const Rational& radius, bool with_distances) {
  if (radius < 0) throw std::invalid_argument("fiber radius must be nonnegative");
  FiberSearch search{g, x, radius, vertex_distances(g, x), {}, {}};
  search.visit(g.base_vertex(), Rational(0));
  auto& points = search.found;
  std::sort(points.begin(), points.end(), [](const TreePoint& a, const TreePoint& b) {
    Rational la = a.length(), lb = b.length();
    if (la != lb) return la < lb;
    return a < b;
  });
  FiberReport report{x, radius, std::move(points), {}};
  if (with_distances) {
    const std::size_t n = report.points.size();
    report.distances.assign(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        report.distances[i][j] = report.distances[j][i] = tree_distance(report.points[i], report.points[j]);
  }
  return report;
}

Rational hausdorff_radius(const MetricGraph& g, const GraphPoint& x, const GraphPoint& y) {
  Rational reach = std::max({longest_generator(generators(g)), graph_distance(g, g.base_point(), x),
                             graph_distance(g, g.base_point(), y)});
  return graph_distance(g, x, y) + reach;
}

HausdorffReport fiber_hausdorff_distance(const MetricGraph& g, const GraphPoint& x, const GraphPoint& y,
                                         const Rational& radius) {
  HausdorffReport report;
  report.radius = radius;
  report.graph_distance = graph_distance(g, x, y);
  report.required_radius = hausdorff_radius(g, x, y);
  if (radius < report.required_radius)
    throw std::domain_error("radius " + to_string(radius) + " is below the required " +
                            to_string(report.required_radius));

  FiberReport fx = fiber(g, x, radius, false);
  FiberReport fy = fiber(g, y, radius, false);
  const Rational inner = radius - report.graph_distance;
  bool attained = true;
  std::optional<Rational> worst;
  auto one_side = [&](const FiberReport& from, const FiberReport& to) {
    for (const auto& a : from.points) {
      if (a.length() > inner) continue;
      std::optional<Rational> nearest;
      for (const auto& b : to.points) {
        Rational d = tree_distance(a, b);
        if (!nearest || d < *nearest) nearest = d;
      }
      if (!nearest) throw std::logic_error("empty opposite fiber");
      if (*nearest != report.graph_distance) attained = false;
      if (!worst || *nearest > *worst) worst = nearest;
    }
  };
  one_side(fx, fy);
  one_side(fy, fx);
  report.value = worst.value_or(Rational(0));
  report.attained = attained && worst.has_value();
  return report;
}

std::optional<Rational> shortest_nontrivial_loop(const MetricGraph& g, std::size_t v) {
  MetricGraph rebased = g.with_base(v);
  GeneratorSet gens = generators(rebased);
  if (gens.rank() == 0) return std::nullopt;
  FiberReport loops = fiber(rebased, rebased.base_point(), longest_generator(gens), false);
  std::optional<Rational> best;
  for (const auto& p : loops.points)
    if (!p.path().is_constant() && (!best || p.length() < *best)) best = p.length();
  return best;
}

}  // namespace rtcover
