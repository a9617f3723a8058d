#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "rtcover/covering_tree.hpp"
#include "rtcover/sampling.hpp"

using namespace rtcover;
using fixtures::q;

namespace {

struct Theta {
  MetricGraph g = fixtures::theta();
  TreePoint pt(const char* s) const { return TreePoint(g, reduce(g, parse_path(g, s))); }
  GraphPoint at(const char* s) const { return g.parse_point(s); }
};

}  // namespace

TEST_CASE("endpoint examples") {
  Theta t;
  CHECK(endpoint(t.g, TreePoint::root(t.g)) == t.at("u"));
  CHECK(endpoint(t.g, t.pt("+a")) == t.at("v"));
  CHECK(endpoint(t.g, t.pt("+a -b")) == t.at("u"));
  CHECK_THROWS(TreePoint(t.g, reduce(t.g, parse_path(t.g, "-a"))));
}

TEST_CASE("lift examples") {
  Theta t;
  Lift l1 = lift_path(t.g, TreePoint::root(t.g), parse_path(t.g, "+a"));
  CHECK(l1.terminal == t.pt("+a"));
  CHECK(l1.lifted_length == 1);
  Lift l2 = lift_path(t.g, TreePoint::root(t.g), parse_path(t.g, "+a -a"));
  CHECK(l2.terminal == TreePoint::root(t.g));
  CHECK(l2.lifted_length == 2);
  Lift l3 = lift_path(t.g, TreePoint::root(t.g), parse_path(t.g, "+a -b"));
  CHECK(l3.terminal == t.pt("+a -b"));
  CHECK(l3.terminal != TreePoint::root(t.g));
  CHECK_THROWS(lift_path(t.g, TreePoint::root(t.g), parse_path(t.g, "-a")));
  // From a non-root base the lift is translated.
  Lift l4 = lift_path(t.g, t.pt("+a -b"), parse_path(t.g, "+b"));
  CHECK(l4.terminal == t.pt("+a"));
}

TEST_CASE("tree geodesic examples") {
  Theta t;
  TreeGeodesic ab(t.g, t.pt("+a"), t.pt("+b"));
  CHECK(ab.length() == 2);
  CHECK(ab.turn() == TreePoint::root(t.g));
  CHECK(ab.at(t.g, 1) == TreePoint::root(t.g));
  CHECK(ab.at(t.g, q("3/2")) == t.pt("+b@[0,1/2]"));
  TreeGeodesic cc(t.g, t.pt("+a"), t.pt("+a"));
  CHECK(cc.length() == 0);
  TreeGeodesic down(t.g, t.pt("+a"), t.pt("+a -b"));
  CHECK(down.length() == 1);
  for (int k = 0; k <= 4; ++k) CHECK(down.at(t.g, Rational(k, 4)) != TreePoint::root(t.g));
}

TEST_CASE("four-point examples") {
  Theta t;
  std::vector<TreePoint> pts{TreePoint::root(t.g), t.pt("+a"), t.pt("+b"), t.pt("+a -b")};
  auto r = check_four_point(t.g, pts);
  CHECK(r.violations == 0);
  CHECK(r.bases_checked == 5);
  CHECK(r.triples == 5 * 4 * 3 * 2);

  std::vector<TreePoint> repeated{t.pt("+a"), t.pt("+a"), t.pt("+b")};
  auto rr = check_four_point(t.g, repeated);
  CHECK(rr.violations == 0);
  REQUIRE(rr.min_slack);
  CHECK(*rr.min_slack == 0);

  std::mt19937_64 rng(7);
  std::vector<TreePoint> random;
  for (int i = 0; i < 200; ++i) random.push_back(random_tree_point(t.g, rng, 1 + i % 6));
  FourPointOptions opt;
  opt.rebase_limit = 3;
  auto big = check_four_point(t.g, random, opt);
  CHECK(big.violations == 0);
  CHECK(big.triples == 4ull * 200 * 199 * 198);
}

TEST_CASE("four-point oracle agrees with a direct triple loop") {
  std::mt19937_64 rng(9);
  auto g = fixtures::rose2();
  std::vector<TreePoint> pts;
  for (int i = 0; i < 12; ++i) pts.push_back(random_tree_point(g, rng, 1 + i % 5));
  std::optional<Rational> slack;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j)
      for (std::size_t k = 0; k < pts.size(); ++k) {
        if (i == j || j == k || i == k) continue;
        Rational s = gromov_product(pts[i].path(), pts[j].path()) -
                     std::min(gromov_product(pts[i].path(), pts[k].path()), gromov_product(pts[k].path(), pts[j].path()));
        if (!slack || s < *slack) slack = s;
      }
  FourPointOptions opt;
  opt.rebase_limit = 0;
  auto r = check_four_point(g, pts, opt);
  REQUIRE(r.min_slack);
  CHECK(*r.min_slack == *slack);
  CHECK(r.triples == 12 * 11 * 10);
}

TEST_CASE("fiber examples") {
  Theta t;
  auto f = fiber(t.g, t.at("u"), 2);
  CHECK(f.points.size() == 7);
  std::set<TreePoint> expected{TreePoint::root(t.g)};
  for (const char* s : {"+a -b", "+b -a", "+a -c", "+c -a", "+b -c", "+c -b"}) expected.insert(t.pt(s));
  CHECK(std::set<TreePoint>(f.points.begin(), f.points.end()) == expected);
  CHECK(f.points.front() == TreePoint::root(t.g));
  CHECK(f.distances.size() == 7);

  CHECK(fiber(t.g, t.at("u"), q("1/2")).points.size() == 1);
  auto mid = fiber(t.g, t.at("a@1/2"), 1);
  REQUIRE(mid.points.size() == 1);
  CHECK(mid.points[0] == t.pt("+a@[0,1/2]"));
  CHECK(fiber(t.g, t.at("a@1/2"), q("3/2")).points.size() == 3);
  CHECK_THROWS(fiber(t.g, t.at("u"), -1));
}

TEST_CASE("fibers: endpoints, completeness against brute force, lightness") {
  std::mt19937_64 rng(13);
  std::vector<MetricGraph> graphs{fixtures::theta(), fixtures::rose2(), fixtures::lollipop(), random_graph(rng, 4, 2)};
  for (const auto& g : graphs) {
    const Rational radius = 3;
    // Brute force: reduce every full-edge walk from the base with up to 6 steps.
    std::set<TreePoint> all;
    std::vector<EdgePath> frontier{EdgePath(g.base_point())};
    for (int depth = 0; depth <= 6; ++depth) {
      std::vector<EdgePath> next;
      for (const auto& c : frontier) {
        all.insert(TreePoint(g, reduce(g, c)));
        GraphPoint here = c.end(g);
        for (const auto& end : g.ends_at(here.vertex_index())) {
          const Rational& len = g.edge(end.edge).length;
          Step s = end.forward ? Step{end.edge, Rational(0), len} : Step{end.edge, len, Rational(0)};
          auto steps = c.steps();
          steps.push_back(s);
          next.emplace_back(g, c.start(), std::move(steps));
        }
      }
      frontier = std::move(next);
    }
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      auto f = fiber(g, GraphPoint::vertex(v), radius);
      std::set<TreePoint> got(f.points.begin(), f.points.end());
      CHECK(got.size() == f.points.size());
      std::set<TreePoint> want;
      for (const auto& p : all)
        if (p.length() <= radius && endpoint(g, p) == GraphPoint::vertex(v)) want.insert(p);
      // Edges are at least 1/2 long, so six steps reach past radius 3.
      CHECK(got == want);
      for (const auto& p : f.points) CHECK(endpoint(g, p) == GraphPoint::vertex(v));
      if (auto girth = shortest_nontrivial_loop(g, v); girth && f.points.size() >= 2)
        for (std::size_t i = 0; i < f.points.size(); ++i)
          for (std::size_t j = i + 1; j < f.points.size(); ++j) CHECK(f.distances[i][j] >= *girth);
    }
  }
}

TEST_CASE("Hausdorff examples") {
  Theta t;
  auto uv = fiber_hausdorff_distance(t.g, t.at("u"), t.at("v"), 4);
  CHECK(uv.value == 1);
  CHECK(uv.attained);
  auto uu = fiber_hausdorff_distance(t.g, t.at("u"), t.at("u"), 4);
  CHECK(uu.value == 0);
  auto um = fiber_hausdorff_distance(t.g, t.at("u"), t.at("a@1/2"), 4);
  CHECK(um.value == q("1/2"));
  CHECK(um.attained);
  CHECK_THROWS_AS(fiber_hausdorff_distance(t.g, t.at("u"), t.at("v"), 2), std::domain_error);
  CHECK(hausdorff_radius(t.g, t.at("u"), t.at("v")) == 3);
}

TEST_CASE("endpoint map is 1-Lipschitz and geodesics have the tree length") {
  std::mt19937_64 rng(17);
  for (const auto& g : {fixtures::theta(), fixtures::rose2(), random_graph(rng, 5, 3)}) {
    std::vector<TreePoint> pts;
    for (int i = 0; i < 25; ++i) pts.push_back(random_tree_point(g, rng, 1 + i % 7));
    for (const auto& a : pts)
      for (const auto& b : pts) {
        Rational d = tree_distance(a, b);
        CHECK(graph_distance(g, endpoint(g, a), endpoint(g, b)) <= d);
        TreeGeodesic geo(g, a, b);
        CHECK(geo.length() == d);
        CHECK(geo.at(g, 0) == a);
        CHECK(geo.at(g, d) == b);
        Rational half = d / 2;
        CHECK(tree_distance(geo.at(g, half), a) == half);
        CHECK(tree_distance(geo.at(g, half), b) == d - half);
      }
  }
}

TEST_CASE("lifts are unique, length preserving and project back") {
  std::mt19937_64 rng(23);
  for (const auto& g : {fixtures::theta(), fixtures::rose2(), fixtures::lollipop()})
    for (int i = 0; i < 500; ++i) {
      EdgePath c = random_edge_path(g, rng, g.base_point(), 1 + i % 9);
      Lift l = lift_path(g, TreePoint::root(g), c);
      CHECK(l.lifted_length == c.length());
      CHECK(endpoint(g, l.terminal) == c.end(g));
      REQUIRE(l.breakpoints.size() == c.steps().size() + 1);
      for (std::size_t k = 0; k < l.breakpoints.size(); ++k) {
        // Each breakpoint projects to where c is, and consecutive ones are one step apart.
        Rational t(0);
        for (std::size_t s = 0; s < k; ++s) t += c.steps()[s].length();
        CHECK(endpoint(g, l.breakpoints[k]) == restrict_to(c, t).end(g));
        if (k > 0) CHECK(tree_distance(l.breakpoints[k - 1], l.breakpoints[k]) == c.steps()[k - 1].length());
      }
      bool loop = c.end(g) == g.base_point();
      if (loop) CHECK((l.terminal == TreePoint::root(g)) == reduce(g, c).is_constant());
    }
}
