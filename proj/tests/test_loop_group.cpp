#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "rtcover/covering_tree.hpp"
#include "rtcover/loop_group.hpp"
#include "rtcover/sampling.hpp"

using namespace rtcover;
using fixtures::q;

namespace {

struct Theta {
  MetricGraph g = fixtures::theta();
  GeneratorSet gens = generators(g);
  RhoPath rho(const char* s) const { return reduce(g, parse_path(g, s)); }
  TreePoint pt(const char* s) const { return TreePoint(g, rho(s)); }
  Word w(const char* s) const { return parse_word(gens, s); }
  std::string show(const RhoPath& c) const { return format_path(g, c); }
};

}  // namespace

TEST_CASE("free group words") {
  Word x = Word::generator(0), y = Word::generator(1);
  CHECK((x * x.inverse()).empty());
  CHECK((x * y * y.inverse() * x).size() == 2);
  CHECK(x.power(3).size() == 3);
  CHECK(x.power(-2) == x.inverse() * x.inverse());
  CHECK(cyclically_reduce(y * x * y.inverse()) == x);
  CHECK(reduced_words(2, 0).size() == 1);
  CHECK(reduced_words(2, 2).size() == 1 + 4 + 12);
  CHECK(reduced_words(2, 3)[1] == x);
  CHECK(reduced_words(2, 3)[2] == x.inverse());
}

TEST_CASE("generator examples") {
  Theta t;
  CHECK(t.gens.rank() == 2);
  CHECK(t.gens.in_tree(0));
  CHECK(t.gens.at(0).name == "g_b");
  CHECK(t.show(t.gens.at(0).loop) == "+b -a");
  CHECK(t.show(t.gens.at(1).loop) == "+c -a");

  auto circle = parse_graph("v o\ne l o o 5/2\n");
  CHECK(generators(circle).rank() == 1);
  auto tree = parse_graph("v a\nv b\nv c\ne x a b 1\ne y b c 2\n");
  CHECK(generators(tree).rank() == 0);

  std::mt19937_64 rng(2);
  for (int i = 0; i < 10; ++i) {
    auto g = random_graph(rng, 2 + i % 4, i % 5);
    auto gens = generators(g);
    CHECK(gens.rank() == g.edge_count() - g.vertex_count() + 1);
    for (const auto& gen : gens.all()) {
      CHECK(!gen.loop.is_constant());
      CHECK(gen.loop.start() == g.base_point());
      CHECK(gen.loop.end(g) == g.base_point());
    }
  }
}

TEST_CASE("word syntax") {
  Theta t;
  CHECK(format_word(t.gens, t.w("g_b g_c^-1")) == "g_b g_c^-1");
  CHECK(t.w("b c^-1") == t.w("g_b g_c^-1"));
  CHECK(t.w("g_b^3") == Word::generator(0).power(3));
  CHECK(format_word(t.gens, Word()) == "1");
  CHECK(t.w("g_b g_b^-1").empty());
  CHECK_THROWS(t.w("g_a"));
  CHECK_THROWS(t.w("g_q"));
  CHECK_THROWS(t.w("g_b^0"));
}

TEST_CASE("evaluate examples") {
  Theta t;
  CHECK(evaluate_word(t.g, t.gens, Word()).is_constant());
  CHECK(t.show(evaluate_word(t.g, t.gens, t.w("g_b"))) == "+b -a");
  RhoPath bc = evaluate_word(t.g, t.gens, t.w("g_b g_c^-1"));
  CHECK(t.show(bc) == "+b -c");
  CHECK(bc.length() == 2);
  CHECK_THROWS(evaluate_word(t.g, t.gens, Word::generator(5)));
}

TEST_CASE("action examples") {
  Theta t;
  TreePoint p = t.pt("+a -c +b");
  CHECK(act(t.g, t.gens, Word(), p) == p);
  CHECK(act(t.g, t.gens, t.w("g_b"), TreePoint::root(t.g)) == t.pt("+b -a"));
  CHECK(act(t.g, t.gens, t.w("g_b"), t.pt("+a")) == t.pt("+b"));
}

TEST_CASE("rebase examples") {
  Theta t;
  MetricGraph at_v = t.g.with_base(*t.g.find_vertex("v"));
  RhoPath kbar = t.rho("-a");
  RhoPath k0(t.g.base_point());
  TreePoint a = t.pt("+a"), b = t.pt("+b");
  CHECK(rebase(t.g, k0, a) == a.path());
  CHECK(rebase(t.g, kbar, a).is_constant());
  CHECK(rebase(t.g, kbar, a).start() == t.g.parse_point("v"));
  CHECK(tree_distance(rebase(t.g, kbar, a), rebase(t.g, kbar, b)) == 2);
  CHECK_THROWS(rebase(t.g, t.rho("+a"), a));

  CHECK(conjugate_rebase(t.g, kbar, RhoPath(t.g.base_point())).is_constant());
  RhoPath l = conjugate_rebase(t.g, kbar, t.gens.at(0).loop);
  CHECK(t.show(l) == "-a +b");
  CHECK(l.start() == at_v.base_point());
  CHECK(l.end(t.g) == at_v.base_point());
  CHECK(l.length() == 2);
  CHECK_THROWS(conjugate_rebase(t.g, kbar, t.rho("+a")));
}

TEST_CASE("project homotopy class examples") {
  Theta t;
  CHECK(project_homotopy_class(t.g, t.gens, parse_path(t.g, "+a -a")).empty());
  CHECK(project_homotopy_class(t.g, t.gens, parse_path(t.g, "+b -a")) == t.w("g_b"));
  CHECK(project_homotopy_class(t.g, t.gens, parse_path(t.g, "+b -a +c -a")) == t.w("g_b g_c"));
  CHECK_THROWS(project_homotopy_class(t.g, t.gens, parse_path(t.g, "+b")));
}

TEST_CASE("lollipop: shortest nontrivial loop at each vertex") {
  auto g = fixtures::lollipop();
  auto a = *g.find_vertex("a"), b = *g.find_vertex("b");
  CHECK(shortest_nontrivial_loop(g, a) == Rational(1));
  // Segment, circle, segment back.
  CHECK(shortest_nontrivial_loop(g, b) == Rational(3));
  auto tree = parse_graph("v a\nv b\ne x a b 1\n");
  CHECK_FALSE(shortest_nontrivial_loop(tree, 0).has_value());
}

namespace {

std::vector<MetricGraph> suite() {
  std::mt19937_64 rng(31);
  std::vector<MetricGraph> out{fixtures::theta(), fixtures::rose2(), fixtures::lollipop()};
  out.push_back(random_graph(rng, 3, 3));
  out.push_back(random_graph(rng, 4, 2));
  return out;
}

}  // namespace

TEST_CASE("evaluation is an injective homomorphism") {
  std::mt19937_64 rng(41);
  for (const auto& g : suite()) {
    auto gens = generators(g);
    std::set<RhoPath> images;
    auto words = reduced_words(gens.rank(), gens.rank() > 2 ? 2 : 3);
    for (const auto& w : words) images.insert(evaluate_word(g, gens, w));
    CHECK(images.size() == words.size());
    for (int i = 0; i < 100 && gens.rank() > 0; ++i) {
      Word u = random_word(gens.rank(), i % 5, rng), v = random_word(gens.rank(), i % 4, rng);
      CHECK(evaluate_word(g, gens, u * v) ==
            concat_cancelled(g, evaluate_word(g, gens, u), evaluate_word(g, gens, v)));
      CHECK(project_homotopy_class(g, gens, evaluate_word(g, gens, u).as_edge_path()) == u);
    }
  }
}

TEST_CASE("projection is a homomorphism on concatenated loops") {
  std::mt19937_64 rng(43);
  for (const auto& g : suite()) {
    auto gens = generators(g);
    // Loop for u with a null-homotopic detour appended, so it is not reduced.
    auto noisy_loop = [&](const Word& u, std::size_t steps) {
      EdgePath c = random_edge_path(g, rng, g.base_point(), steps);
      EdgePath detour = concat(g, c, inverse(g, reduce(g, c)).as_edge_path());
      return concat(g, evaluate_word(g, gens, u).as_edge_path(), detour);
    };
    for (int i = 0; i < 100; ++i) {
      Word u = gens.rank() ? random_word(gens.rank(), i % 4, rng) : Word();
      Word v = gens.rank() ? random_word(gens.rank(), i % 3, rng) : Word();
      EdgePath l1 = noisy_loop(u, 1 + i % 6), l2 = noisy_loop(v, 1 + i % 5);
      CHECK(project_homotopy_class(g, gens, l1) == u);
      CHECK(project_homotopy_class(g, gens, concat(g, l1, l2)) ==
            project_homotopy_class(g, gens, l1) * project_homotopy_class(g, gens, l2));
    }
  }
}

TEST_CASE("free isometric action, orbit equals fiber") {
  std::mt19937_64 rng(47);
  for (const auto& g : {fixtures::theta(), fixtures::rose2()}) {
    auto gens = generators(g);
    std::vector<TreePoint> pts{TreePoint::root(g)};
    for (int i = 0; i < 10; ++i) pts.push_back(random_tree_point(g, rng, 1 + i % 5));
    for (const auto& w : reduced_words(gens.rank(), 3)) {
      if (w.empty()) continue;
      std::vector<TreePoint> moved;
      for (const auto& p : pts) moved.push_back(act(g, gens, w, p));
      for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(moved[i] != pts[i]);
        CHECK(endpoint(g, moved[i]) == endpoint(g, pts[i]));
        for (std::size_t j = 0; j < pts.size(); ++j)
          CHECK(tree_distance(moved[i], moved[j]) == tree_distance(pts[i], pts[j]));
      }
    }
    const Rational radius = 4;
    std::set<TreePoint> orbit;
    for (const auto& w : reduced_words(gens.rank(), 4)) {
      RhoPath loop = evaluate_word(g, gens, w);
      if (loop.length() <= radius) orbit.insert(TreePoint(g, loop));
    }
    auto f = fiber(g, g.base_point(), radius, false);
    CHECK(orbit == std::set<TreePoint>(f.points.begin(), f.points.end()));
  }
}

TEST_CASE("rebase preserves distances and endpoints") {
  std::mt19937_64 rng(53);
  for (const auto& g : suite()) {
    std::vector<TreePoint> pts;
    for (int i = 0; i < 15; ++i) pts.push_back(random_tree_point(g, rng, 1 + i % 5));
    for (int trial = 0; trial < 5; ++trial) {
      // k runs from a random point back to the base.
      RhoPath k = inverse(g, reduce(g, random_edge_path(g, rng, g.base_point(), 1 + trial)));
      for (const auto& a : pts) {
        RhoPath ra = rebase(g, k, a);
        CHECK(ra.start() == k.start());
        CHECK(ra.end(g) == endpoint(g, a));
        for (const auto& b : pts) CHECK(tree_distance(ra, rebase(g, k, b)) == tree_distance(a, b));
      }
    }
  }
}
