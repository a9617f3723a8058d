#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "rtcover/loop_group.hpp"
#include "rtcover/sampling.hpp"

using namespace rtcover;
using fixtures::q;

namespace {

EpsChain chain(const PointCloud& c, const char* eps, const char* text) { return parse_chain(c, q(eps), text); }

// First Betti number over Q of the basepoint component of the triangle
// complex: (E - V + 1) - rank of the triangle boundary matrix.
std::size_t betti1(const PointCloud& cloud, const Rational& eps) {
  EpsGraph eg = eps_graph(cloud, eps);
  std::vector<int> comp(cloud.size(), -1);
  std::vector<std::size_t> stack{cloud.base()};
  comp[cloud.base()] = 0;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : eg.adjacency[v])
      if (comp[w] < 0) {
        comp[w] = 0;
        stack.push_back(w);
      }
  }
  std::size_t V = 0;
  for (int c : comp) V += c == 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : eg.edges)
    if (comp[e.first] == 0) edges.push_back(e);
  auto index = [&](std::size_t a, std::size_t b) {
    return static_cast<std::size_t>(std::find(edges.begin(), edges.end(), std::make_pair(a, b)) - edges.begin());
  };
  std::vector<std::vector<Rational>> rows;
  for (const auto& [i, j, k] : eg.triangles) {
    if (comp[i] != 0) continue;
    std::vector<Rational> row(edges.size(), Rational(0));
    row[index(i, j)] += 1;
    row[index(j, k)] += 1;
    row[index(i, k)] -= 1;
    rows.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < edges.size() && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < edges.size(); ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return edges.size() + 1 - V - rank;
}

PointCloud random_cloud(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> coords;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("r" + std::to_string(i));
    coords.push_back({Rational(static_cast<int>(rng() % 9)), Rational(static_cast<int>(rng() % 9))});
  }
  // Jitter duplicates apart.
  for (std::size_t i = 0; i < n; ++i) coords[i][0] += Rational(static_cast<int>(i), 100);
  return PointCloud::from_coordinates(labels, coords, 0);
}

}  // namespace

TEST_CASE("cloud parsing") {
  auto sq = fixtures::square();
  CHECK(sq.size() == 4);
  CHECK(sq.label(sq.base()) == "p0");
  CHECK(sq.squared_distance(0, 2) == 2);
  auto c = fixtures::c12();
  CHECK(c.size() == 12);
  CHECK(c.squared_distance(0, 6) == 36);

  auto b = parse_cloud("label,x\n# c\nm,0\nn,1/2\nbase n\n");
  CHECK(b.label(b.base()) == "n");
  CHECK(b.squared_distance(0, 1) == q("1/4"));

  CHECK_THROWS_AS(parse_cloud("label,x\na,0,1\n"), ParseError);
  CHECK_THROWS_AS(parse_cloud("label,x\na,zz\n"), ParseError);
  CHECK_THROWS_AS(parse_cloud("label,x\na,0\na,1\n"), ParseError);
  CHECK_THROWS_AS(parse_cloud("label,x\na,0\nbase q\n"), ParseError);
  CHECK_THROWS_AS(parse_cloud("label,label,distance\na,b,1\nb,c,1\na,c,3\n"), ParseError);
  CHECK_THROWS_AS(parse_cloud("label,label,distance\na,b,1\nb,c,1\n"), ParseError);
  CHECK_THROWS_AS(parse_cloud("label,label,distance\na,b,1\nb,a,2\n"), ParseError);
  CHECK_THROWS_AS(parse_cloud("label,label,distance\na,b,0\n"), ParseError);
  try {
    parse_cloud("label,x\na,0\nb,1\nc,x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& ex) {
    CHECK(ex.line() == 4);
  }
}

TEST_CASE("eps graph examples") {
  auto sq = fixtures::square();
  auto g1 = eps_graph(sq, q("6/5"));
  CHECK(g1.edges.size() == 4);
  CHECK(g1.triangles.empty());
  CHECK(eps_graph(sq, q("1/2")).edges.empty());
  auto g2 = eps_graph(sq, q("3/2"));
  CHECK(g2.edges.size() == 6);
  CHECK(g2.triangles.size() == 4);
  // Strictness: at eps = 1 the sides are excluded and the scale is flagged.
  auto g3 = eps_graph(sq, 1);
  CHECK(g3.edges.empty());
  CHECK(g3.boundary);
  CHECK_FALSE(g1.boundary);
  CHECK_THROWS(eps_graph(sq, 0));
}

TEST_CASE("chains are strict") {
  auto sq = fixtures::square();
  CHECK_NOTHROW(chain(sq, "6/5", "p0 p1"));
  CHECK_THROWS(chain(sq, "1", "p0 p1"));
  CHECK_THROWS(chain(sq, "6/5", "p0 p2"));
  CHECK_THROWS(chain(sq, "6/5", "p0 zz"));
  CHECK_THROWS(chain(sq, "6/5", ""));
}

TEST_CASE("delta group examples") {
  auto sq = fixtures::square();
  auto p1 = delta_group(sq, q("6/5"));
  CHECK(p1.is_free());
  CHECK(p1.rank() == 1);
  auto p2 = delta_group(sq, q("3/2"));
  CHECK(p2.is_free());
  CHECK(p2.rank() == 0);
  CHECK(p2.relations().size() == 4);
  auto two = parse_cloud("label,x\na,0\nb,1\n");
  for (const char* eps : {"1/2", "2", "10"}) CHECK(delta_group(two, q(eps)).rank() == 0);
  auto tiny = delta_group(sq, q("1/2"));
  CHECK(tiny.component().size() == 1);
  CHECK(tiny.rank() == 0);
}

TEST_CASE("free presentations have the rational Betti number as rank") {
  std::mt19937_64 rng(89);
  int free_seen = 0;
  for (int i = 0; i < 40; ++i) {
    PointCloud cloud = random_cloud(rng, 6 + i % 6);
    for (const char* eps : {"3/2", "2", "5/2", "4"}) {
      EpsPresentation p(cloud, q(eps));
      // Relations hold: every triangle word dies after simplification.
      for (const auto& r : p.relations()) {
        if (p.is_free()) CHECK(p.simplify(r).empty());
      }
      if (!p.is_free()) continue;
      ++free_seen;
      CHECK(p.rank() == betti1(cloud, q(eps)));
    }
  }
  CHECK(free_seen > 50);
}

TEST_CASE("homotopy examples") {
  auto sq = fixtures::square();
  auto cyc = chain(sq, "6/5", "p0 p1 p2 p3 p0"), k = chain(sq, "6/5", "p0");
  auto no = eps_homotopic(sq, cyc, k, 1000);
  CHECK(no.verdict == Verdict::no);
  CHECK(no.method == "presentation");

  auto dup = chain(sq, "6/5", "p0 p1 p1 p2 p3 p0");
  CHECK(eps_homotopic(sq, cyc, dup, 1000).verdict == Verdict::yes);
  auto direct = search_eps_homotopy(sq, cyc, dup, 1000);
  CHECK(direct.verdict == Verdict::yes);
  CHECK(direct.moves.size() == 2);

  auto big_cyc = chain(sq, "3/2", "p0 p1 p2 p3 p0"), big_k = chain(sq, "3/2", "p0");
  CHECK(eps_homotopic(sq, big_cyc, big_k, 100000).verdict == Verdict::yes);
  auto found = search_eps_homotopy(sq, big_cyc, big_k, 100000);
  REQUIRE(found.verdict == Verdict::yes);
  CHECK(found.moves.front() == big_cyc.points());
  CHECK(found.moves.back() == big_k.points());
  for (std::size_t i = 1; i < found.moves.size(); ++i)
    CHECK(is_single_move(sq, q("3/2"), found.moves[i - 1], found.moves[i]));

  // The search never says no, even when the loops are not homotopic.
  auto hopeless = search_eps_homotopy(sq, cyc, k, 50);
  CHECK(hopeless.verdict == Verdict::inconclusive);
  CHECK(hopeless.explored <= 50);

  CHECK_THROWS(eps_homotopic(sq, chain(sq, "6/5", "p0 p1"), k, 10));
  CHECK_THROWS(eps_homotopic(sq, cyc, big_k, 10));
}

TEST_CASE("search agrees with the presentation and its moves are sound") {
  auto c = fixtures::c12();
  Rational eps = q("5/2");
  std::vector<EpsChain> loops{parse_chain(c, eps, "q0"), parse_chain(c, eps, "q0 q1 q0"),
                              parse_chain(c, eps, "q0 q2 q1 q0"), parse_chain(c, eps, "q0 q1 q2 q0"),
                              parse_chain(c, eps, "q0 q11 q0")};
  EpsPresentation pres(c, eps);
  REQUIRE(pres.is_free());
  for (const auto& a : loops)
    for (const auto& b : loops) {
      auto exact = eps_homotopic(c, a, b, 1000);
      CHECK(exact.verdict != Verdict::inconclusive);
      auto s = search_eps_homotopy(c, a, b, 2000);
      CHECK(s.verdict != Verdict::no);
      if (s.verdict == Verdict::yes) CHECK(exact.verdict == Verdict::yes);
      for (std::size_t i = 1; i < s.moves.size(); ++i) CHECK(is_single_move(c, eps, s.moves[i - 1], s.moves[i]));
      if (exact.verdict == Verdict::no)
        CHECK(pres.simplify(pres.chain_word(a.points())) != pres.simplify(pres.chain_word(b.points())));
    }
  // The loop around the circle is essential.
  auto around = parse_chain(c, q("3/2"), "q0 q1 q2 q3 q4 q5 q6 q7 q8 q9 q10 q11 q0");
  CHECK(eps_homotopic(c, around, parse_chain(c, q("3/2"), "q0"), 1000).verdict == Verdict::no);
}

TEST_CASE("bonding map examples") {
  auto sq = fixtures::square();
  auto up = bonding_map(sq, q("6/5"), q("3/2"));
  REQUIRE(up.images.size() == 1);
  REQUIRE(up.simplified_images);
  CHECK(up.simplified_images->at(0).empty());

  auto same = bonding_map(sq, q("6/5"), q("6/5"));
  for (std::size_t i = 0; i < same.images.size(); ++i) CHECK(same.images[i] == Word::generator(i));

  auto from_tiny = bonding_map(sq, q("1/2"), q("6/5"));
  CHECK(from_tiny.images.empty());
  CHECK_THROWS(bonding_map(sq, q("3/2"), q("6/5")));
}

TEST_CASE("bonding maps are functorial") {
  std::mt19937_64 rng(97);
  std::vector<PointCloud> clouds{fixtures::square(), fixtures::c12()};
  for (int i = 0; i < 6; ++i) clouds.push_back(random_cloud(rng, 8));
  const std::vector<Rational> scales{q("5"), q("3"), q("5/2"), q("2"), q("3/2"), q("6/5")};
  std::size_t checked = 0;
  for (const auto& cloud : clouds)
    for (std::size_t i = 0; i < scales.size(); ++i)
      for (std::size_t j = i + 1; j < scales.size(); ++j)
        for (std::size_t k = j + 1; k < scales.size(); ++k) {
          EpsPresentation a(cloud, scales[i]), b(cloud, scales[j]), c(cloud, scales[k]);
          auto cb = bonding_map(cloud, c, b), ba = bonding_map(cloud, b, a), ca = bonding_map(cloud, c, a);
          CHECK(functoriality_mismatches(cb, ba, ca) == 0);
          checked += ca.images.size();
        }
  CHECK(checked > 100);
}

TEST_CASE("stabilization examples") {
  auto c = fixtures::c12();
  auto r1 = detect_stabilization(c, {q("9/2"), q("3/2")});
  CHECK(r1.scales[0].rank == 0);
  CHECK(r1.scales[1].rank == 1);
  CHECK_FALSE(r1.pairs[0].isomorphism);
  CHECK_FALSE(r1.stable_rank);

  auto r2 = detect_stabilization(c, {q("3/2"), q("5/4")});
  CHECK(r2.pairs[0].isomorphism);
  CHECK(r2.stable_rank == std::optional<std::size_t>(1));

  auto sq = fixtures::square();
  auto r3 = detect_stabilization(sq, {q("4"), q("3")});
  CHECK(r3.stable_rank == std::optional<std::size_t>(0));

  CHECK_THROWS(detect_stabilization(sq, {q("1"), q("2")}));
  CHECK_THROWS(detect_stabilization(sq, {q("1"), q("0")}));
}

TEST_CASE("sampled graphs recover the loop group rank") {
  struct Case {
    MetricGraph g;
    const char* eps;
  };
  for (const auto& [g, eps] : {Case{fixtures::theta(), "1/2"}, Case{fixtures::rose2(), "1/4"},
                               Case{fixtures::lollipop(), "1/4"}}) {
    PointCloud cloud = sample_graph(g, q("1/8"));
    EpsPresentation p(cloud, q(eps));
    CHECK(p.is_free());
    CHECK(p.rank() == generators(g).rank());
  }
  PointCloud theta = sample_graph(fixtures::theta(), q("1/8"));
  CHECK(theta.size() == 2 + 3 * 7);
  CHECK(theta.find("a@1/2"));
}
