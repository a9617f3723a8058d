#include "rtcover/epsilon_cover.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rtcover {

// ---------------------------------------------------------------------------
// Point clouds

PointCloud PointCloud::from_coordinates(std::vector<std::string> labels,
                                        const std::vector<std::vector<Rational>>& coords, std::size_t base) {
  const std::size_t n = labels.size();
  if (coords.size() != n) throw std::invalid_argument("coordinate count does not match labels");
  if (n == 0) throw std::invalid_argument("empty point cloud");
  if (base >= n) throw std::invalid_argument("basepoint out of range");
  std::vector<std::vector<Rational>> squared(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (coords[i].size() != coords[0].size()) throw std::invalid_argument("ragged coordinates");
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational s(0);
      for (std::size_t k = 0; k < coords[i].size(); ++k) {
        Rational d = coords[i][k] - coords[j][k];
        s += d * d;
      }
      squared[i][j] = squared[j][i] = s;
    }
  }
  return PointCloud(std::move(labels), std::move(squared), base);
}

PointCloud PointCloud::from_distances(std::vector<std::string> labels, std::vector<std::vector<Rational>> d,
                                      std::size_t base) {
  const std::size_t n = labels.size();
  if (n == 0) throw std::invalid_argument("empty point cloud");
  if (base >= n) throw std::invalid_argument("basepoint out of range");
  if (d.size() != n) throw std::invalid_argument("distance matrix size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i].size() != n) throw std::invalid_argument("distance matrix size mismatch");
    if (d[i][i] != 0) throw std::invalid_argument("nonzero self-distance at " + labels[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i][j] != d[j][i]) throw std::invalid_argument("asymmetric distance " + labels[i] + "," + labels[j]);
      if (i != j && d[i][j] <= 0) throw std::invalid_argument("non-positive distance " + labels[i] + "," + labels[j]);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (d[i][k] > d[i][j] + d[j][k])
          throw std::invalid_argument("triangle inequality fails at " + labels[i] + "," + labels[j] + "," + labels[k]);
  for (auto& row : d)
    for (auto& x : row) x = x * x;
  return PointCloud(std::move(labels), std::move(d), base);
}

std::optional<std::size_t> PointCloud::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

Rational PointCloud::squared_diameter() const {
  Rational best(0);
  for (const auto& row : squared_)
    for (const auto& x : row) best = std::max(best, x);
  return best;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    auto b = cell.find_first_not_of(" \t\r");
    auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

PointCloud parse_cloud(std::string_view text) {
  std::optional<std::vector<std::string>> header;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  std::optional<std::pair<std::string, std::size_t>> base;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream words(line);
    std::string first;
    words >> first;
    if (first == "base") {
      std::string label, extra;
      if (!(words >> label) || (words >> extra)) throw ParseError(line_no, "expected `base <label>`");
      base.emplace(label, line_no);
      continue;
    }
    auto cells = split_csv(line);
    if (!header) {
      header = cells;
      continue;
    }
    if (cells.size() != header->size()) throw ParseError(line_no, "row has the wrong number of fields");
    rows.emplace_back(line_no, std::move(cells));
  }
  if (!header) throw ParseError(0, "cloud has no header");
  if (header->empty() || (*header)[0] != "label") throw ParseError(0, "header must start with `label`");

  std::vector<std::string> labels;
  auto index_of = [&](const std::string& label) {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return i;
    labels.push_back(label);
    return labels.size() - 1;
  };
  auto rational = [](std::size_t line, const std::string& s) {
    try {
      return parse_rational(s);
    } catch (const std::invalid_argument& ex) {
      throw ParseError(line, ex.what());
    }
  };
  auto resolve_base = [&]() -> std::size_t {
    if (!base) return 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == base->first) return i;
    throw ParseError(base->second, "unknown base label " + base->first);
  };

  try {
    if (*header == std::vector<std::string>{"label", "label", "distance"}) {
      std::map<std::pair<std::size_t, std::size_t>, std::pair<Rational, std::size_t>> given;
      for (const auto& [line, cells] : rows) {
        std::size_t a = index_of(cells[0]), b = index_of(cells[1]);
        Rational d = rational(line, cells[2]);
        if (a == b) {
          if (d != 0) throw ParseError(line, "nonzero self-distance");
          continue;
        }
        auto key = std::minmax(a, b);
        if (auto it = given.find(key); it != given.end() && it->second.first != d)
          throw ParseError(line, "conflicting distances for " + cells[0] + "," + cells[1]);
        given.emplace(key, std::make_pair(d, line));
      }
      const std::size_t n = labels.size();
      std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n, Rational(0)));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          auto it = given.find({i, j});
          if (it == given.end()) throw ParseError(0, "missing distance " + labels[i] + "," + labels[j]);
          dist[i][j] = dist[j][i] = it->second.first;
        }
      return PointCloud::from_distances(labels, std::move(dist), resolve_base());
    }
    std::vector<std::vector<Rational>> coords;
    for (const auto& [line, cells] : rows) {
      if (index_of(cells[0]) != coords.size()) throw ParseError(line, "duplicate label " + cells[0]);
      std::vector<Rational> point;
      for (std::size_t k = 1; k < cells.size(); ++k) point.push_back(rational(line, cells[k]));
      coords.push_back(std::move(point));
    }
    return PointCloud::from_coordinates(labels, coords, resolve_base());
  } catch (const std::invalid_argument& ex) {
    throw ParseError(0, ex.what());
  }
}

PointCloud load_cloud(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open cloud file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_cloud(ss.str());
}

PointCloud sample_graph(const MetricGraph& g, const Rational& mesh) {
  if (mesh <= 0) throw std::invalid_argument("mesh must be positive");
  std::vector<GraphPoint> points;
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    points.push_back(GraphPoint::vertex(v));
    labels.push_back(g.vertex_id(v));
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    for (Rational t = mesh; t < g.edge(e).length; t += mesh) {
      points.push_back(g.point_on_edge(e, t));
      labels.push_back(g.format_point(points.back()));
    }
  const std::size_t n = points.size();
  std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) dist[i][j] = dist[j][i] = graph_distance(g, points[i], points[j]);
  return PointCloud::from_distances(std::move(labels), std::move(dist), g.base_vertex());
}

// ---------------------------------------------------------------------------
// Scale-eps graphs and chains

EpsGraph eps_graph(const PointCloud& cloud, const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("scale must be positive");
  EpsGraph out;
  out.eps = eps;
  const std::size_t n = cloud.size();
  out.adjacency.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (cloud.at_scale(i, j, eps)) out.boundary = true;
      if (cloud.within(i, j, eps)) {
        out.edges.emplace_back(i, j);
        out.adjacency[i].push_back(j);
        out.adjacency[j].push_back(i);
      }
    }
  for (auto& row : out.adjacency) std::sort(row.begin(), row.end());
  for (const auto& [i, j] : out.edges)
    for (std::size_t k : out.adjacency[j])
      if (k > j && cloud.within(i, k, eps)) out.triangles.push_back({i, j, k});
  return out;
}

EpsChain::EpsChain(const PointCloud& cloud, Rational eps, std::vector<std::size_t> points)
    : points_(std::move(points)), eps_(std::move(eps)) {
  if (points_.empty()) throw std::invalid_argument("empty chain");
  for (std::size_t p : points_)
    if (p >= cloud.size()) throw std::invalid_argument("chain point out of range");
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (!cloud.within(points_[i - 1], points_[i], eps_))
      throw std::invalid_argument("chain step " + cloud.label(points_[i - 1]) + " -> " + cloud.label(points_[i]) +
                                  " is not below the scale");
}

EpsChain parse_chain(const PointCloud& cloud, const Rational& eps, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::size_t> points;
  for (std::string tok; in >> tok;) {
    auto i = cloud.find(tok);
    if (!i) throw std::invalid_argument("unknown point label `" + tok + "`");
    points.push_back(*i);
  }
  return EpsChain(cloud, eps, std::move(points));
}

// ---------------------------------------------------------------------------
// Presentations

EpsPresentation::EpsPresentation(const PointCloud& cloud, const Rational& eps) : eps_(eps), base_(cloud.base()) {
  EpsGraph graph = eps_graph(cloud, eps);
  boundary_ = graph.boundary;
  const std::size_t n = cloud.size();
  parent_.assign(n, none);
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> queue{base_};
  seen[base_] = true;
  std::set<std::pair<std::size_t, std::size_t>> tree;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    std::size_t v = queue[i];
    for (std::size_t w : graph.adjacency[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      parent_[w] = v;
      tree.insert(std::minmax(v, w));
      queue.push_back(w);
    }
  }
  component_ = queue;
  std::sort(component_.begin(), component_.end());

  for (const auto& edge : graph.edges) {
    if (!seen[edge.first] || tree.count(edge)) continue;
    generator_index_.emplace(edge, generators_.size());
    generators_.push_back(edge);
  }
  for (const auto& [i, j, k] : graph.triangles) {
    if (!seen[i]) continue;
    Word r = chain_word({i, j, k, i});
    r = cyclically_reduce(r);
    if (!r.empty()) relations_.push_back(std::move(r));
  }
  simplify_presentation();
}

std::optional<Letter> EpsPresentation::edge_letter(std::size_t p, std::size_t q) const {
  if (p == q) return std::nullopt;
  auto it = generator_index_.find(std::minmax(p, q));
  if (it == generator_index_.end()) {
    if (parent_.at(p) == q || parent_.at(q) == p) return std::nullopt;
    throw std::invalid_argument("chain step leaves the eps-graph of the basepoint component");
  }
  return make_letter(it->second, p > q);
}

Word EpsPresentation::chain_word(const std::vector<std::size_t>& chain) const {
  std::vector<Letter> letters;
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (auto l = edge_letter(chain[i - 1], chain[i])) letters.push_back(*l);
  return Word(std::move(letters));
}

std::vector<std::size_t> EpsPresentation::tree_path(std::size_t p) const {
  std::vector<std::size_t> path;
  for (std::size_t v = p; v != none; v = parent_.at(v)) path.push_back(v);
  if (path.back() != base_) throw std::invalid_argument("point outside the basepoint component");
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<std::size_t> EpsPresentation::generator_loop(std::size_t i) const {
  auto [a, b] = generators_.at(i);
  std::vector<std::size_t> loop = tree_path(a);
  std::vector<std::size_t> back = tree_path(b);
  loop.insert(loop.end(), back.rbegin(), back.rend());
  return loop;
}

namespace {

Word substitute(const Word& w, std::size_t gen, const Word& replacement) {
  std::vector<Letter> letters;
  Word inverse = replacement.inverse();
  for (Letter l : w.letters()) {
    if (generator_of(l) != gen) {
      letters.push_back(l);
      continue;
    }
    const Word& piece = l > 0 ? replacement : inverse;
    letters.insert(letters.end(), piece.letters().begin(), piece.letters().end());
  }
  return Word(std::move(letters));
}

}  // namespace

void EpsPresentation::simplify_presentation() {
  const std::size_t n = generators_.size();
  std::vector<bool> alive(n, true);
  std::vector<Word> rels = relations_;
  expressions_.clear();
  for (std::size_t i = 0; i < n; ++i) expressions_.push_back(Word::generator(i));

  for (;;) {
    // Shortest relator with a generator occurring exactly once; ties by index.
    std::size_t best_rel = none, best_gen = none;
    for (std::size_t r = 0; r < rels.size(); ++r) {
      if (best_rel != none && rels[r].size() >= rels[best_rel].size()) continue;
      std::map<std::size_t, std::size_t> count;
      for (Letter l : rels[r].letters()) ++count[generator_of(l)];
      for (const auto& [gen, c] : count)
        if (c == 1) {
          best_rel = r;
          best_gen = gen;
          break;
        }
    }
    if (best_rel == none) break;

    const auto& letters = rels[best_rel].letters();
    std::size_t pos = 0;
    while (generator_of(letters[pos]) != best_gen) ++pos;
    // r ~ l · rest, so l = rest⁻¹.
    std::vector<Letter> rest(letters.begin() + static_cast<std::ptrdiff_t>(pos) + 1, letters.end());
    rest.insert(rest.end(), letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(pos));
    Word value = Word(std::move(rest)).inverse();
    if (letters[pos] < 0) value = value.inverse();

    rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(best_rel));
    std::vector<Word> next;
    for (const auto& r : rels) {
      Word s = cyclically_reduce(substitute(r, best_gen, value));
      if (!s.empty()) next.push_back(std::move(s));
    }
    rels = std::move(next);
    for (auto& e : expressions_) e = substitute(e, best_gen, value);
    alive[best_gen] = false;
  }

  kept_.clear();
  std::vector<std::size_t> position(n, none);
  for (std::size_t i = 0; i < n; ++i)
    if (alive[i]) {
      position[i] = kept_.size();
      kept_.push_back(i);
    }
  auto renumber = [&](const Word& w) {
    std::vector<Letter> letters;
    for (Letter l : w.letters()) letters.push_back(make_letter(position[generator_of(l)], l < 0));
    return Word(std::move(letters));
  };
  for (auto& e : expressions_) e = renumber(e);
  remaining_.clear();
  for (const auto& r : rels) remaining_.push_back(renumber(r));
}

Word EpsPresentation::simplify(const Word& w) const {
  std::vector<Letter> letters;
  for (Letter l : w.letters()) {
    Word piece = l > 0 ? expressions_.at(generator_of(l)) : expressions_.at(generator_of(l)).inverse();
    letters.insert(letters.end(), piece.letters().begin(), piece.letters().end());
  }
  return Word(std::move(letters));
}

// ---------------------------------------------------------------------------
// Homotopy of chains

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

bool valid_chain(const PointCloud& cloud, const Rational& eps, const std::vector<std::size_t>& c) {
  if (c.empty()) return false;
  for (std::size_t i = 1; i < c.size(); ++i)
    if (!cloud.within(c[i - 1], c[i], eps)) return false;
  return true;
}

std::vector<std::vector<std::size_t>> neighbours(const PointCloud& cloud, const Rational& eps,
                                                 const std::vector<std::size_t>& c, std::size_t max_len) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t first = c.front(), last = c.back();
  if (c.size() > 1) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::vector<std::size_t> next = c;
      next.erase(next.begin() + static_cast<std::ptrdiff_t>(i));
      if (next.front() != first || next.back() != last) continue;
      if (valid_chain(cloud, eps, next)) out.push_back(std::move(next));
    }
  }
  if (c.size() < max_len) {
    for (std::size_t i = 0; i <= c.size(); ++i)
      for (std::size_t p = 0; p < cloud.size(); ++p) {
        if (i == 0 && p != first) continue;
        if (i == c.size() && p != last) continue;
        if (i > 0 && !cloud.within(c[i - 1], p, eps)) continue;
        if (i < c.size() && !cloud.within(p, c[i], eps)) continue;
        std::vector<std::size_t> next = c;
        next.insert(next.begin() + static_cast<std::ptrdiff_t>(i), p);
        out.push_back(std::move(next));
      }
  }
  return out;
}

}  // namespace

bool is_single_move(const PointCloud& cloud, const Rational& eps, const std::vector<std::size_t>& prev,
                    const std::vector<std::size_t>& next) {
  if (!valid_chain(cloud, eps, prev) || !valid_chain(cloud, eps, next)) return false;
  if (prev.front() != next.front() || prev.back() != next.back()) return false;
  const auto& longer = prev.size() > next.size() ? prev : next;
  const auto& shorter = prev.size() > next.size() ? next : prev;
  if (longer.size() != shorter.size() + 1) return false;
  for (std::size_t i = 0; i < longer.size(); ++i) {
    std::vector<std::size_t> cut = longer;
    cut.erase(cut.begin() + static_cast<std::ptrdiff_t>(i));
    if (cut == shorter) return true;
  }
  return false;
}

HomotopyResult search_eps_homotopy(const PointCloud& cloud, const EpsChain& a, const EpsChain& b, std::size_t budget) {
  if (a.eps() != b.eps()) throw std::invalid_argument("chains at different scales");
  if (a.points().front() != b.points().front() || a.points().back() != b.points().back())
    throw std::invalid_argument("chains with different endpoints");
  const Rational& eps = a.eps();
  const std::size_t max_len = std::max(a.points().size(), b.points().size()) + 2;
  using Chain = std::vector<std::size_t>;

  HomotopyResult result;
  result.method = "search";
  std::map<Chain, Chain> from_a{{a.points(), {}}}, from_b{{b.points(), {}}};
  std::deque<Chain> qa{a.points()}, qb{b.points()};

  auto trace = [](const std::map<Chain, Chain>& parents, Chain c) {
    std::vector<Chain> out;
    for (;;) {
      out.push_back(c);
      const Chain& p = parents.at(c);
      if (p.empty()) break;
      c = p;
    }
    return out;
  };
  auto finish = [&](const Chain& meeting) {
    auto left = trace(from_a, meeting);
    std::reverse(left.begin(), left.end());
    auto right = trace(from_b, meeting);
    left.insert(left.end(), right.begin() + 1, right.end());
    result.moves = std::move(left);
    result.verdict = Verdict::yes;
  };

  if (a.points() == b.points()) {
    finish(a.points());
    return result;
  }
  while ((!qa.empty() || !qb.empty()) && result.explored < budget) {
    bool expand_a = !qa.empty() && (qb.empty() || qa.size() <= qb.size());
    auto& queue = expand_a ? qa : qb;
    auto& mine = expand_a ? from_a : from_b;
    auto& other = expand_a ? from_b : from_a;
    // Expand one full layer.
    for (std::size_t layer = queue.size(); layer > 0 && result.explored < budget; --layer) {
      Chain c = std::move(queue.front());
      queue.pop_front();
      ++result.explored;
      for (auto& next : neighbours(cloud, eps, c, max_len)) {
        if (mine.count(next)) continue;
        mine.emplace(next, c);
        if (other.count(next)) {
          finish(next);
          return result;
        }
        queue.push_back(std::move(next));
      }
    }
  }
  return result;
}

HomotopyResult eps_homotopic(const PointCloud& cloud, const EpsChain& a, const EpsChain& b, std::size_t budget) {
  if (a.eps() != b.eps()) throw std::invalid_argument("chains at different scales");
  if (!a.is_loop_at(cloud.base()) || !b.is_loop_at(cloud.base()))
    throw std::invalid_argument("eps_homotopic expects loops at the basepoint");
  EpsPresentation pres(cloud, a.eps());
  if (pres.is_free()) {
    HomotopyResult result;
    result.method = "presentation";
    bool same = pres.simplify(pres.chain_word(a.points())) == pres.simplify(pres.chain_word(b.points()));
    result.verdict = same ? Verdict::yes : Verdict::no;
    return result;
  }
  return search_eps_homotopy(cloud, a, b, budget);
}

// ---------------------------------------------------------------------------
// Bonding maps and stabilization

BondingMap bonding_map(const PointCloud& cloud, const EpsPresentation& fine, const EpsPresentation& coarse) {
  (void)cloud;
  if (fine.eps() > coarse.eps()) throw std::invalid_argument("bonding map needs delta <= eps");
  BondingMap map{fine.eps(), coarse.eps(), {}, std::nullopt};
  for (std::size_t i = 0; i < fine.generators().size(); ++i)
    map.images.push_back(coarse.chain_word(fine.generator_loop(i)));
  if (coarse.is_free()) {
    std::vector<Word> simplified;
    for (std::size_t k : fine.kept()) simplified.push_back(coarse.simplify(map.images[k]));
    map.simplified_images = std::move(simplified);
  }
  return map;
}

BondingMap bonding_map(const PointCloud& cloud, const Rational& delta, const Rational& eps) {
  if (!(delta > 0) || delta > eps) throw std::invalid_argument("bonding map needs 0 < delta <= eps");
  return bonding_map(cloud, EpsPresentation(cloud, delta), EpsPresentation(cloud, eps));
}

std::size_t functoriality_mismatches(const BondingMap& fine_to_mid, const BondingMap& mid_to_coarse,
                                     const BondingMap& fine_to_coarse) {
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < fine_to_coarse.images.size(); ++i) {
    std::vector<Letter> letters;
    for (Letter l : fine_to_mid.images.at(i).letters()) {
      const Word& piece = mid_to_coarse.images.at(generator_of(l));
      Word w = l > 0 ? piece : piece.inverse();
      letters.insert(letters.end(), w.letters().begin(), w.letters().end());
    }
    if (Word(std::move(letters)) != fine_to_coarse.images[i]) ++mismatches;
  }
  return mismatches;
}

StabilizationReport detect_stabilization(const PointCloud& cloud, const std::vector<Rational>& scales) {
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0)) throw std::invalid_argument("scales must be positive");
    if (i > 0 && !(scales[i] < scales[i - 1])) throw std::invalid_argument("scales must be strictly descending");
  }
  StabilizationReport report;
  std::vector<EpsPresentation> presentations;
  for (const auto& eps : scales) {
    EpsGraph graph = eps_graph(cloud, eps);
    presentations.emplace_back(cloud, eps);
    const auto& p = presentations.back();
    ScaleEntry entry;
    entry.eps = eps;
    entry.component = p.component().size();
    entry.edges = graph.edges.size();
    entry.triangles = graph.triangles.size();
    entry.generators = p.generators().size();
    entry.relations = p.relations().size();
    entry.remaining_relations = p.remaining_relations().size();
    entry.free = p.is_free();
    entry.rank = p.rank();
    entry.boundary = p.boundary();
    report.scales.push_back(entry);
  }
  for (std::size_t i = 1; i < presentations.size(); ++i) {
    const auto& coarse = presentations[i - 1];
    const auto& fine = presentations[i];
    ScalePair pair{coarse.eps(), fine.eps(), coarse.is_free() && fine.is_free(), false};
    if (pair.both_free && coarse.rank() == fine.rank()) {
      BondingMap map = bonding_map(cloud, fine, coarse);
      // Free groups are Hopfian, so a surjection between equal ranks is an
      // isomorphism; surjectivity is a folding check.
      SubgroupGraph image = fold_subgroup(coarse.rank(), *map.simplified_images);
      pair.isomorphism = coarse.rank() == 0 || image.is_bouquet();
    }
    report.pairs.push_back(pair);
  }
  if (!report.pairs.empty() && report.pairs.back().isomorphism) report.stable_rank = report.scales.back().rank;
  return report;
}

}  // namespace rtcover
