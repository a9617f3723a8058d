#include "rtcover/loop_group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rtcover {

GeneratorSet::GeneratorSet(std::vector<bool> in_tree, std::vector<Generator> generators)
    : in_tree_(std::move(in_tree)), generators_(std::move(generators)) {}

std::optional<std::size_t> GeneratorSet::generator_for_edge(std::size_t edge) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].edge == edge) return i;
  return std::nullopt;
}

std::optional<std::size_t> GeneratorSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name || generators_[i].name.substr(2) == name) return i;
  return std::nullopt;
}

namespace {

// Reduced path inside the spanning tree from the basepoint to every vertex.
std::vector<std::vector<Step>> tree_paths(const MetricGraph& g, const std::vector<bool>& in_tree) {
  std::vector<std::vector<Step>> path(g.vertex_count());
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<std::size_t> queue{g.base_vertex()};
  seen[g.base_vertex()] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    std::size_t v = queue[i];
    for (const auto& end : g.ends_at(v)) {
      if (!in_tree[end.edge]) continue;
      const Edge& e = g.edge(end.edge);
      std::size_t w = end.forward ? e.head : e.tail;
      if (seen[w]) continue;
      seen[w] = true;
      path[w] = path[v];
      path[w].push_back(end.forward ? Step{end.edge, Rational(0), e.length} : Step{end.edge, e.length, Rational(0)});
      queue.push_back(w);
    }
  }
  return path;
}

}  // namespace

GeneratorSet generators(const MetricGraph& g) {
  std::vector<std::size_t> order(g.edge_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g.edge(a).id < g.edge(b).id; });

  std::vector<std::size_t> component(g.vertex_count());
  std::iota(component.begin(), component.end(), 0);
  auto find = [&](std::size_t x) {
    while (component[x] != x) x = component[x] = component[component[x]];
    return x;
  };
  std::vector<bool> in_tree(g.edge_count(), false);
  for (std::size_t e : order) {
    auto a = find(g.edge(e).tail), b = find(g.edge(e).head);
    if (a == b) continue;
    component[b] = a;
    in_tree[e] = true;
  }

  auto paths = tree_paths(g, in_tree);
  std::vector<Generator> gens;
  for (std::size_t e : order) {
    if (in_tree[e]) continue;
    const Edge& edge = g.edge(e);
    std::vector<Step> steps = paths[edge.tail];
    steps.push_back({e, Rational(0), edge.length});
    for (auto it = paths[edge.head].rbegin(); it != paths[edge.head].rend(); ++it) steps.push_back(it->reversed());
    RhoPath loop = reduce(g, EdgePath(g, g.base_point(), std::move(steps)));
    gens.push_back({e, "g_" + edge.id, std::move(loop)});
  }
  return GeneratorSet(std::move(in_tree), std::move(gens));
}

RhoPath evaluate_word(const MetricGraph& g, const GeneratorSet& gens, const LoopWord& w) {
  RhoPath product(g.base_point());
  EdgePath raw(g.base_point());
  for (Letter l : w.letters()) {
    std::size_t i = generator_of(l);
    if (i >= gens.rank()) throw std::out_of_range("generator index out of range");
    RhoPath factor = l > 0 ? gens.at(i).loop : inverse(g, gens.at(i).loop);
    product = concat_cancelled(g, product, factor);
    raw = concat(g, raw, factor.as_edge_path());
  }
  if (reduce(g, raw) != product) throw std::logic_error("word evaluation disagrees with direct reduction");
  return product;
}

TreePoint act(const MetricGraph& g, const GeneratorSet& gens, const LoopWord& w, const TreePoint& p) {
  return TreePoint(g, concat_cancelled(g, evaluate_word(g, gens, w), p.path()));
}

RhoPath rebase(const MetricGraph& g, const RhoPath& k, const TreePoint& c) {
  if (k.end(g) != g.base_point()) throw std::invalid_argument("rebasing path must end at the basepoint");
  return concat_cancelled(g, k, c.path());
}

RhoPath conjugate_rebase(const MetricGraph& g, const RhoPath& k, const RhoPath& loop) {
  if (k.end(g) != loop.start()) throw std::invalid_argument("rebasing path must end at the loop's basepoint");
  if (loop.end(g) != loop.start()) throw std::invalid_argument("conjugate_rebase expects a loop");
  return concat_cancelled(g, concat_cancelled(g, k, loop), inverse(g, k));
}

LoopWord project_homotopy_class(const MetricGraph& g, const GeneratorSet& gens, const EdgePath& loop) {
  if (loop.start() != g.base_point() || loop.end(g) != g.base_point())
    throw std::invalid_argument("project_homotopy_class expects a loop at the basepoint");
  RhoPath reduced = reduce(g, loop);
  std::vector<Letter> letters;
  for (const auto& s : reduced.steps()) {
    if (gens.in_tree(s.edge)) continue;
    letters.push_back(make_letter(*gens.generator_for_edge(s.edge), !s.forward()));
  }
  return LoopWord(std::move(letters));
}

LoopWord parse_word(const GeneratorSet& gens, std::string_view text) {
  std::istringstream in{std::string(text)};
  LoopWord w;
  for (std::string tok; in >> tok;) {
    int exponent = 1;
    std::string name = tok;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      name = tok.substr(0, caret);
      std::string exp_text = tok.substr(caret + 1);
      std::size_t used = 0;
      try {
        exponent = std::stoi(exp_text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != exp_text.size() || exp_text.empty() || exponent == 0)
        throw std::invalid_argument("bad exponent in `" + tok + "`");
    }
    auto i = gens.find(name);
    if (!i) throw std::invalid_argument("unknown generator `" + name + "`");
    w = w * LoopWord::generator(*i).power(exponent);
  }
  return w;
}

std::string format_word(const GeneratorSet& gens, const LoopWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (Letter l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += gens.at(generator_of(l)).name;
    if (l < 0) out += "^-1";
  }
  return out;
}

}  // namespace rtcover
