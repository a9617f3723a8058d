#include "rtcover/free_group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace rtcover {

Word::Word(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  for (Letter l : letters) {
    if (l == 0) throw std::invalid_argument("zero letter");
    if (!letters_.empty() && letters_.back() == -l)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }
}

Word Word::generator(std::size_t index, bool inverted) { return Word({make_letter(index, inverted)}); }

Word Word::inverse() const {
  Word out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back(-*it);
  return out;
}

Word Word::power(int exponent) const {
  Word base = exponent < 0 ? inverse() : *this;
  Word out;
  for (int i = 0; i < std::abs(exponent); ++i) out = out * base;
  return out;
}

Word operator*(const Word& a, const Word& b) {
  std::vector<Letter> letters = a.letters_;
  letters.insert(letters.end(), b.letters_.begin(), b.letters_.end());
  return Word(std::move(letters));
}

Word cyclically_reduce(const Word& w) {
  const auto& l = w.letters();
  std::size_t i = 0, j = l.size();
  while (j - i >= 2 && l[i] == -l[j - 1]) {
    ++i;
    --j;
  }
  return Word(std::vector<Letter>(l.begin() + static_cast<std::ptrdiff_t>(i), l.begin() + static_cast<std::ptrdiff_t>(j)));
}

std::vector<Word> reduced_words(std::size_t rank, std::size_t max_length) {
  std::vector<Word> out{Word()};
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (std::size_t gen = 0; gen < rank; ++gen) {
        for (bool inv : {false, true}) {
          Letter l = make_letter(gen, inv);
          const auto& base = out[i].letters();
          if (!base.empty() && base.back() == -l) continue;
          std::vector<Letter> letters = base;
          letters.push_back(l);
          out.emplace_back(std::move(letters));
        }
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

SubgroupGraph::SubgroupGraph(std::size_t rank, std::size_t vertices)
    : rank_(rank), out_(vertices, std::vector<std::size_t>(rank, none)), in_(vertices, std::vector<std::size_t>(rank, none)) {}

std::size_t SubgroupGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& row : out_)
    for (auto t : row)
      if (t != none) ++n;
  return n;
}

std::size_t SubgroupGraph::follow(std::size_t v, Letter l) const {
  if (v == none) return none;
  std::size_t gen = generator_of(l);
  if (gen >= rank_) throw std::out_of_range("letter outside the generator range");
  return l > 0 ? out_[v][gen] : in_[v][gen];
}

std::size_t SubgroupGraph::read(std::size_t start, const Word& w) const {
  std::size_t v = start;
  for (Letter l : w.letters()) {
    v = follow(v, l);
    if (v == none) return none;
  }
  return v;
}

bool SubgroupGraph::is_complete() const {
  for (std::size_t v = 0; v < out_.size(); ++v)
    for (std::size_t g = 0; g < rank_; ++g)
      if (out_[v][g] == none || in_[v][g] == none) return false;
  return true;
}

void SubgroupGraph::add_edge(std::size_t from, std::size_t gen, std::size_t to) {
  if (out_.at(from).at(gen) != none || in_.at(to).at(gen) != none)
    throw std::logic_error("edge would break determinism of the subgroup graph");
  out_[from][gen] = to;
  in_[to][gen] = from;
}

std::size_t SubgroupGraph::add_vertex() {
  out_.emplace_back(rank_, none);
  in_.emplace_back(rank_, none);
  return out_.size() - 1;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace

SubgroupGraph fold_subgroup(std::size_t rank, std::span<const Word> generators) {
  using LabelledEdge = std::tuple<std::size_t, std::size_t, std::size_t>;  // tail, gen, head
  std::vector<LabelledEdge> edges;
  std::size_t vertices = 1;
  for (const Word& w : generators) {
    std::size_t cur = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      Letter l = w.letters()[i];
      if (generator_of(l) >= rank) throw std::out_of_range("generator index out of range");
      std::size_t next = i + 1 == w.size() ? 0 : vertices++;
      if (l > 0)
        edges.emplace_back(cur, generator_of(l), next);
      else
        edges.emplace_back(next, generator_of(l), cur);
      cur = next;
    }
  }

  UnionFind uf(vertices);
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& [t, g, h] : edges) {
      t = uf.find(t);
      h = uf.find(h);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (std::size_t i = 1; i < edges.size(); ++i) {
      const auto& [t0, g0, h0] = edges[i - 1];
      const auto& [t1, g1, h1] = edges[i];
      if (t0 == t1 && g0 == g1) changed |= uf.unite(h0, h1);
    }
    std::vector<LabelledEdge> by_head = edges;
    std::sort(by_head.begin(), by_head.end(), [](const auto& a, const auto& b) {
      return std::tie(std::get<2>(a), std::get<1>(a), std::get<0>(a)) <
             std::tie(std::get<2>(b), std::get<1>(b), std::get<0>(b));
    });
    for (std::size_t i = 1; i < by_head.size(); ++i) {
      const auto& [t0, g0, h0] = by_head[i - 1];
      const auto& [t1, g1, h1] = by_head[i];
      if (h0 == h1 && g0 == g1) changed |= uf.unite(t0, t1);
    }
  }

  // Trim spurs: non-base vertices with a single edge end.
  const std::size_t base = uf.find(0);
  std::vector<bool> removed_edge(edges.size(), false);
  for (bool trimmed = true; trimmed;) {
    trimmed = false;
    std::vector<std::size_t> degree(vertices, 0);
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (!removed_edge[i]) {
        ++degree[std::get<0>(edges[i])];
        ++degree[std::get<2>(edges[i])];
      }
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (removed_edge[i]) continue;
      auto [t, g, h] = edges[i];
      if ((t != base && degree[t] == 1) || (h != base && degree[h] == 1)) {
        removed_edge[i] = true;
        trimmed = true;
      }
    }
  }

  // Breadth-first renumbering from the base.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out(vertices), in(vertices);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (removed_edge[i]) continue;
    auto [t, g, h] = edges[i];
    out[t].emplace_back(g, h);
    in[h].emplace_back(g, t);
  }
  for (auto& row : out) std::sort(row.begin(), row.end());
  for (auto& row : in) std::sort(row.begin(), row.end());
  std::vector<std::size_t> number(vertices, SubgroupGraph::none);
  std::vector<std::size_t> order{base};
  number[base] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::size_t v = order[i];
    for (std::size_t g = 0; g < rank; ++g) {
      for (const auto& [lab, w] : out[v])
        if (lab == g && number[w] == SubgroupGraph::none) {
          number[w] = order.size();
          order.push_back(w);
        }
      for (const auto& [lab, w] : in[v])
        if (lab == g && number[w] == SubgroupGraph::none) {
          number[w] = order.size();
          order.push_back(w);
        }
    }
  }
  SubgroupGraph result(rank, order.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (removed_edge[i]) continue;
    auto [t, g, h] = edges[i];
    result.add_edge(number[t], g, number[h]);
  }
  return result;
}

}  // namespace rtcover
