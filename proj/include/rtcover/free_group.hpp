#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rtcover {

/// Letter `k > 0` is generator k-1, `-k` its inverse.
using Letter = std::int32_t;

/// A freely reduced word in a free group with generators 0, 1, 2, ...
class Word {
 public:
  Word() = default;
  /// Freely reduces `letters`.
  explicit Word(std::vector<Letter> letters);
  static Word generator(std::size_t index, bool inverted = false);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  Word power(int exponent) const;
  friend Word operator*(const Word& a, const Word& b);

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    if (a.letters_.size() != b.letters_.size()) return a.letters_.size() <=> b.letters_.size();
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<Letter> letters_;
};

inline std::size_t generator_of(Letter l) { return static_cast<std::size_t>(l > 0 ? l : -l) - 1; }
inline Letter make_letter(std::size_t index, bool inverted) {
  Letter l = static_cast<Letter>(index + 1);
  return inverted ? -l : l;
}

/// Cyclic reduction (strips conjugating letters at both ends).
Word cyclically_reduce(const Word& w);

/// Every freely reduced word of length <= max_length over `rank` generators,
/// in shortlex order (g0 < g0^-1 < g1 < ...).
std::vector<Word> reduced_words(std::size_t rank, std::size_t max_length);

/// Folded subgroup graph of a finitely generated subgroup of a free group:
/// a deterministic labelled graph in which every vertex has at most one
/// outgoing and one incoming edge per generator. Vertex 0 is the base; the
/// remaining vertices are numbered in breadth-first order from it.
class SubgroupGraph {
 public:
  static constexpr std::size_t none = static_cast<std::size_t>(-1);

  SubgroupGraph(std::size_t rank, std::size_t vertices);

  std::size_t rank() const { return rank_; }
  std::size_t vertex_count() const { return out_.size(); }
  std::size_t edge_count() const;
  std::size_t target(std::size_t v, std::size_t gen) const { return out_[v][gen]; }
  std::size_t source(std::size_t v, std::size_t gen) const { return in_[v][gen]; }
  /// Follows one letter; `none` when the edge is missing.
  std::size_t follow(std::size_t v, Letter l) const;
  /// Reads `w` from `start`; `none` if the reading falls off the graph.
  std::size_t read(std::size_t start, const Word& w) const;

  /// Membership: `w` is in the subgroup iff reading it from the base returns there.
  bool accepts(const Word& w) const { return read(0, w) == 0; }
  /// Every vertex carries every generator in both directions (finite index).
  bool is_complete() const;
  /// The subgroup is the whole free group.
  bool is_bouquet() const { return vertex_count() == 1 && is_complete(); }

  void add_edge(std::size_t from, std::size_t gen, std::size_t to);
  std::size_t add_vertex();

 private:
  std::size_t rank_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

/// Stallings folding of the petal graph of `generators`, with spurs trimmed.
SubgroupGraph fold_subgroup(std::size_t rank, std::span<const Word> generators);

}  // namespace rtcover
