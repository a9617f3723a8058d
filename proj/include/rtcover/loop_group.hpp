#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rtcover/free_group.hpp"
#include "rtcover/tree_point.hpp"

namespace rtcover {

/// Elements of the loop group, as words over the generators of a GeneratorSet.
using LoopWord = Word;

struct Generator {
  std::size_t edge;  // the non-tree edge this generator crosses
  std::string name;  // "g_<edge-id>"
  RhoPath loop;      // tree path to the tail, the edge, tree path home
};

/// Free basis of the loop group relative to a spanning tree.
class GeneratorSet {
 public:
  GeneratorSet(std::vector<bool> in_tree, std::vector<Generator> generators);

  std::size_t rank() const { return generators_.size(); }
  const Generator& at(std::size_t i) const { return generators_.at(i); }
  const std::vector<Generator>& all() const { return generators_; }
  bool in_tree(std::size_t edge) const { return in_tree_.at(edge); }
  std::optional<std::size_t> generator_for_edge(std::size_t edge) const;
  /// Accepts `g_<edge>` or the bare edge id.
  std::optional<std::size_t> find(std::string_view name) const;

 private:
  std::vector<bool> in_tree_;
  std::vector<Generator> generators_;
};

/// Spanning tree grown greedily over edges sorted by id; one generator per
/// remaining edge, in edge-id order. rank = |E| - |V| + 1.
GeneratorSet generators(const MetricGraph& g);

/// ⋆-product of the generator loops. Computed twice (incrementally and by a
/// single reduction of the raw concatenation); disagreement throws.
RhoPath evaluate_word(const MetricGraph& g, const GeneratorSet& gens, const LoopWord& w);

/// Left action on the covering tree: evaluate_word(w) ⋆ p.
TreePoint act(const MetricGraph& g, const GeneratorSet& gens, const LoopWord& w, const TreePoint& p);

/// Change of basepoint k ⋆ c, for k running from the new basepoint to the old.
RhoPath rebase(const MetricGraph& g, const RhoPath& k, const TreePoint& c);

/// k ⋆ loop ⋆ k⁻¹: the loop group isomorphism between basepoints.
RhoPath conjugate_rebase(const MetricGraph& g, const RhoPath& k, const RhoPath& loop);

/// The word of the homotopy class of a loop at the basepoint.
LoopWord project_homotopy_class(const MetricGraph& g, const GeneratorSet& gens, const EdgePath& loop);

/// Word syntax: whitespace-separated generator tokens, each optionally
/// suffixed `^-1` (or `^n` for any nonzero integer n).
LoopWord parse_word(const GeneratorSet& gens, std::string_view text);
std::string format_word(const GeneratorSet& gens, const LoopWord& w);

}  // namespace rtcover
