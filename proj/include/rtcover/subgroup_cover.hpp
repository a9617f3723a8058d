#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rtcover/covering_tree.hpp"
#include "rtcover/free_group.hpp"
#include "rtcover/loop_group.hpp"

namespace rtcover {

/// A finitely generated subgroup of the loop group, given by words.
struct SubgroupSpec {
  std::vector<LoopWord> generators;
  bool claimed_normal = false;
};

/// One word per line in loop-word syntax; a `normal` line sets the claim;
/// `#` starts a comment. A line consisting of `1` is the identity.
SubgroupSpec parse_subgroup(const GeneratorSet& gens, std::string_view text);

struct FoldOptions {
  /// When the folded core is not a full cover, attach the missing generator
  /// edges as trees this many letters deep.
  std::size_t hang_depth = 1;
};

/// The cover of the base graph attached to a subgroup G: the folded subgroup
/// graph (one sheet per vertex, each carrying a copy of the spanning tree) and
/// the resulting metric graph, whose edges inherit their base edge's length.
class CoverGraph {
 public:
  static constexpr std::size_t none = SubgroupGraph::none;

  CoverGraph(const MetricGraph& base, const GeneratorSet& gens, SubgroupGraph sheets, std::size_t core_sheets,
             std::size_t hang_depth);

  const SubgroupGraph& sheets() const { return sheets_; }
  std::size_t core_sheets() const { return core_sheets_; }
  std::size_t hang_depth() const { return hang_depth_; }
  /// The core is a finite-sheeted cover and no hangs were attached.
  bool complete() const { return sheets_.vertex_count() == core_sheets_ && sheets_.is_complete(); }
  std::optional<std::size_t> index() const { return complete() ? std::optional(core_sheets_) : std::nullopt; }

  const MetricGraph& space() const { return space_; }
  const MetricGraph& base() const { return base_; }
  /// First Betti number |E| - |V| + 1 of the cover graph.
  std::size_t rank() const { return space_.edge_count() - space_.vertex_count() + 1; }

  std::size_t cover_vertex(std::size_t sheet, std::size_t base_vertex) const {
    return sheet * base_vertex_count_ + base_vertex;
  }
  std::size_t sheet_of(std::size_t cover_vertex) const { return cover_vertex / base_vertex_count_; }
  std::size_t project_vertex(std::size_t cover_vertex) const { return cover_vertex % base_vertex_count_; }
  std::size_t project_edge(std::size_t cover_edge) const { return edge_projection_.at(cover_edge); }
  /// Cover edge over `base_edge` leaving (resp. entering) `cover_vertex`, or none.
  std::size_t out_edge(std::size_t cover_vertex, std::size_t base_edge) const {
    return out_edge_[cover_vertex][base_edge];
  }
  std::size_t in_edge(std::size_t cover_vertex, std::size_t base_edge) const {
    return in_edge_[cover_vertex][base_edge];
  }

  GraphPoint project(const GraphPoint& cover_point) const;
  /// Every lift of a base point.
  std::vector<GraphPoint> fiber(const GraphPoint& base_point) const;

 private:
  struct Layout {
    std::vector<std::size_t> edge_projection;
    std::vector<std::vector<std::size_t>> out_edge, in_edge;
    MetricGraph space;
  };
  static Layout layout(const MetricGraph& base, const GeneratorSet& gens, const SubgroupGraph& sheets);
  CoverGraph(const MetricGraph& base, SubgroupGraph sheets, std::size_t core_sheets, std::size_t hang_depth,
             Layout layout);

  MetricGraph base_;
  SubgroupGraph sheets_;
  std::size_t core_sheets_;
  std::size_t hang_depth_;
  std::size_t base_vertex_count_;
  std::vector<std::size_t> edge_projection_;
  std::vector<std::vector<std::size_t>> out_edge_;
  std::vector<std::vector<std::size_t>> in_edge_;
  MetricGraph space_;
};

/// Stallings folding of G's generators, completed with hangs when needed.
CoverGraph fold(const MetricGraph& g, const GeneratorSet& gens, const SubgroupSpec& G, FoldOptions options = {});

/// Membership of `w` in the subgroup the cover was folded from.
bool accepts(const CoverGraph& cv, const LoopWord& w);

/// Edge-level lift of a base path starting at `cover_start`; nullopt when the
/// lift needs an edge the (possibly truncated) cover does not have.
std::optional<EdgePath> lift_to_cover(const MetricGraph& g, const CoverGraph& cv, const EdgePath& c,
                                      const GraphPoint& cover_start);
EdgePath project_path(const CoverGraph& cv, const MetricGraph& g, const EdgePath& cover_path);

/// The lift of evaluate_word(w) from the cover's base vertex closes up.
bool lifts_as_loop(const MetricGraph& g, const GeneratorSet& gens, const CoverGraph& cv, const LoopWord& w);

/// Image of a tree point in the cover (the quotient map X̄ → X̄^G).
std::optional<GraphPoint> quotient_point(const MetricGraph& g, const CoverGraph& cv, const TreePoint& c);

struct UniversalityReport {
  bool pass = true;
  std::size_t bound = 0;
  std::size_t words_checked = 0;
  std::optional<LoopWord> witness;
  std::string reason;
};

/// Checks, up to word length `bound`, that the loops lifting as loops in `cv`
/// are exactly the members of G (membership decided by folding G itself).
UniversalityReport is_g_universal(const MetricGraph& g, const GeneratorSet& gens, const CoverGraph& cv,
                                  const SubgroupSpec& G, std::size_t bound);

inline Rational cover_distance(const CoverGraph& cv, const GraphPoint& p, const GraphPoint& q) {
  return graph_distance(cv.space(), p, q);
}

/// min over lifts q̃ of q of d(p̃, q̃): equals d(project(p̃), q) when the
/// projection is a submetry.
Rational fiber_min_distance(const CoverGraph& cv, const GraphPoint& cover_p, const GraphPoint& base_q);

class InclusionError : public std::runtime_error {
 public:
  InclusionError(LoopWord offending, const std::string& what)
      : std::runtime_error(what), offending_(std::move(offending)) {}
  const LoopWord& offending() const { return offending_; }

 private:
  LoopWord offending_;
};

struct FactorMap {
  std::vector<std::size_t> sheet_map;
  std::vector<std::size_t> vertex_map;
  std::vector<std::size_t> edge_map;
  bool is_isomorphism = false;
};

/// The covering morphism X̄^G → X̄^H for G ⊆ H. The inclusion is certified by
/// folding, not assumed; a failing generator raises InclusionError.
FactorMap factor_map(const MetricGraph& g, const GeneratorSet& gens, const CoverGraph& cv_g, const SubgroupSpec& G,
                     const CoverGraph& cv_h);

struct DeckReport {
  std::size_t conjugation_bound = 0;
  std::optional<LoopWord> violating_conjugate;
  /// Filled only when the conjugation check passes and the cover is finite.
  std::vector<std::vector<std::size_t>> automorphisms;  // sheet permutations, identity first
  std::optional<std::size_t> index;
  bool normal_by_action = false;  // the deck group is transitive on the sheets
  std::size_t order() const { return automorphisms.size(); }
};

/// Bounded normality check (every u h u⁻¹ with |u| <= bound stays in G),
/// then the label-preserving automorphisms of the folded cover. The default
/// bound is 2 × the longest generator word, capped at 8.
DeckReport deck_transformations(const MetricGraph& g, const GeneratorSet& gens, const CoverGraph& cv,
                                const SubgroupSpec& G, std::optional<std::size_t> conjugation_bound = std::nullopt);

/// Image of a cover point under the deck transformation with sheet permutation `perm`.
GraphPoint apply_deck(const CoverGraph& cv, const std::vector<std::size_t>& perm, const GraphPoint& p);

std::string to_dot(const MetricGraph& g, const GeneratorSet& gens, const CoverGraph& cv);

}  // namespace rtcover
