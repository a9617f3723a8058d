#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rtcover/free_group.hpp"
#include "rtcover/metric_graph.hpp"
#include "rtcover/rational.hpp"

namespace rtcover {

/// A finite metric space with exact distance comparisons. Coordinate clouds
/// keep only squared Euclidean distances; every scale test compares d² < ε².
class PointCloud {
 public:
  static PointCloud from_coordinates(std::vector<std::string> labels, const std::vector<std::vector<Rational>>& coords,
                                     std::size_t base);
  /// Validates symmetry, zero diagonal, positivity off the diagonal and the
  /// triangle inequality.
  static PointCloud from_distances(std::vector<std::string> labels, std::vector<std::vector<Rational>> distances,
                                   std::size_t base);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::optional<std::size_t> find(std::string_view label) const;
  std::size_t base() const { return base_; }

  const Rational& squared_distance(std::size_t i, std::size_t j) const { return squared_[i][j]; }
  /// d(i, j) < eps.
  bool within(std::size_t i, std::size_t j, const Rational& eps) const { return squared_[i][j] < eps * eps; }
  bool at_scale(std::size_t i, std::size_t j, const Rational& eps) const { return squared_[i][j] == eps * eps; }
  /// Largest squared distance.
  Rational squared_diameter() const;

 private:
  PointCloud(std::vector<std::string> labels, std::vector<std::vector<Rational>> squared, std::size_t base)
      : labels_(std::move(labels)), squared_(std::move(squared)), base_(base) {}

  std::vector<std::string> labels_;
  std::vector<std::vector<Rational>> squared_;
  std::size_t base_;
};

/// CSV with header `label,x1,...,xn` (coordinates) or `label,label,distance`
/// (explicit pairs); `base <label>` directive; `#` comments.
PointCloud parse_cloud(std::string_view text);
PointCloud load_cloud(const std::string& path);

/// Vertices plus points every `mesh` along each edge, with intrinsic distances.
/// Labels are the vertex ids and `<edge>@<offset>`.
PointCloud sample_graph(const MetricGraph& g, const Rational& mesh);

struct EpsGraph {
  Rational eps;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j, d(i, j) < eps
  std::vector<std::array<std::size_t, 3>> triangles;       // i < j < k, pairwise < eps
  std::vector<std::vector<std::size_t>> adjacency;         // sorted
  /// Some pairwise distance equals eps exactly.
  bool boundary = false;
};

EpsGraph eps_graph(const PointCloud& cloud, const Rational& eps);

/// A finite point sequence with consecutive distances strictly below eps.
class EpsChain {
 public:
  /// Throws std::invalid_argument if a step reaches eps or indices are out of range.
  EpsChain(const PointCloud& cloud, Rational eps, std::vector<std::size_t> points);

  const std::vector<std::size_t>& points() const { return points_; }
  const Rational& eps() const { return eps_; }
  bool is_loop_at(std::size_t p) const { return points_.front() == p && points_.back() == p; }

 private:
  std::vector<std::size_t> points_;
  Rational eps_;
};

/// Whitespace-separated point labels.
EpsChain parse_chain(const PointCloud& cloud, const Rational& eps, std::string_view text);

/// Presentation of the eps-deck group: generators are the non-tree edges of
/// the eps-graph on the basepoint's component, relators the triangle
/// boundaries. Tietze elimination then removes every generator that occurs
/// exactly once in some relator; when no relator survives the group is free
/// on the kept generators.
class EpsPresentation {
 public:
  static constexpr std::size_t none = static_cast<std::size_t>(-1);

  EpsPresentation(const PointCloud& cloud, const Rational& eps);

  const Rational& eps() const { return eps_; }
  bool boundary() const { return boundary_; }
  const std::vector<std::size_t>& component() const { return component_; }
  std::size_t parent(std::size_t p) const { return parent_.at(p); }
  const std::vector<std::pair<std::size_t, std::size_t>>& generators() const { return generators_; }
  const std::vector<Word>& relations() const { return relations_; }

  const std::vector<std::size_t>& kept() const { return kept_; }
  const std::vector<Word>& remaining_relations() const { return remaining_; }
  bool is_free() const { return remaining_.empty(); }
  std::size_t rank() const { return kept_.size(); }

  /// Word over the original generators of a chain inside the component.
  Word chain_word(const std::vector<std::size_t>& chain) const;
  /// Rewrites a word over the original generators into the kept generators.
  Word simplify(const Word& w) const;
  /// The eps-loop of generator i: tree path out, the edge, tree path home.
  std::vector<std::size_t> generator_loop(std::size_t i) const;

 private:
  std::optional<Letter> edge_letter(std::size_t p, std::size_t q) const;
  std::vector<std::size_t> tree_path(std::size_t p) const;  // base ... p
  void simplify_presentation();

  Rational eps_;
  bool boundary_ = false;
  std::size_t base_;
  std::vector<std::size_t> component_;
  std::vector<std::size_t> parent_;
  std::vector<std::pair<std::size_t, std::size_t>> generators_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> generator_index_;
  std::vector<Word> relations_;
  std::vector<std::size_t> kept_;
  std::vector<Word> remaining_;
  std::vector<Word> expressions_;
};

inline EpsPresentation delta_group(const PointCloud& cloud, const Rational& eps) { return {cloud, eps}; }

enum class Verdict { yes, no, inconclusive };
std::string to_string(Verdict v);

struct HomotopyResult {
  Verdict verdict = Verdict::inconclusive;
  std::string method;  // "presentation" or "search"
  /// For search verdicts: the chains visited from γ1 to γ2, one move apart.
  std::vector<std::vector<std::size_t>> moves;
  std::size_t explored = 0;
};

/// Bidirectional breadth-first search over single-point insertions and
/// removals, visiting at most `budget` chains of length at most
/// max(|γ1|, |γ2|) + 2. Only ever answers yes or inconclusive.
HomotopyResult search_eps_homotopy(const PointCloud& cloud, const EpsChain& a, const EpsChain& b, std::size_t budget);

/// Decides through the presentation when it simplifies to a free group,
/// otherwise falls back to the bounded search.
HomotopyResult eps_homotopic(const PointCloud& cloud, const EpsChain& a, const EpsChain& b, std::size_t budget);

/// True when `next` arises from `prev` by inserting or removing one point and
/// is still an eps-chain with the same endpoints.
bool is_single_move(const PointCloud& cloud, const Rational& eps, const std::vector<std::size_t>& prev,
                    const std::vector<std::size_t>& next);

struct BondingMap {
  Rational from;  // finer scale δ
  Rational to;    // coarser scale ε
  /// Image of every δ-generator as a word over the ε-generators.
  std::vector<Word> images;
  /// Image of every kept δ-generator over the kept ε-generators (ε free only).
  std::optional<std::vector<Word>> simplified_images;
};

BondingMap bonding_map(const PointCloud& cloud, const EpsPresentation& fine, const EpsPresentation& coarse);
BondingMap bonding_map(const PointCloud& cloud, const Rational& delta, const Rational& eps);

/// φ_εδ against φ_εα ∘ φ_αδ on every δ-generator; returns the number of mismatches.
std::size_t functoriality_mismatches(const BondingMap& fine_to_mid, const BondingMap& mid_to_coarse,
                                     const BondingMap& fine_to_coarse);

struct ScaleEntry {
  Rational eps;
  std::size_t component = 0;
  std::size_t edges = 0;
  std::size_t triangles = 0;
  std::size_t generators = 0;
  std::size_t relations = 0;
  std::size_t remaining_relations = 0;
  bool free = false;
  std::size_t rank = 0;
  bool boundary = false;
};

struct ScalePair {
  Rational coarse;
  Rational fine;
  bool both_free = false;
  bool isomorphism = false;
};

struct StabilizationReport {
  std::vector<ScaleEntry> scales;
  std::vector<ScalePair> pairs;
  /// Rank on the finest run of stable pairs, when the last pair is stable.
  std::optional<std::size_t> stable_rank;
};

/// `scales` must be positive and strictly descending.
StabilizationReport detect_stabilization(const PointCloud& cloud, const std::vector<Rational>& scales);

}  // namespace rtcover
