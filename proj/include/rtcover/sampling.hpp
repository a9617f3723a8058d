#pragma once

#include <cstddef>
#include <random>

#include "rtcover/free_group.hpp"
#include "rtcover/tree_point.hpp"

namespace rtcover {

/// Random path of `steps` steps from `start`. Steps may stop inside an edge,
/// turn around there (spikes) and pick up again, so the result is usually
/// not reduced. Interior stops sit at quarter points of the edge.
EdgePath random_edge_path(const MetricGraph& g, std::mt19937_64& rng, const GraphPoint& start, std::size_t steps);

/// Reduction of a random path from the basepoint.
TreePoint random_tree_point(const MetricGraph& g, std::mt19937_64& rng, std::size_t steps);

/// Random point of the graph: a vertex or a quarter point of an edge.
GraphPoint random_graph_point(const MetricGraph& g, std::mt19937_64& rng);

/// Uniform-ish freely reduced word of exactly `length` letters.
Word random_word(std::size_t rank, std::size_t length, std::mt19937_64& rng);

/// Connected multigraph on `vertices` vertices with `extra_edges` edges beyond
/// a random spanning tree (loops and parallel edges allowed). Lengths are
/// drawn from {1/2, 1, 3/2, 2}; ids are v0.. and e0.., base v0.
MetricGraph random_graph(std::mt19937_64& rng, std::size_t vertices, std::size_t extra_edges);

}  // namespace rtcover
