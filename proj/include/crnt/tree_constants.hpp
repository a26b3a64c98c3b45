#pragma once

// Tree constants: for vertex i, the sum over spanning trees of its linkage
// class directed towards i of the product of edge labels.

#include "crnt/network.hpp"
#include "crnt/polynomial.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace crnt {

using TreeConstants = std::map<VertexId, Polynomial>;

/// Pairs (i, j) inside one linkage class; not necessarily edges of the graph.
struct SpanningForest {
  std::vector<std::pair<VertexId, VertexId>> edges;
};

/// Brute-force oracle: every non-root vertex picks one outgoing edge inside
/// its class, and choices that close a cycle are pruned. Throws
/// std::length_error when the number of raw choices in a class exceeds
/// `max_choices`.
TreeConstants tree_constants_enumerate(const Gcrn& net, std::uint64_t max_choices = 100'000'000);

/// K_i as the principal minor (row i, column i deleted) of the negated
/// Laplacian restricted to i's linkage class.
TreeConstants tree_constants_cofactor(const Gcrn& net);

/// Throws AnalysisError naming the first linkage class that is not strongly connected.
void require_weakly_reversible(const Gcrn& net);

/// Star forest: in every linkage class, edges from its lowest vertex id to each other member.
SpanningForest choose_forest(const Gcrn& net);

/// kappa_(i,j) = K_j / K_i for each forest pair.
std::vector<RationalFunction> kappa(const TreeConstants& k, const SpanningForest& forest);

/// The same quotients with common factors of K_i and K_j cancelled.
std::vector<Factorization> kappa_factored(const TreeConstants& k, const SpanningForest& forest);

}  // namespace crnt
