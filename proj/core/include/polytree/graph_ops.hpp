#pragma once

#include <cstdint>
#include <vector>

#include "polytree/graph.hpp"

namespace polytree {

/// Exact d-separation via the moralized ancestral subgraph.
bool d_separated(const Dag& g, int j, int k, const std::vector<int>& given);

/// Closure of a partially directed graph under Meek rules R1-R4, iterated in
/// fixed order over lexicographically sorted edges until no rule fires.
Cpdag meek_closure(const Cpdag& pdag);

/// CPDAG of the Markov equivalence class of g: skeleton plus v-structures,
/// closed under the Meek rules.
Cpdag cpdag_of(const Dag& g);

/// Structural Hamming distance. Skeletons count the symmetric difference of
/// edge sets; CPDAGs count node pairs whose status (absent / undirected /
/// directed with direction) differs.
int shd(const Skeleton& a, const Skeleton& b);
int shd(const Cpdag& a, const Cpdag& b);

bool exact_recovery(const Skeleton& a, const Skeleton& b);
bool exact_recovery(const Cpdag& a, const Cpdag& b);

/// Decodes a Pruefer sequence (d-2 entries in [0,d)) into its labeled tree.
Skeleton tree_from_pruefer(const std::vector<int>& sequence, int d);

/// Uniform over the d^{d-2} labeled trees (Pruefer decoding).
Skeleton random_labeled_tree(int d, std::uint64_t seed);

/// Uniform labeled tree, uniformly random root, edges oriented away from it.
DirectedTree random_directed_tree(int d, std::uint64_t seed);

/// Uniform labeled tree with each edge oriented by an independent fair coin.
Polytree random_polytree(int d, std::uint64_t seed);

}  // namespace polytree
