#pragma once

#include "polytree/graph.hpp"
#include "polytree/sem.hpp"

namespace polytree {

/// KL divergence between two zero-mean Gaussians:
/// (tr(S1^-1 S0) - d + log det S1 - log det S0) / 2.
double gaussian_kl(const CovarianceMatrix& sigma0, const CovarianceMatrix& sigma1);

/// The tree-structured distribution closest in KL to the input: each node is
/// regressed on its tree parent (moment matching), so node variances and
/// tree-edge covariances are preserved exactly.
struct TreeProjection {
    DirectedTree tree;
    GaussianSem projected;
};

TreeProjection project_onto_tree(const CovarianceMatrix& sigma, const DirectedTree& tree);

/// Terms of the divergence decomposition: total =
/// -mi_sum - joint_entropy + marginal_entropy_sum. Entropies are in nats.
struct KlDecomposition {
    double mi_sum;
    double joint_entropy;
    double marginal_entropy_sum;
    double total;
};

KlDecomposition kl_decomposition(const CovarianceMatrix& sigma, const DirectedTree& tree);

/// KL from the Gaussian with the given covariance to its projection onto the
/// tree, evaluated through the mutual-information/entropy decomposition.
/// Depends only on the tree's skeleton, not its rooting.
double kl_to_tree(const CovarianceMatrix& sigma, const DirectedTree& tree);

struct BestTreeResult {
    DirectedTree tree;
    double kl;
};

/// Exhaustive minimizer of kl_to_tree over all d^{d-2} labeled trees
/// (Pruefer enumeration, d <= 8). Ties resolve to the first minimizer in
/// enumeration order.
BestTreeResult best_tree_bruteforce(const CovarianceMatrix& sigma);

}  // namespace polytree
