#pragma once

#include <vector>

#include "polytree/estimators.hpp"
#include "polytree/graph.hpp"
#include "polytree/sem.hpp"

namespace polytree {

/// Complete undirected graph whose edge weights are pairwise mutual
/// informations (nats); all d(d-1)/2 weights present, finite, nonnegative.
class WeightedCompleteGraph {
public:
    /// Weights in upper-triangular row-major order: (0,1),(0,2),...,(d-2,d-1).
    WeightedCompleteGraph(int node_count, std::vector<double> weights);

    int node_count() const { return d_; }
    double weight(int j, int k) const;
    const std::vector<double>& weights() const { return weights_; }

private:
    int d_;
    std::vector<double> weights_;
};

WeightedCompleteGraph pairwise_mi_graph(const CovarianceMatrix& sigma);

/// Maximum-weight spanning tree via Kruskal over a union-find, edges sorted
/// by (weight descending, pair ascending); the lexicographic tie-break makes
/// the result deterministic.
UndirectedTree max_weight_spanning_tree(const WeightedCompleteGraph& g);

/// BFS orientation of the tree away from the root.
DirectedTree orient_arbitrary(const UndirectedTree& tree, int root);

struct ChowLiuResult {
    DirectedTree tree;
    UndirectedTree skeleton;
    WeightedCompleteGraph mi_graph;
};

/// Maximum-weight spanning tree under estimated pairwise mutual information,
/// rooted at node 0.
ChowLiuResult chow_liu(const SampleMatrix& data);
/// Same, from a precomputed (or exact) covariance.
ChowLiuResult chow_liu(const CovarianceMatrix& sigma);

}  // namespace polytree
