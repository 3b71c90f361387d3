#include "polytree/chow_liu.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "polytree/errors.hpp"

namespace polytree {

namespace {

std::size_t pair_index(int d, int j, int k) {
    if (j > k) std::swap(j, k);
    // Offset of row j in upper-triangular row-major storage.
    return static_cast<std::size_t>(j) * d - static_cast<std::size_t>(j) * (j + 1) / 2 +
           (k - j - 1);
}

struct UnionFind {
    explicit UnionFind(int n) : parent(n), size(n, 1) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int root(int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }

    bool unite(int a, int b) {
        a = root(a);
        b = root(b);
        if (a == b) return false;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        return true;
    }

    std::vector<int> parent;
    std::vector<int> size;
};

}  // namespace

WeightedCompleteGraph::WeightedCompleteGraph(int node_count, std::vector<double> weights)
    : d_(node_count), weights_(std::move(weights)) {
    if (d_ < 1) throw std::invalid_argument("node count must be positive");
    const std::size_t expected = static_cast<std::size_t>(d_) * (d_ - 1) / 2;
    if (weights_.size() != expected)
        throw std::invalid_argument("expected " + std::to_string(expected) + " weights, got " +
                                    std::to_string(weights_.size()));
    for (double w : weights_)
        if (!std::isfinite(w) || w < 0.0)
            throw std::invalid_argument("weights must be finite and nonnegative");
}

double WeightedCompleteGraph::weight(int j, int k) const {
    if (j == k || j < 0 || j >= d_ || k < 0 || k >= d_)
        throw std::invalid_argument("weight needs two distinct nodes in range");
    return weights_[pair_index(d_, j, k)];
}

WeightedCompleteGraph pairwise_mi_graph(const CovarianceMatrix& sigma) {
    const int d = sigma.dim();
    for (int i = 0; i < d; ++i)
        if (!(sigma(i, i) > 0.0))
            throw degenerate_error("nonpositive variance at node " + std::to_string(i));
    std::vector<double> weights;
    weights.reserve(static_cast<std::size_t>(d) * (d - 1) / 2);
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            try {
                weights.push_back(empirical_mi(sigma, j, k).value);
            } catch (const degenerate_error& e) {
                throw degenerate_error(std::string(e.what()) + " [while weighting pair (" +
                                       std::to_string(j) + "," + std::to_string(k) + ")]");
            }
        }
    return WeightedCompleteGraph(d, std::move(weights));
}

UndirectedTree max_weight_spanning_tree(const WeightedCompleteGraph& g) {
    const int d = g.node_count();
    std::vector<Edge> pairs;
    pairs.reserve(static_cast<std::size_t>(d) * (d - 1) / 2);
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) pairs.emplace_back(j, k);
    std::stable_sort(pairs.begin(), pairs.end(), [&](const Edge& a, const Edge& b) {
        const double wa = g.weight(a.first, a.second);
        const double wb = g.weight(b.first, b.second);
        if (wa != wb) return wa > wb;
        return a < b;
    });

    UnionFind uf(d);
    std::vector<Edge> chosen;
    chosen.reserve(d - 1);
    for (const auto& e : pairs) {
        if (uf.unite(e.first, e.second)) {
            chosen.push_back(e);
            if (static_cast<int>(chosen.size()) == d - 1) break;
        }
    }
    return UndirectedTree(d, std::move(chosen));
}

DirectedTree orient_arbitrary(const UndirectedTree& tree, int root) {
    return DirectedTree::orient_from(tree.as_skeleton(), root);
}

ChowLiuResult chow_liu(const CovarianceMatrix& sigma) {
    if (sigma.dim() < 2) throw std::invalid_argument("learning needs at least two nodes");
    WeightedCompleteGraph g = pairwise_mi_graph(sigma);
    UndirectedTree skeleton = max_weight_spanning_tree(g);
    DirectedTree tree = orient_arbitrary(skeleton, 0);
    return ChowLiuResult{std::move(tree), std::move(skeleton), std::move(g)};
}

ChowLiuResult chow_liu(const SampleMatrix& data) {
    if (data.cols() < 2) throw std::invalid_argument("learning needs at least two nodes");
    return chow_liu(sample_covariance(data));
}

}  // namespace polytree
