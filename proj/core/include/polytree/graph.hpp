#pragma once

#include <utility>
#include <vector>

namespace polytree {

using Edge = std::pair<int, int>;

/// Directed acyclic graph over nodes 0..d-1. Edges are (parent, child),
/// stored sorted and deduplicated; construction rejects self-loops,
/// duplicates, out-of-range ids and cycles.
class Dag {
public:
    Dag(int node_count, std::vector<Edge> edges);

    int node_count() const { return d_; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_edge(int parent, int child) const;
    const std::vector<int>& parents(int node) const { return parents_[node]; }
    const std::vector<int>& children(int node) const { return children_[node]; }
    /// Parents before children; computed once at construction.
    const std::vector<int>& topological_order() const { return topo_; }

    bool operator==(const Dag& other) const {
        return d_ == other.d_ && edges_ == other.edges_;
    }

private:
    int d_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> parents_;
    std::vector<std::vector<int>> children_;
    std::vector<int> topo_;
};

/// Undirected graph over nodes 0..d-1; pairs normalized to (a < b).
class Skeleton {
public:
    Skeleton(int node_count, std::vector<Edge> edges);

    int node_count() const { return d_; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_edge(int a, int b) const;
    const std::vector<int>& neighbors(int node) const { return adj_[node]; }

    bool is_tree() const;    // connected with exactly d-1 edges
    bool is_forest() const;  // acyclic

    bool operator==(const Skeleton& other) const {
        return d_ == other.d_ && edges_ == other.edges_;
    }

private:
    int d_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

Skeleton skeleton_of(const Dag& g);

/// Spanning tree: connected, d-1 edges.
class UndirectedTree {
public:
    explicit UndirectedTree(Skeleton skeleton);
    UndirectedTree(int node_count, std::vector<Edge> edges)
        : UndirectedTree(Skeleton(node_count, std::move(edges))) {}

    int node_count() const { return skeleton_.node_count(); }
    const std::vector<Edge>& edges() const { return skeleton_.edges(); }
    const Skeleton& as_skeleton() const { return skeleton_; }

    bool operator==(const UndirectedTree& other) const {
        return skeleton_ == other.skeleton_;
    }

private:
    Skeleton skeleton_;
};

/// Rooted tree with every edge pointing away from the root; every non-root
/// node has in-degree exactly one.
class DirectedTree {
public:
    DirectedTree(int root, Dag dag);

    /// BFS orientation of a tree skeleton away from `root`.
    static DirectedTree orient_from(const Skeleton& tree, int root);

    int root() const { return root_; }
    const Dag& dag() const { return dag_; }
    int node_count() const { return dag_.node_count(); }
    /// -1 for the root.
    int parent(int node) const { return parent_[node]; }
    UndirectedTree skeleton() const { return UndirectedTree(skeleton_of(dag_)); }

    bool operator==(const DirectedTree& other) const {
        return root_ == other.root_ && dag_ == other.dag_;
    }

private:
    int root_;
    Dag dag_;
    std::vector<int> parent_;
};

/// Directed graph whose skeleton is a tree; in-degree may exceed one.
class Polytree {
public:
    explicit Polytree(Dag dag);

    const Dag& dag() const { return dag_; }
    int node_count() const { return dag_.node_count(); }

private:
    Dag dag_;
};

/// Mixed graph representing a Markov equivalence class: a directed part
/// (acyclic) and an undirected part, disjoint on underlying pairs.
class Cpdag {
public:
    Cpdag(int node_count, std::vector<Edge> directed, std::vector<Edge> undirected);

    int node_count() const { return d_; }
    const std::vector<Edge>& directed_edges() const { return directed_; }
    const std::vector<Edge>& undirected_edges() const { return undirected_; }
    bool has_directed(int from, int to) const;
    bool has_undirected(int a, int b) const;
    bool adjacent(int a, int b) const;
    Skeleton skeleton() const;

    bool operator==(const Cpdag& other) const {
        return d_ == other.d_ && directed_ == other.directed_ &&
               undirected_ == other.undirected_;
    }

private:
    int d_;
    std::vector<Edge> directed_;
    std::vector<Edge> undirected_;
};

}  // namespace polytree
