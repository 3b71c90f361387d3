#include "polytree/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>

namespace polytree {

namespace {

void check_node_count(int d) {
    if (d <= 0) throw std::invalid_argument("node count must be positive, got " + std::to_string(d));
}

void check_endpoints(int d, const Edge& e) {
    if (e.first < 0 || e.first >= d || e.second < 0 || e.second >= d)
        throw std::invalid_argument("edge (" + std::to_string(e.first) + "," +
                                    std::to_string(e.second) + ") out of range for d=" +
                                    std::to_string(d));
    if (e.first == e.second)
        throw std::invalid_argument("self-loop at node " + std::to_string(e.first));
}

}  // namespace

Dag::Dag(int node_count, std::vector<Edge> edges) : d_(node_count), edges_(std::move(edges)) {
    check_node_count(d_);
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        check_endpoints(d_, edges_[i]);
        if (i > 0 && edges_[i] == edges_[i - 1])
            throw std::invalid_argument("duplicate edge (" + std::to_string(edges_[i].first) +
                                        "," + std::to_string(edges_[i].second) + ")");
    }
    parents_.assign(d_, {});
    children_.assign(d_, {});
    for (const auto& [p, c] : edges_) {
        parents_[c].push_back(p);
        children_[p].push_back(c);
    }

    // Kahn's algorithm; failure to exhaust all nodes means a cycle.
    std::vector<int> indeg(d_);
    for (int v = 0; v < d_; ++v) indeg[v] = static_cast<int>(parents_[v].size());
    std::deque<int> ready;
    for (int v = 0; v < d_; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    topo_.reserve(d_);
    while (!ready.empty()) {
        const int v = ready.front();
        ready.pop_front();
        topo_.push_back(v);
        for (int c : children_[v])
            if (--indeg[c] == 0) ready.push_back(c);
    }
    if (static_cast<int>(topo_.size()) != d_)
        throw std::invalid_argument("graph contains a directed cycle");
}

bool Dag::has_edge(int parent, int child) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{parent, child});
}

Skeleton::Skeleton(int node_count, std::vector<Edge> edges) : d_(node_count), edges_(std::move(edges)) {
    check_node_count(d_);
    for (auto& e : edges_) {
        check_endpoints(d_, e);
        if (e.first > e.second) std::swap(e.first, e.second);
    }
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i] == edges_[i - 1])
            throw std::invalid_argument("duplicate undirected edge (" +
                                        std::to_string(edges_[i].first) + "," +
                                        std::to_string(edges_[i].second) + ")");
    adj_.assign(d_, {});
    for (const auto& [a, b] : edges_) {
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    }
}

bool Skeleton::has_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(edges_.begin(), edges_.end(), Edge{a, b});
}

bool Skeleton::is_tree() const {
    // Connected with d-1 edges is equivalent to being a tree.
    if (static_cast<int>(edges_.size()) != d_ - 1) return false;
    std::vector<bool> visited(d_, false);
    std::deque<int> queue{0};
    visited[0] = true;
    int seen = 1;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int w : adj_[v])
            if (!visited[w]) {
                visited[w] = true;
                ++seen;
                queue.push_back(w);
            }
    }
    return seen == d_;
}

bool Skeleton::is_forest() const {
    // A forest has |V| - #components edges; any surplus implies a cycle.
    std::vector<int> comp(d_, -1);
    int components = 0;
    for (int start = 0; start < d_; ++start) {
        if (comp[start] != -1) continue;
        ++components;
        std::deque<int> queue{start};
        comp[start] = components;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            for (int w : adj_[v])
                if (comp[w] == -1) {
                    comp[w] = components;
                    queue.push_back(w);
                }
        }
    }
    return static_cast<int>(edges_.size()) == d_ - components;
}

Skeleton skeleton_of(const Dag& g) {
    std::vector<Edge> edges = g.edges();
    return Skeleton(g.node_count(), std::move(edges));
}

UndirectedTree::UndirectedTree(Skeleton skeleton) : skeleton_(std::move(skeleton)) {
    if (!skeleton_.is_tree())
        throw std::invalid_argument("edge set is not a spanning tree");
}

DirectedTree::DirectedTree(int root, Dag dag) : root_(root), dag_(std::move(dag)) {
    const int d = dag_.node_count();
    if (root < 0 || root >= d) throw std::invalid_argument("root out of range");
    if (!skeleton_of(dag_).is_tree())
        throw std::invalid_argument("directed tree must have a tree skeleton");
    parent_.assign(d, -1);
    for (int v = 0; v < d; ++v) {
        const auto& ps = dag_.parents(v);
        if (v == root_) {
            if (!ps.empty()) throw std::invalid_argument("root must have in-degree 0");
        } else {
            if (ps.size() != 1)
                throw std::invalid_argument("non-root node " + std::to_string(v) +
                                            " must have in-degree 1");
            parent_[v] = ps[0];
        }
    }
}

DirectedTree DirectedTree::orient_from(const Skeleton& tree, int root) {
    const int d = tree.node_count();
    if (root < 0 || root >= d) throw std::invalid_argument("root out of range");
    if (!tree.is_tree()) throw std::invalid_argument("skeleton is not a tree");
    std::vector<Edge> directed;
    directed.reserve(tree.edges().size());
    std::vector<bool> visited(d, false);
    std::deque<int> queue{root};
    visited[root] = true;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int w : tree.neighbors(v)) {
            if (visited[w]) continue;
            visited[w] = true;
            directed.emplace_back(v, w);
            queue.push_back(w);
        }
    }
    return DirectedTree(root, Dag(d, std::move(directed)));
}

Polytree::Polytree(Dag dag) : dag_(std::move(dag)) {
    if (!skeleton_of(dag_).is_tree())
        throw std::invalid_argument("polytree skeleton must be a tree");
}

Cpdag::Cpdag(int node_count, std::vector<Edge> directed, std::vector<Edge> undirected)
    : d_(node_count), directed_(std::move(directed)), undirected_(std::move(undirected)) {
    check_node_count(d_);
    for (const auto& e : directed_) check_endpoints(d_, e);
    for (auto& e : undirected_) {
        check_endpoints(d_, e);
        if (e.first > e.second) std::swap(e.first, e.second);
    }
    std::sort(directed_.begin(), directed_.end());
    std::sort(undirected_.begin(), undirected_.end());
    auto dup = [](const std::vector<Edge>& v) {
        return std::adjacent_find(v.begin(), v.end()) != v.end();
    };
    if (dup(directed_) || dup(undirected_))
        throw std::invalid_argument("duplicate edge in CPDAG");
    for (const auto& [a, b] : directed_) {
        const Edge key = a < b ? Edge{a, b} : Edge{b, a};
        if (std::binary_search(undirected_.begin(), undirected_.end(), key))
            throw std::invalid_argument("pair (" + std::to_string(key.first) + "," +
                                        std::to_string(key.second) +
                                        ") is both directed and undirected");
        if (std::binary_search(directed_.begin(), directed_.end(), Edge{b, a}))
            throw std::invalid_argument("pair (" + std::to_string(key.first) + "," +
                                        std::to_string(key.second) +
                                        ") directed both ways");
    }
    const Dag acyclic_check(d_, directed_);  // throws on a directed cycle
    (void)acyclic_check;
}

bool Cpdag::has_directed(int from, int to) const {
    return std::binary_search(directed_.begin(), directed_.end(), Edge{from, to});
}

bool Cpdag::has_undirected(int a, int b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(undirected_.begin(), undirected_.end(), Edge{a, b});
}

bool Cpdag::adjacent(int a, int b) const {
    return has_undirected(a, b) || has_directed(a, b) || has_directed(b, a);
}

Skeleton Cpdag::skeleton() const {
    std::vector<Edge> edges = undirected_;
    edges.insert(edges.end(), directed_.begin(), directed_.end());
    return Skeleton(d_, std::move(edges));
}

}  // namespace polytree
