#include "polytree/graph_ops.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "polytree/rng.hpp"

namespace polytree {

bool d_separated(const Dag& g, int j, int k, const std::vector<int>& given) {
    const int d = g.node_count();
    if (j == k) throw std::invalid_argument("d-separation needs distinct nodes");
    for (int s : given)
        if (s == j || s == k) throw std::invalid_argument("conditioning set overlaps targets");

    // Ancestral closure of {j, k} union S.
    std::vector<bool> in_anc(d, false);
    std::deque<int> stack;
    auto push = [&](int v) {
        if (!in_anc[v]) {
            in_anc[v] = true;
            stack.push_back(v);
        }
    };
    push(j);
    push(k);
    for (int s : given) push(s);
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int p : g.parents(v)) push(p);
    }

    // Moralize the ancestral subgraph and drop directions.
    std::vector<std::vector<int>> adj(d);
    auto connect = [&](int a, int b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (int v = 0; v < d; ++v) {
        if (!in_anc[v]) continue;
        const auto& ps = g.parents(v);
        for (int p : ps)
            if (in_anc[p]) connect(p, v);
        for (std::size_t a = 0; a < ps.size(); ++a)
            for (std::size_t b = a + 1; b < ps.size(); ++b)
                if (in_anc[ps[a]] && in_anc[ps[b]]) connect(ps[a], ps[b]);
    }

    // Separation holds iff j cannot reach k avoiding S.
    std::vector<bool> blocked(d, false);
    for (int s : given) blocked[s] = true;
    std::vector<bool> visited(d, false);
    std::deque<int> queue{j};
    visited[j] = true;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        if (v == k) return false;
        for (int w : adj[v])
            if (!visited[w] && !blocked[w]) {
                visited[w] = true;
                queue.push_back(w);
            }
    }
    return true;
}

namespace {

// Mutable adjacency-status buffer for the orientation rules.
// status(a,b): 0 none, 1 undirected, 2 directed a->b.
class Pdag {
public:
    explicit Pdag(const Cpdag& g)
        : d_(g.node_count()), m_(static_cast<std::size_t>(d_) * d_, 0) {
        for (const auto& [a, b] : g.undirected_edges()) {
            at(a, b) = 1;
            at(b, a) = 1;
        }
        for (const auto& [a, b] : g.directed_edges()) at(a, b) = 2;
    }

    int node_count() const { return d_; }
    bool undirected(int a, int b) const { return at(a, b) == 1; }
    bool directed(int a, int b) const { return at(a, b) == 2; }
    bool adjacent(int a, int b) const { return at(a, b) != 0 || at(b, a) != 0; }

    void orient(int from, int to) {
        at(from, to) = 2;
        at(to, from) = 0;
    }

    Cpdag to_cpdag() const {
        std::vector<Edge> dir, und;
        for (int a = 0; a < d_; ++a)
            for (int b = 0; b < d_; ++b) {
                if (at(a, b) == 2) dir.emplace_back(a, b);
                if (a < b && at(a, b) == 1) und.emplace_back(a, b);
            }
        return Cpdag(d_, std::move(dir), std::move(und));
    }

private:
    std::uint8_t& at(int a, int b) { return m_[static_cast<std::size_t>(a) * d_ + b]; }
    std::uint8_t at(int a, int b) const { return m_[static_cast<std::size_t>(a) * d_ + b]; }

    int d_;
    std::vector<std::uint8_t> m_;
};

// R1: orient k-l into k->l when some j->k exists with j, l nonadjacent.
bool rule1_fires(const Pdag& g, int k, int l) {
    for (int j = 0; j < g.node_count(); ++j)
        if (g.directed(j, k) && j != l && !g.adjacent(j, l)) return true;
    return false;
}

// R2: orient j-k into j->k when a chain j->l->k exists.
bool rule2_fires(const Pdag& g, int j, int k) {
    for (int l = 0; l < g.node_count(); ++l)
        if (g.directed(j, l) && g.directed(l, k)) return true;
    return false;
}

// R3: orient j-k into j->k when chains j-l->k and j-i->k exist with l, i
// nonadjacent.
bool rule3_fires(const Pdag& g, int j, int k) {
    const int d = g.node_count();
    for (int l = 0; l < d; ++l) {
        if (!(g.undirected(j, l) && g.directed(l, k))) continue;
        for (int i = l + 1; i < d; ++i)
            if (g.undirected(j, i) && g.directed(i, k) && !g.adjacent(l, i)) return true;
    }
    return false;
}

// R4: orient j-k into j->k when chains j-l->i and l->i->k exist with l, k
// nonadjacent. Needs a shielded quadrilateral, so it can never fire on a
// tree skeleton.
bool rule4_fires(const Pdag& g, int j, int k) {
    const int d = g.node_count();
    for (int l = 0; l < d; ++l) {
        if (l == k || !g.undirected(j, l) || g.adjacent(l, k)) continue;
        for (int i = 0; i < d; ++i)
            if (g.directed(l, i) && g.directed(i, k)) return true;
    }
    return false;
}

Cpdag close_under_meek(Pdag g) {
    const int d = g.node_count();
    bool changed = true;
    while (changed) {
        changed = false;
        for (int rule = 1; rule <= 4 && !changed; ++rule) {
            for (int a = 0; a < d && !changed; ++a) {
                for (int b = a + 1; b < d && !changed; ++b) {
                    if (!g.undirected(a, b)) continue;
                    auto fires = [&](int from, int to) {
                        switch (rule) {
                            case 1: return rule1_fires(g, from, to);
                            case 2: return rule2_fires(g, from, to);
                            case 3: return rule3_fires(g, from, to);
                            default: return rule4_fires(g, from, to);
                        }
                    };
                    if (fires(a, b)) {
                        g.orient(a, b);
                        changed = true;
                    } else if (fires(b, a)) {
                        g.orient(b, a);
                        changed = true;
                    }
                }
            }
        }
    }
    return g.to_cpdag();
}

}  // namespace

Cpdag meek_closure(const Cpdag& pdag) { return close_under_meek(Pdag(pdag)); }

Cpdag cpdag_of(const Dag& g) {
    const int d = g.node_count();
    std::vector<Edge> directed;
    // Unshielded parent pairs mark the v-structure edges.
    for (int l = 0; l < d; ++l) {
        const auto& ps = g.parents(l);
        for (std::size_t a = 0; a < ps.size(); ++a)
            for (std::size_t b = a + 1; b < ps.size(); ++b) {
                const int p = ps[a], q = ps[b];
                if (!g.has_edge(p, q) && !g.has_edge(q, p)) {
                    directed.emplace_back(p, l);
                    directed.emplace_back(q, l);
                }
            }
    }
    std::sort(directed.begin(), directed.end());
    directed.erase(std::unique(directed.begin(), directed.end()), directed.end());
    std::vector<Edge> undirected;
    for (const auto& [p, c] : g.edges())
        if (!std::binary_search(directed.begin(), directed.end(), Edge{p, c}))
            undirected.emplace_back(p, c);
    return meek_closure(Cpdag(d, std::move(directed), std::move(undirected)));
}

int shd(const Skeleton& a, const Skeleton& b) {
    if (a.node_count() != b.node_count())
        throw std::invalid_argument("SHD needs graphs over the same node set");
    int dist = 0;
    for (const auto& e : a.edges())
        if (!b.has_edge(e.first, e.second)) ++dist;
    for (const auto& e : b.edges())
        if (!a.has_edge(e.first, e.second)) ++dist;
    return dist;
}

int shd(const Cpdag& a, const Cpdag& b) {
    if (a.node_count() != b.node_count())
        throw std::invalid_argument("SHD needs graphs over the same node set");
    const int d = a.node_count();
    auto status = [](const Cpdag& g, int i, int j) {
        if (g.has_undirected(i, j)) return 1;
        if (g.has_directed(i, j)) return 2;
        if (g.has_directed(j, i)) return 3;
        return 0;
    };
    int dist = 0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (status(a, i, j) != status(b, i, j)) ++dist;
    return dist;
}

bool exact_recovery(const Skeleton& a, const Skeleton& b) { return shd(a, b) == 0; }
bool exact_recovery(const Cpdag& a, const Cpdag& b) { return shd(a, b) == 0; }

Skeleton tree_from_pruefer(const std::vector<int>& sequence, int d) {
    if (d < 2) throw std::invalid_argument("trees need at least two nodes");
    if (static_cast<int>(sequence.size()) != d - 2)
        throw std::invalid_argument("Pruefer sequence must have d-2 entries");
    for (int a : sequence)
        if (a < 0 || a >= d) throw std::invalid_argument("Pruefer entry out of range");

    std::vector<int> degree(d, 1);
    for (int a : sequence) ++degree[a];
    std::vector<Edge> edges;
    edges.reserve(d - 1);
    int ptr = 0;
    while (degree[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int a : sequence) {
        edges.emplace_back(leaf, a);
        if (--degree[a] == 1 && a < ptr) {
            leaf = a;
        } else {
            ++ptr;
            while (degree[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    edges.emplace_back(leaf, d - 1);
    return Skeleton(d, std::move(edges));
}

Skeleton random_labeled_tree(int d, std::uint64_t seed) {
    if (d < 2) throw std::invalid_argument("trees need at least two nodes");
    Rng rng(seed);
    std::vector<int> seq(d >= 2 ? d - 2 : 0);
    for (int& a : seq) a = rng.uniform_int(d);
    return tree_from_pruefer(seq, d);
}

DirectedTree random_directed_tree(int d, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<int> seq(d >= 2 ? d - 2 : 0);
    for (int& a : seq) a = rng.uniform_int(d);
    const Skeleton tree = tree_from_pruefer(seq, d);
    const int root = rng.uniform_int(d);
    return DirectedTree::orient_from(tree, root);
}

Polytree random_polytree(int d, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<int> seq(d >= 2 ? d - 2 : 0);
    for (int& a : seq) a = rng.uniform_int(d);
    const Skeleton tree = tree_from_pruefer(seq, d);
    std::vector<Edge> directed;
    directed.reserve(tree.edges().size());
    for (const auto& [a, b] : tree.edges())
        directed.emplace_back(rng.coin() ? Edge{a, b} : Edge{b, a});
    return Polytree(Dag(d, std::move(directed)));
}

}  // namespace polytree
