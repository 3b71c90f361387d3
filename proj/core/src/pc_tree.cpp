#include "polytree/pc_tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "polytree/errors.hpp"
#include "polytree/graph_ops.hpp"

namespace polytree {

namespace {

std::pair<int, int> ordered(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

}  // namespace

void SeparationSets::set(int a, int b, Entry entry) {
    std::sort(entry.nodes.begin(), entry.nodes.end());
    sets_[ordered(a, b)] = std::move(entry);
}

bool SeparationSets::has_pair(int a, int b) const { return sets_.count(ordered(a, b)) > 0; }

const SeparationSets::Entry& SeparationSets::at(int a, int b) const {
    const auto it = sets_.find(ordered(a, b));
    if (it == sets_.end())
        throw std::invalid_argument("no separation set recorded for pair (" +
                                    std::to_string(a) + "," + std::to_string(b) + ")");
    return it->second;
}

bool SeparationSets::contains_node(int a, int b, int node) const {
    const auto& nodes = at(a, b).nodes;
    return std::binary_search(nodes.begin(), nodes.end(), node);
}

PcSkeletonResult pc_tree_skeleton(const CovarianceMatrix& sigma, double cutoff) {
    const int d = sigma.dim();
    if (d < 2) throw std::invalid_argument("learning needs at least two nodes");
    if (!(cutoff > 0.0 && cutoff < 1.0))
        throw std::invalid_argument("cutoff must lie in (0,1)");

    std::vector<Edge> edges;
    SeparationSets sepsets;
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            SeparationSets::Entry accepting;
            bool all_reject = true;
            auto run_test = [&](const std::vector<int>& given) {
                try {
                    return ci_test(partial_correlation(sigma, j, k, given), cutoff);
                } catch (const degenerate_error& e) {
                    throw degenerate_error(std::string(e.what()) + " [while testing pair (" +
                                           std::to_string(j) + "," + std::to_string(k) + ")]");
                }
            };
            if (run_test({}).outcome == CiOutcome::accept_independence) {
                accepting.marginal = true;
                all_reject = false;
            }
            for (int l = 0; l < d; ++l) {
                if (l == j || l == k) continue;
                if (run_test({l}).outcome == CiOutcome::accept_independence) {
                    accepting.nodes.push_back(l);
                    all_reject = false;
                }
            }
            if (all_reject)
                edges.emplace_back(j, k);
            else
                sepsets.set(j, k, std::move(accepting));
        }
    }
    return PcSkeletonResult{Skeleton(d, std::move(edges)), std::move(sepsets)};
}

PcSkeletonResult pc_tree_skeleton(const SampleMatrix& data, double cutoff) {
    return pc_tree_skeleton(sample_covariance(data), cutoff);
}

Cpdag orient(const Skeleton& skeleton, const SeparationSets& sepsets) {
    const int d = skeleton.node_count();

    struct Demand {
        int from, to;
        int triple_j, triple_l, triple_k;
    };
    std::vector<Demand> demands;
    for (int l = 0; l < d; ++l) {
        const auto& nbrs = skeleton.neighbors(l);
        for (std::size_t a = 0; a < nbrs.size(); ++a) {
            for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
                int j = nbrs[a], k = nbrs[b];
                if (j > k) std::swap(j, k);
                if (skeleton.has_edge(j, k)) continue;  // shielded
                if (!sepsets.has_pair(j, k))
                    throw std::invalid_argument(
                        "missing separation set for nonadjacent pair (" + std::to_string(j) +
                        "," + std::to_string(k) + ")");
                if (!sepsets.contains_node(j, k, l)) {
                    demands.push_back({j, l, j, l, k});
                    demands.push_back({k, l, j, l, k});
                }
            }
        }
    }

    // status per ordered pair: 0 none, +1 demanded
    std::vector<Edge> directed;
    for (const auto& dm : demands) directed.emplace_back(dm.from, dm.to);
    std::sort(directed.begin(), directed.end());
    directed.erase(std::unique(directed.begin(), directed.end()), directed.end());
    for (const auto& [from, to] : directed) {
        if (std::binary_search(directed.begin(), directed.end(), Edge{to, from})) {
            std::string msg = "conflicting v-structure orientations for edge (" +
                              std::to_string(from) + "," + std::to_string(to) + "): triples";
            for (const auto& dm : demands)
                if ((dm.from == from && dm.to == to) || (dm.from == to && dm.to == from))
                    msg += " (" + std::to_string(dm.triple_j) + "-" + std::to_string(dm.triple_l) +
                           "-" + std::to_string(dm.triple_k) + ")";
            throw orientation_conflict_error(msg, ordered(from, to));
        }
    }

    // Demanded arrowheads must be realizable by a DAG; on noisy skeletons
    // the v-structure demands can close a directed cycle, which is the same
    // kind of inconsistency as a two-cycle.
    {
        std::vector<int> indeg(d, 0);
        for (const auto& [from, to] : directed) ++indeg[to];
        std::vector<int> ready;
        for (int v = 0; v < d; ++v)
            if (indeg[v] == 0) ready.push_back(v);
        int removed = 0;
        while (!ready.empty()) {
            const int v = ready.back();
            ready.pop_back();
            ++removed;
            for (const auto& [from, to] : directed)
                if (from == v && --indeg[to] == 0) ready.push_back(to);
        }
        if (removed != d) {
            for (const auto& [from, to] : directed)
                if (indeg[from] > 0 && indeg[to] > 0)
                    throw orientation_conflict_error(
                        "v-structure orientations form a directed cycle through edge (" +
                            std::to_string(from) + "," + std::to_string(to) + ")",
                        ordered(from, to));
        }
    }

    std::vector<Edge> undirected;
    for (const auto& [a, b] : skeleton.edges())
        if (!std::binary_search(directed.begin(), directed.end(), Edge{a, b}) &&
            !std::binary_search(directed.begin(), directed.end(), Edge{b, a}))
            undirected.emplace_back(a, b);
    try {
        return meek_closure(Cpdag(d, std::move(directed), std::move(undirected)));
    } catch (const std::invalid_argument& e) {
        // Unrepresentable closure states only arise from inconsistent tests.
        throw orientation_conflict_error(
            std::string("orientation rules reached an inconsistent state: ") + e.what(),
            {0, 0});
    }
}

Cpdag pc_tree(const CovarianceMatrix& sigma, double cutoff) {
    PcSkeletonResult r = pc_tree_skeleton(sigma, cutoff);
    return orient(r.skeleton, r.sepsets);
}

Cpdag pc_tree(const SampleMatrix& data, double cutoff) {
    return pc_tree(sample_covariance(data), cutoff);
}

}  // namespace polytree
