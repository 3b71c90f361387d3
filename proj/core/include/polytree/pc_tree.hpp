#pragma once

#include <map>
#include <utility>
#include <vector>

#include "polytree/estimators.hpp"
#include "polytree/graph.hpp"
#include "polytree/sem.hpp"

namespace polytree {

/// Separators found for the node pairs NOT in the learned edge set. The
/// empty conditioning set is a distinguished marker, not a node id, so a
/// collider l is correctly oriented when l is absent even if the marker is
/// present.
class SeparationSets {
public:
    struct Entry {
        bool marginal = false;   // the empty set separated the pair
        std::vector<int> nodes;  // single-node separators, sorted
    };

    void set(int a, int b, Entry entry);
    bool has_pair(int a, int b) const;
    const Entry& at(int a, int b) const;
    bool contains_node(int a, int b, int node) const;
    const std::map<std::pair<int, int>, Entry>& all() const { return sets_; }

private:
    std::map<std::pair<int, int>, Entry> sets_;  // keys normalized to a < b
};

struct PcSkeletonResult {
    Skeleton skeleton;  // a tree or forest over the d nodes
    SeparationSets sepsets;
};

/// Skeleton phase: for every pair, test marginal independence and
/// independence given each single other node; keep the edge iff every one of
/// the d-1 tests rejects. All tests are always evaluated (never
/// short-circuited) so the separation sets are complete.
PcSkeletonResult pc_tree_skeleton(const CovarianceMatrix& sigma, double cutoff);
PcSkeletonResult pc_tree_skeleton(const SampleMatrix& data, double cutoff);

/// Orientation phase: v-structures from the separation sets, then the Meek
/// rules to a fixpoint. Adjacencies are never added or removed. Throws
/// orientation_conflict_error when two triples demand opposite directions
/// for one edge.
Cpdag orient(const Skeleton& skeleton, const SeparationSets& sepsets);

Cpdag pc_tree(const CovarianceMatrix& sigma, double cutoff);
Cpdag pc_tree(const SampleMatrix& data, double cutoff);

}  // namespace polytree
