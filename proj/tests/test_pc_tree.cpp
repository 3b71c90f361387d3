#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"
#include "polytree/errors.hpp"
#include "polytree/graph_ops.hpp"
#include "polytree/hard_instances.hpp"
#include "polytree/pc_tree.hpp"

using namespace polytree;
using test_helpers::attach_random_betas;
using test_helpers::chain_sem;

TEST_CASE("collider skeleton and the empty-set separator", "[pc_tree]") {
    const GaussianSem sem(Dag(3, {{0, 2}, {1, 2}}), {0.6, 0.6}, {1, 1, 1});
    const PcSkeletonResult r = pc_tree_skeleton(sem_to_covariance(sem), 0.05);
    CHECK(r.skeleton == Skeleton(3, {{0, 2}, {1, 2}}));
    CHECK(r.sepsets.at(0, 1).marginal);
    CHECK_FALSE(r.sepsets.contains_node(0, 1, 2));
}

TEST_CASE("chain skeleton records the middle separator", "[pc_tree]") {
    const CovarianceMatrix sigma = sem_to_covariance(chain_sem({0.5, 0.5}));
    const PcSkeletonResult r = pc_tree_skeleton(sigma, 0.05);
    CHECK(r.skeleton == Skeleton(3, {{0, 1}, {1, 2}}));
    CHECK(r.sepsets.contains_node(0, 2, 1));
    CHECK_FALSE(r.sepsets.at(0, 2).marginal);
}

TEST_CASE("v-structure orientation from separation sets", "[pc_tree]") {
    SeparationSets seps;
    seps.set(0, 1, {true, {}});  // 2 absent: collider
    const Cpdag c = orient(Skeleton(3, {{0, 2}, {1, 2}}), seps);
    CHECK(c == Cpdag(3, {{0, 2}, {1, 2}}, {}));
}

TEST_CASE("chains stay undirected", "[pc_tree]") {
    SeparationSets seps;
    seps.set(0, 2, {false, {1}});
    const Cpdag c = orient(Skeleton(3, {{0, 1}, {1, 2}}), seps);
    CHECK(c == Cpdag(3, {}, {{0, 1}, {1, 2}}));
}

TEST_CASE("the first Meek rule propagates past a collider", "[pc_tree]") {
    // 0->1<-2 with an extra leaf 1-3: the arrowheads at 1 push 1->3.
    SeparationSets seps;
    seps.set(0, 2, {true, {}});
    seps.set(0, 3, {false, {1}});
    seps.set(2, 3, {false, {1}});
    const Cpdag c = orient(Skeleton(4, {{0, 1}, {1, 2}, {1, 3}}), seps);
    CHECK(c == Cpdag(4, {{0, 1}, {1, 3}, {2, 1}}, {}));
}

TEST_CASE("orientation keeps the adjacency structure", "[pc_tree]") {
    Rng rng(81);
    for (int rep = 0; rep < 30; ++rep) {
        const int d = 4 + rng.uniform_int(5);
        const Polytree pt = random_polytree(d, rng.next_u64());
        const GaussianSem sem = attach_random_betas(pt.dag(), rng);
        const double c = faithfulness_parameter(sem);
        const PcSkeletonResult r = pc_tree_skeleton(sem_to_covariance(sem), c / 2.0);
        const Cpdag cpdag = orient(r.skeleton, r.sepsets);
        CHECK(cpdag.skeleton() == r.skeleton);
    }
}

TEST_CASE("conflicting v-structure demands fail loudly", "[pc_tree]") {
    // Path 0-1-2-3 with inconsistent separators: (0,2) demands 0->1<-2 and
    // (1,3) demands 1->2<-3, forcing both directions on 1-2.
    SeparationSets seps;
    seps.set(0, 2, {true, {}});
    seps.set(1, 3, {true, {}});
    seps.set(0, 3, {true, {}});
    CHECK_THROWS_AS(orient(Skeleton(4, {{0, 1}, {1, 2}, {2, 3}}), seps),
                    orientation_conflict_error);
}

TEST_CASE("two dependent nodes give one undirected edge", "[pc_tree]") {
    const CovarianceMatrix sigma = sem_to_covariance(chain_sem({0.5}));
    CHECK(pc_tree(sigma, 0.05) == Cpdag(2, {}, {{0, 1}}));
}

TEST_CASE("oracle equivalence with the graphical CPDAG", "[pc_tree]") {
    Rng rng(82);
    for (int rep = 0; rep < 50; ++rep) {
        const int d = 4 + rng.uniform_int(5);  // 4..8
        const Polytree pt = random_polytree(d, rng.next_u64());
        const GaussianSem sem = attach_random_betas(pt.dag(), rng);
        const double c = faithfulness_parameter(sem);
        REQUIRE(c > 0.0);
        const Cpdag learned = pc_tree(sem_to_covariance(sem), c / 2.0);
        CHECK(learned == cpdag_of(pt.dag()));
    }
}

TEST_CASE("disconnected models come back as forests", "[pc_tree]") {
    // Two separate dependent pairs; the learned edge set must not be padded
    // to a spanning tree.
    const GaussianSem sem(Dag(4, {{0, 1}, {2, 3}}), {0.6, 0.6}, {1, 1, 1, 1});
    const PcSkeletonResult r = pc_tree_skeleton(sem_to_covariance(sem), 0.05);
    CHECK(r.skeleton == Skeleton(4, {{0, 1}, {2, 3}}));
    CHECK(r.skeleton.is_forest());
    CHECK_FALSE(r.skeleton.is_tree());
}

TEST_CASE("edge decisions are local to the pair's tests", "[pc_tree]") {
    // Relabeling nodes commutes with the skeleton phase.
    Rng rng(83);
    const GaussianSem sem = attach_random_betas(random_polytree(6, 909).dag(), rng);
    const CovarianceMatrix sigma = sem_to_covariance(sem);
    const std::vector<int> perm{5, 3, 0, 1, 4, 2};
    Eigen::MatrixXd permuted(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) permuted(perm[i], perm[j]) = sigma(i, j);

    const Skeleton original = pc_tree_skeleton(sigma, 0.05).skeleton;
    const Skeleton relabeled = pc_tree_skeleton(CovarianceMatrix{permuted}, 0.05).skeleton;
    std::vector<Edge> mapped;
    for (const auto& [a, b] : original.edges()) mapped.emplace_back(perm[a], perm[b]);
    CHECK(relabeled == Skeleton(6, mapped));
}

TEST_CASE("sampled CPDAG recovery is frequent at calibrated n", "[pc_tree]") {
    // n = K log(d)/c^2 with K frozen at 60 recovers the exact CPDAG most of
    // the time on the constant-coefficient ensemble.
    const double c = 0.3;
    const int d = 8;
    const long n = static_cast<long>(60.0 * std::log(d) / (c * c));
    Rng rng(84);
    int hits = 0;
    const int trials = 40;
    for (int rep = 0; rep < trials; ++rep) {
        const GaussianSem sem = structure_lb_instance(d, c, rng.next_u64());
        const SampleMatrix data = sample(sem, n, NoiseFamily::gaussian, rng.next_u64());
        try {
            if (pc_tree(data, c / 2.0) == cpdag_of(sem.graph())) ++hits;
        } catch (const orientation_conflict_error&) {
        }
    }
    CHECK(hits >= trials * 3 / 4);
}
