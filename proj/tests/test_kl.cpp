#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"
#include "polytree/chow_liu.hpp"
#include "polytree/graph_ops.hpp"
#include "polytree/kl.hpp"

using namespace polytree;
using test_helpers::attach_random_betas;
using test_helpers::chain_sem;
using test_helpers::random_pd_covariance;

TEST_CASE("KL of a distribution to itself is zero", "[kl]") {
    Rng rng(61);
    const CovarianceMatrix sigma = random_pd_covariance(5, rng);
    CHECK(gaussian_kl(sigma, sigma) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("KL between diagonal Gaussians matches the coordinate form", "[kl]") {
    const int d = 3;
    const CovarianceMatrix id{Eigen::MatrixXd::Identity(d, d)};
    const CovarianceMatrix twice{Eigen::MatrixXd(2.0 * Eigen::MatrixXd::Identity(d, d))};
    const double per_coordinate = 0.5 * (0.5 - 1.0 + std::log(2.0));
    CHECK(gaussian_kl(id, twice) == Catch::Approx(d * per_coordinate).margin(1e-12));
}

TEST_CASE("KL is nonnegative on random pairs", "[kl]") {
    Rng rng(62);
    for (int rep = 0; rep < 50; ++rep) {
        const int d = 2 + rng.uniform_int(6);
        const CovarianceMatrix a = random_pd_covariance(d, rng);
        const CovarianceMatrix b = random_pd_covariance(d, rng);
        CHECK(gaussian_kl(a, b) >= 0.0);
    }
}

TEST_CASE("projection reproduces tree-structured inputs exactly", "[kl]") {
    Rng rng(63);
    for (int rep = 0; rep < 20; ++rep) {
        const int d = 3 + rng.uniform_int(5);
        const DirectedTree tree = random_directed_tree(d, rng.next_u64());
        const GaussianSem sem = attach_random_betas(tree.dag(), rng);
        const CovarianceMatrix sigma = sem_to_covariance(sem);
        const TreeProjection proj = project_onto_tree(sigma, tree);
        const CovarianceMatrix back = sem_to_covariance(proj.projected);
        CHECK((back.matrix() - sigma.matrix()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(kl_to_tree(sigma, tree) == Catch::Approx(0.0).margin(1e-12));
    }
}

TEST_CASE("projection preserves variances and tree-edge covariances", "[kl]") {
    Rng rng(64);
    const CovarianceMatrix sigma = random_pd_covariance(6, rng);
    const DirectedTree tree = random_directed_tree(6, rng.next_u64());
    const CovarianceMatrix implied = sem_to_covariance(project_onto_tree(sigma, tree).projected);
    for (int v = 0; v < 6; ++v)
        CHECK(implied(v, v) == Catch::Approx(sigma(v, v)).margin(1e-12));
    for (const auto& [p, c] : tree.dag().edges())
        CHECK(implied(p, c) == Catch::Approx(sigma(p, c)).margin(1e-12));
}

TEST_CASE("decomposition equals the direct divergence to the projection", "[kl]") {
    Rng rng(65);
    for (int rep = 0; rep < 100; ++rep) {
        const int d = 2 + rng.uniform_int(6);  // 2..7
        const CovarianceMatrix sigma = random_pd_covariance(d, rng);
        const DirectedTree tree = random_directed_tree(d, rng.next_u64());
        const double via_decomposition = kl_to_tree(sigma, tree);
        const double direct =
            gaussian_kl(sigma, sem_to_covariance(project_onto_tree(sigma, tree).projected));
        CHECK(via_decomposition == Catch::Approx(direct).margin(1e-9));
    }
}

TEST_CASE("identity covariance has zero divergence to every tree", "[kl]") {
    const CovarianceMatrix id{Eigen::MatrixXd::Identity(5, 5)};
    Rng rng(66);
    for (int rep = 0; rep < 10; ++rep)
        CHECK(kl_to_tree(id, random_directed_tree(5, rng.next_u64())) ==
              Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("divergence to a tree depends only on the skeleton", "[kl]") {
    Rng rng(67);
    const CovarianceMatrix sigma = random_pd_covariance(6, rng);
    const Skeleton skel = random_labeled_tree(6, rng.next_u64());
    const double reference = kl_to_tree(sigma, DirectedTree::orient_from(skel, 0));
    for (int root = 1; root < 6; ++root)
        CHECK(kl_to_tree(sigma, DirectedTree::orient_from(skel, root)) ==
              Catch::Approx(reference).margin(1e-12));
}

TEST_CASE("exhaustive search returns the minimizer", "[kl]") {
    Rng rng(68);
    for (int rep = 0; rep < 10; ++rep) {
        const int d = 4 + rng.uniform_int(3);  // 4..6
        const CovarianceMatrix sigma = random_pd_covariance(d, rng);
        const BestTreeResult best = best_tree_bruteforce(sigma);
        for (int check = 0; check < 50; ++check) {
            const DirectedTree t = random_directed_tree(d, rng.next_u64());
            CHECK(best.kl <= kl_to_tree(sigma, t) + 1e-10);
        }
    }
}

TEST_CASE("tree-structured inputs minimize at their own skeleton", "[kl]") {
    Rng rng(69);
    const GaussianSem sem = attach_random_betas(random_directed_tree(6, rng.next_u64()).dag(), rng);
    const CovarianceMatrix sigma = sem_to_covariance(sem);
    const BestTreeResult best = best_tree_bruteforce(sigma);
    CHECK(best.kl == Catch::Approx(0.0).margin(1e-10));
    CHECK(skeleton_of(best.tree.dag()) == skeleton_of(sem.graph()));
}

TEST_CASE("exhaustive search agrees with the spanning-tree learner", "[kl]") {
    Rng rng(70);
    for (int rep = 0; rep < 20; ++rep) {
        const CovarianceMatrix sigma = random_pd_covariance(6, rng);
        const ChowLiuResult learned = chow_liu(sigma);
        const BestTreeResult best = best_tree_bruteforce(sigma);
        CHECK(kl_to_tree(sigma, learned.tree) == Catch::Approx(best.kl).margin(1e-9));
    }
}

TEST_CASE("dimension caps and mismatches are rejected", "[kl]") {
    Rng rng(71);
    const CovarianceMatrix sigma = random_pd_covariance(9, rng);
    CHECK_THROWS_AS(best_tree_bruteforce(sigma), std::invalid_argument);
    const CovarianceMatrix small = random_pd_covariance(3, rng);
    CHECK_THROWS_AS(gaussian_kl(sigma, small), std::invalid_argument);
}
