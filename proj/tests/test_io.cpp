#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "helpers.hpp"
#include "polytree/graph_ops.hpp"
#include "polytree/io.hpp"

using namespace polytree;

TEST_CASE("model JSON round trip", "[io]") {
    const GaussianSem sem(Dag(3, {{0, 1}, {0, 2}}), {0.5, -0.25}, {1.0, 0.5, 2.0});
    const GaussianSem back = model_from_json(model_to_json(sem));
    CHECK(back.graph() == sem.graph());
    CHECK(back.edge_betas() == sem.edge_betas());
    CHECK(back.noise_variances() == sem.noise_variances());
}

TEST_CASE("model JSON accepts unsorted edges", "[io]") {
    const GaussianSem sem = model_from_json(
        R"({"d": 3, "edges": [[1, 2, 0.75], [0, 1, -0.5]], "noise_var": [1, 1, 1]})");
    CHECK(sem.beta(0, 1) == -0.5);
    CHECK(sem.beta(1, 2) == 0.75);
}

TEST_CASE("tree, skeleton and CPDAG JSON round trips", "[io]") {
    const DirectedTree tree = random_directed_tree(6, 99);
    CHECK(directed_tree_from_json(directed_tree_to_json(tree)) == tree);

    const Skeleton skel = random_labeled_tree(6, 7);
    CHECK(skeleton_from_json(skeleton_to_json(skel)) == skel);

    const Cpdag cpdag = cpdag_of(random_polytree(6, 5).dag());
    CHECK(cpdag_from_json(cpdag_to_json(cpdag)) == cpdag);
}

TEST_CASE("malformed documents are rejected as invalid arguments", "[io]") {
    CHECK_THROWS_AS(model_from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(model_from_json(R"({"d": 2})"), std::invalid_argument);
    CHECK_THROWS_AS(model_from_json(R"({"d": 2, "edges": [[0, 1]], "noise_var": [1, 1]})"),
                    std::invalid_argument);  // missing beta in the triple
    CHECK_THROWS_AS(cpdag_from_json(R"({"d": 2, "directed": [[0, 1], [1, 0]],
                                        "undirected": []})"),
                    std::invalid_argument);  // both directions
}

TEST_CASE("sample CSV round trip preserves values", "[io]") {
    const SampleMatrix data =
        sample(test_helpers::chain_sem({0.5, -0.4}), 25, NoiseFamily::laplace, 11);
    std::stringstream buf;
    write_sample_csv(data, buf, false);
    const SampleMatrix back = read_sample_csv(buf);
    CHECK(back.rows() == data.rows());
    CHECK((back.matrix() - data.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("CSV header is emitted and skipped", "[io]") {
    const SampleMatrix data = sample(test_helpers::chain_sem({0.5}), 3, NoiseFamily::gaussian, 1);
    std::stringstream buf;
    write_sample_csv(data, buf, true);
    const std::string text = buf.str();
    CHECK(text.rfind("x0,x1\n", 0) == 0);
    std::stringstream again(text);
    CHECK(read_sample_csv(again).rows() == 3);
}

TEST_CASE("ragged and empty CSV inputs are rejected", "[io]") {
    std::stringstream ragged("1,2\n3\n");
    CHECK_THROWS_AS(read_sample_csv(ragged), std::invalid_argument);
    std::stringstream empty("");
    CHECK_THROWS_AS(read_sample_csv(empty), std::invalid_argument);
}
