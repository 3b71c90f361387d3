#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "helpers.hpp"
#include "polytree/estimators.hpp"
#include "polytree/graph_ops.hpp"

using namespace polytree;

TEST_CASE("d-separation on the canonical three-node motifs", "[graphs]") {
    const Dag collider(3, {{0, 2}, {1, 2}});
    CHECK(d_separated(collider, 0, 1, {}));
    CHECK_FALSE(d_separated(collider, 0, 1, {2}));
    const Dag chain(3, {{0, 1}, {1, 2}});
    CHECK(d_separated(chain, 0, 2, {1}));
    CHECK_FALSE(d_separated(chain, 0, 2, {}));
    const Dag fork(3, {{1, 0}, {1, 2}});
    CHECK(d_separated(fork, 0, 2, {1}));
    CHECK_FALSE(d_separated(fork, 0, 2, {}));
}

TEST_CASE("d-separation through a descendant of a collider", "[graphs]") {
    // 0 -> 2 <- 1 with 2 -> 3: conditioning on the descendant 3 activates
    // the collider path.
    const Dag g(4, {{0, 2}, {1, 2}, {2, 3}});
    CHECK(d_separated(g, 0, 1, {}));
    CHECK_FALSE(d_separated(g, 0, 1, {3}));
    CHECK_THROWS_AS(d_separated(g, 0, 0, {}), std::invalid_argument);
    CHECK_THROWS_AS(d_separated(g, 0, 1, {0}), std::invalid_argument);
}

TEST_CASE("graph types validate their structural invariants", "[graphs]") {
    CHECK_THROWS_AS(DirectedTree(0, Dag(3, {{0, 1}, {2, 1}})), std::invalid_argument);
    CHECK_THROWS_AS(DirectedTree(1, Dag(3, {{0, 1}, {1, 2}})), std::invalid_argument);
    CHECK_THROWS_AS(Polytree(Dag(4, {{0, 1}, {2, 3}})), std::invalid_argument);
    CHECK_THROWS_AS(Cpdag(3, {{0, 1}, {1, 2}, {2, 0}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Cpdag(3, {{0, 1}}, {{0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(UndirectedTree(3, {{0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(conditional_covariance(
                        sem_to_covariance(test_helpers::chain_sem({0.5, 0.5})), {0, 0}, {}),
                    std::invalid_argument);
}

TEST_CASE("CPDAG of the basic motifs", "[graphs]") {
    CHECK(cpdag_of(Dag(3, {{0, 1}, {1, 2}})) == Cpdag(3, {}, {{0, 1}, {1, 2}}));
    CHECK(cpdag_of(Dag(3, {{0, 2}, {1, 2}})) == Cpdag(3, {{0, 2}, {1, 2}}, {}));
}

TEST_CASE("directed trees have fully undirected CPDAGs", "[graphs]") {
    Rng rng(41);
    for (int rep = 0; rep < 30; ++rep) {
        const int d = 3 + rng.uniform_int(7);
        const DirectedTree tree = random_directed_tree(d, rng.next_u64());
        const Cpdag c = cpdag_of(tree.dag());
        CHECK(c.directed_edges().empty());
        CHECK(c.skeleton() == skeleton_of(tree.dag()));
    }
}

TEST_CASE("equal skeleton and v-structures give the identical CPDAG", "[graphs]") {
    // Enumerate all orientations of a fixed 5-node tree skeleton and group
    // them by their v-structure sets.
    const Skeleton tree(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}});
    std::map<std::set<std::pair<int, std::pair<int, int>>>, Cpdag> groups;
    for (int mask = 0; mask < 16; ++mask) {
        std::vector<Edge> edges;
        int bit = 0;
        for (const auto& [a, b] : tree.edges()) {
            edges.emplace_back((mask >> bit) & 1 ? Edge{b, a} : Edge{a, b});
            ++bit;
        }
        const Dag dag(5, edges);
        std::set<std::pair<int, std::pair<int, int>>> vstructs;
        for (int l = 0; l < 5; ++l) {
            const auto& ps = dag.parents(l);
            for (std::size_t x = 0; x < ps.size(); ++x)
                for (std::size_t y = x + 1; y < ps.size(); ++y) {
                    const int p = std::min(ps[x], ps[y]), q = std::max(ps[x], ps[y]);
                    if (!tree.has_edge(p, q)) vstructs.insert({l, {p, q}});
                }
        }
        const Cpdag c = cpdag_of(dag);
        const auto [it, inserted] = groups.emplace(vstructs, c);
        if (!inserted) CHECK(it->second == c);
    }
    CHECK(groups.size() > 1);
}

TEST_CASE("Meek rules orient their canonical configurations", "[graphs]") {
    // R1: 0->1 with 1-2 and 0,2 nonadjacent.
    CHECK(meek_closure(Cpdag(3, {{0, 1}}, {{1, 2}})) == Cpdag(3, {{0, 1}, {1, 2}}, {}));
    // R2: 0->1->2 with 0-2.
    CHECK(meek_closure(Cpdag(3, {{0, 1}, {1, 2}}, {{0, 2}})) ==
          Cpdag(3, {{0, 1}, {0, 2}, {1, 2}}, {}));
    // R3: 0-1, 0-2, 0-3 with 2->1, 3->1 and 2,3 nonadjacent.
    const Cpdag r3 = meek_closure(Cpdag(4, {{2, 1}, {3, 1}}, {{0, 1}, {0, 2}, {0, 3}}));
    CHECK(r3.has_directed(0, 1));
    // R4: 0-1, 0-2, 0-3 with 2->3->1 and 2,1 nonadjacent.
    const Cpdag r4 = meek_closure(Cpdag(4, {{2, 3}, {3, 1}}, {{0, 1}, {0, 2}, {0, 3}}));
    CHECK(r4.has_directed(0, 1));
}

TEST_CASE("Meek closure is a fixpoint", "[graphs]") {
    Rng rng(42);
    for (int rep = 0; rep < 20; ++rep) {
        const int d = 4 + rng.uniform_int(5);
        const Cpdag c = cpdag_of(random_polytree(d, rng.next_u64()).dag());
        CHECK(meek_closure(c) == c);
    }
}

TEST_CASE("skeleton SHD counts the symmetric difference", "[graphs]") {
    const Skeleton a(3, {{0, 1}});
    const Skeleton b(3, {{1, 2}});
    CHECK(shd(a, a) == 0);
    CHECK(shd(a, b) == 2);
    CHECK(exact_recovery(a, a));
    CHECK_FALSE(exact_recovery(a, b));
}

TEST_CASE("CPDAG SHD counts per-pair status mismatches", "[graphs]") {
    const Cpdag directed(2, {{0, 1}}, {});
    const Cpdag undirected(2, {}, {{0, 1}});
    const Cpdag reversed(2, {{1, 0}}, {});
    CHECK(shd(directed, undirected) == 1);
    CHECK(shd(directed, reversed) == 1);
    CHECK(shd(directed, directed) == 0);
}

TEST_CASE("SHD behaves like a metric", "[graphs]") {
    Rng rng(43);
    for (int rep = 0; rep < 50; ++rep) {
        const int d = 4 + rng.uniform_int(4);
        const Cpdag a = cpdag_of(random_polytree(d, rng.next_u64()).dag());
        const Cpdag b = cpdag_of(random_polytree(d, rng.next_u64()).dag());
        const Cpdag c = cpdag_of(random_polytree(d, rng.next_u64()).dag());
        CHECK(shd(a, b) == shd(b, a));
        CHECK(shd(a, b) >= 0);
        CHECK((shd(a, b) == 0) == (a == b));
        CHECK(shd(a, c) <= shd(a, b) + shd(b, c));
    }
}

TEST_CASE("Pruefer decoding covers the textbook cases", "[graphs]") {
    CHECK(tree_from_pruefer({}, 2) == Skeleton(2, {{0, 1}}));
    CHECK(tree_from_pruefer({0, 0}, 4) == Skeleton(4, {{0, 1}, {0, 2}, {0, 3}}));
    CHECK(tree_from_pruefer({1, 2}, 4) == Skeleton(4, {{0, 1}, {1, 2}, {2, 3}}));
}

TEST_CASE("random labeled trees are uniform over the 16 trees at d=4", "[graphs]") {
    std::map<std::vector<Edge>, int> counts;
    const int draws = 40000;
    Rng seeds(44);
    for (int i = 0; i < draws; ++i)
        ++counts[random_labeled_tree(4, seeds.next_u64()).edges()];
    CHECK(counts.size() == 16);  // Cayley: 4^2
    for (const auto& [edges, count] : counts)
        CHECK(std::abs(count / static_cast<double>(draws) - 1.0 / 16.0) < 0.01);
}

TEST_CASE("random tree output is always spanning", "[graphs]") {
    Rng rng(45);
    for (int rep = 0; rep < 50; ++rep) {
        const int d = 2 + rng.uniform_int(11);
        const Skeleton t = random_labeled_tree(d, rng.next_u64());
        CHECK(static_cast<int>(t.edges().size()) == d - 1);
        CHECK(t.is_tree());
    }
}

TEST_CASE("random directed trees have a single root", "[graphs]") {
    Rng rng(46);
    for (int rep = 0; rep < 50; ++rep) {
        const int d = 2 + rng.uniform_int(9);
        const DirectedTree t = random_directed_tree(d, rng.next_u64());
        int roots = 0;
        for (int v = 0; v < d; ++v)
            if (t.dag().parents(v).empty()) ++roots;
        CHECK(roots == 1);
    }
}

TEST_CASE("polytree Markov structure shows up in the exact covariance", "[graphs]") {
    // d-separation implies a vanishing partial correlation for every
    // conditioning set of size up to 2 (the Markov direction).
    Rng rng(47);
    for (int rep = 0; rep < 15; ++rep) {
        const int d = 4 + rng.uniform_int(4);  // 4..7
        const Polytree pt = random_polytree(d, rng.next_u64());
        const GaussianSem sem = test_helpers::attach_random_betas(pt.dag(), rng);
        const CovarianceMatrix sigma = sem_to_covariance(sem);
        for (int j = 0; j < d; ++j)
            for (int k = j + 1; k < d; ++k) {
                std::vector<std::vector<int>> sets{{}};
                for (int a = 0; a < d; ++a) {
                    if (a == j || a == k) continue;
                    sets.push_back({a});
                    for (int b = a + 1; b < d; ++b)
                        if (b != j && b != k) sets.push_back({a, b});
                }
                for (const auto& s : sets)
                    if (d_separated(pt.dag(), j, k, s))
                        CHECK(std::abs(partial_correlation(sigma, j, k, s).value) < 1e-10);
            }
    }
}
