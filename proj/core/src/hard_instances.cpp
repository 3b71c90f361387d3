#include "polytree/hard_instances.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "polytree/errors.hpp"
#include "polytree/estimators.hpp"
#include "polytree/graph_ops.hpp"
#include "polytree/rng.hpp"

namespace polytree {

GadgetPair nonrealizable_gadget(double epsilon) {
    if (!(epsilon >= 0.0) || epsilon >= 1.0)
        throw std::invalid_argument("epsilon must lie in [0,1)");
    const double a = 1.0 + epsilon;
    // Hub H has unit variance; each observed variable is (weight)*H + unit
    // noise, so cov(U,V) = w_U * w_V and var(U) = w_U^2 + 1.
    Eigen::Matrix3d s1, s2;
    s1 << a * a + 1.0, a, a,
          a, 2.0, 1.0,
          a, 1.0, 2.0;
    s2 << 2.0, a, 1.0,
          a, a * a + 1.0, a,
          1.0, a, 2.0;
    return GadgetPair{CovarianceMatrix(s1), CovarianceMatrix(s2), epsilon};
}

GadgetPair realizable_gadget(double epsilon) {
    if (!(epsilon > 0.0) || epsilon >= 1.0)
        throw std::invalid_argument("epsilon must lie in (0,1)");
    const double b = 1.0 - std::sqrt(epsilon);  // X -> Y coefficient
    const double vy = b * b + epsilon;          // noise std sqrt(eps), variance eps
    Eigen::Matrix3d s1, s2;
    // First: Z = X/2 + noise of std 1/2.
    s1 << 1.0, b, 0.5,
          b, vy, 0.5 * b,
          0.5, 0.5 * b, 0.5;
    // Second: Z = Y/2 + noise of std 1/2.
    s2 << 1.0, b, 0.5 * b,
          b, vy, 0.5 * vy,
          0.5 * b, 0.5 * vy, 0.25 * vy + 0.25;
    return GadgetPair{CovarianceMatrix(s1), CovarianceMatrix(s2), epsilon};
}

GaussianSem structure_lb_instance(int d, double c, std::uint64_t seed) {
    if (d < 2) throw std::invalid_argument("instance needs at least two nodes");
    if (!(c > 0.0) || c * c > 0.2)
        throw std::invalid_argument("c must be positive with c^2 <= 1/5");
    const Skeleton tree = random_labeled_tree(d, seed);
    const DirectedTree directed = DirectedTree::orient_from(tree, 0);
    const double beta = std::sqrt(2.0) * c;
    std::vector<double> betas(directed.dag().edges().size(), beta);
    std::vector<double> noise(d, 1.0);
    return GaussianSem(directed.dag(), std::move(betas), std::move(noise));
}

double faithfulness_parameter(const GaussianSem& sem) {
    const Dag& g = sem.graph();
    const int d = g.node_count();
    const Skeleton skel = skeleton_of(g);
    if (!skel.is_forest())
        throw std::invalid_argument("faithfulness parameter is defined for polytrees/forests");
    if (skel.edges().empty()) return std::numeric_limits<double>::infinity();

    const CovarianceMatrix sigma = sem_to_covariance(sem);
    double c = std::numeric_limits<double>::infinity();
    auto visit = [&](int j, int k, const std::vector<int>& given) {
        c = std::min(c, std::abs(partial_correlation(sigma, j, k, given).value));
    };
    for (const auto& [j, k] : skel.edges()) {
        visit(j, k, {});
        for (int l = 0; l < d; ++l)
            if (l != j && l != k) visit(j, k, {l});
    }
    for (int l = 0; l < d; ++l) {
        const auto& ps = g.parents(l);
        for (std::size_t a = 0; a < ps.size(); ++a)
            for (std::size_t b = a + 1; b < ps.size(); ++b)
                if (!skel.has_edge(ps[a], ps[b])) visit(ps[a], ps[b], {l});
    }
    return c;
}

std::vector<double> agnostic_betas(int d, double z_scale, Rng& rng) {
    if (d < 2) throw std::invalid_argument("need at least two nodes");
    if (z_scale < 0.0) throw std::invalid_argument("z_scale must be nonnegative");
    std::vector<double> betas(d - 1);
    for (double& b : betas) {
        const double magnitude = rng.uniform(0.1, 0.5);
        b = rng.coin() ? magnitude : -magnitude;
    }
    const double z = z_scale > 0.0 ? rng.uniform(-z_scale, z_scale) : 0.0;
    for (double& b : betas) b += z;
    return betas;
}

std::vector<double> agnostic_beta_sampler(int d, double z_scale, std::uint64_t seed) {
    Rng rng(seed);
    return agnostic_betas(d, z_scale, rng);
}

}  // namespace polytree
