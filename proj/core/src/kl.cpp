#include "polytree/kl.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "polytree/errors.hpp"
#include "polytree/estimators.hpp"
#include "polytree/graph_ops.hpp"

namespace polytree {

namespace {

Eigen::LLT<Eigen::MatrixXd> cholesky_or_throw(const CovarianceMatrix& sigma,
                                              const char* which) {
    Eigen::LLT<Eigen::MatrixXd> llt(sigma.matrix());
    if (llt.info() != Eigen::Success || llt.matrixLLT().diagonal().minCoeff() <= 0.0)
        throw degenerate_error(std::string(which) + " covariance is not positive definite");
    return llt;
}

double log_det(const Eigen::LLT<Eigen::MatrixXd>& llt) {
    return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

}  // namespace

double gaussian_kl(const CovarianceMatrix& sigma0, const CovarianceMatrix& sigma1) {
    if (sigma0.dim() != sigma1.dim())
        throw std::invalid_argument("KL needs matrices of equal dimension");
    const auto llt0 = cholesky_or_throw(sigma0, "first");
    const auto llt1 = cholesky_or_throw(sigma1, "second");
    const int d = sigma0.dim();
    const double trace = llt1.solve(sigma0.matrix()).trace();
    double kl = 0.5 * (trace - d + log_det(llt1) - log_det(llt0));
    if (kl < 0.0 && kl > -1e-9) kl = 0.0;  // roundoff at coinciding inputs
    return kl;
}

TreeProjection project_onto_tree(const CovarianceMatrix& sigma, const DirectedTree& tree) {
    const int d = sigma.dim();
    if (tree.node_count() != d)
        throw std::invalid_argument("tree and covariance dimensions differ");
    cholesky_or_throw(sigma, "input");
    const auto& m = sigma.matrix();
    const auto& edges = tree.dag().edges();
    std::vector<double> betas(edges.size());
    std::vector<double> noise_var(d);
    noise_var[tree.root()] = m(tree.root(), tree.root());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto [p, c] = edges[i];
        if (m(p, p) <= 0.0)
            throw degenerate_error("zero parent variance at node " + std::to_string(p));
        const double beta = m(c, p) / m(p, p);
        betas[i] = beta;
        noise_var[c] = m(c, c) - beta * beta * m(p, p);
        if (noise_var[c] <= 0.0)
            throw degenerate_error("projection residual variance collapsed at node " +
                                   std::to_string(c));
    }
    return TreeProjection{tree, GaussianSem(tree.dag(), std::move(betas), std::move(noise_var))};
}

KlDecomposition kl_decomposition(const CovarianceMatrix& sigma, const DirectedTree& tree) {
    const int d = sigma.dim();
    if (tree.node_count() != d)
        throw std::invalid_argument("tree and covariance dimensions differ");
    const auto llt = cholesky_or_throw(sigma, "input");

    double mi_sum = 0.0;
    for (const auto& [p, c] : tree.dag().edges()) mi_sum += empirical_mi(sigma, p, c).value;

    const double two_pi_e = 2.0 * M_PI * std::exp(1.0);
    const double joint_entropy = 0.5 * (d * std::log(two_pi_e) + log_det(llt));
    double marginal_entropy_sum = 0.0;
    for (int i = 0; i < d; ++i)
        marginal_entropy_sum += 0.5 * std::log(two_pi_e * sigma(i, i));

    double total = -mi_sum - joint_entropy + marginal_entropy_sum;
    if (total < 0.0 && total > -1e-9) total = 0.0;
    return KlDecomposition{mi_sum, joint_entropy, marginal_entropy_sum, total};
}

double kl_to_tree(const CovarianceMatrix& sigma, const DirectedTree& tree) {
    return kl_decomposition(sigma, tree).total;
}

BestTreeResult best_tree_bruteforce(const CovarianceMatrix& sigma) {
    const int d = sigma.dim();
    if (d < 2) throw std::invalid_argument("tree search needs at least two nodes");
    if (d > 8) throw std::invalid_argument("exhaustive search is capped at d = 8");

    // kl_to_tree(sigma, t) = constant - sum of edge mutual informations, so
    // precompute the pairwise table once and score each tree in O(d).
    const auto llt = cholesky_or_throw(sigma, "input");
    double log_var_sum = 0.0;
    for (int i = 0; i < d; ++i) log_var_sum += std::log(sigma(i, i));
    const double constant = 0.5 * (log_var_sum - log_det(llt));
    Eigen::MatrixXd mi = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            mi(i, j) = empirical_mi(sigma, i, j).value;
            mi(j, i) = mi(i, j);
        }

    std::vector<int> seq(d - 2, 0);
    std::vector<int> best_seq = seq;
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        const Skeleton tree = tree_from_pruefer(seq, d);
        double value = constant;
        for (const auto& [a, b] : tree.edges()) value -= mi(a, b);
        if (value < best) {
            best = value;
            best_seq = seq;
        }
        // Next sequence, counting in base d.
        int pos = d - 3;
        while (pos >= 0 && seq[pos] == d - 1) seq[pos--] = 0;
        if (pos < 0) break;
        ++seq[pos];
    }
    if (best < 0.0 && best > -1e-9) best = 0.0;
    return BestTreeResult{DirectedTree::orient_from(tree_from_pruefer(best_seq, d), 0), best};
}

}  // namespace polytree
