#include "polytree/sem.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polytree/errors.hpp"
#include "polytree/rng.hpp"

namespace polytree {

std::string noise_family_name(NoiseFamily f) {
    switch (f) {
        case NoiseFamily::gaussian: return "gaussian";
        case NoiseFamily::uniform: return "uniform";
        case NoiseFamily::laplace: return "laplace";
    }
    throw std::invalid_argument("unknown noise family");
}

NoiseFamily parse_noise_family(const std::string& name) {
    if (name == "gaussian") return NoiseFamily::gaussian;
    if (name == "uniform") return NoiseFamily::uniform;
    if (name == "laplace") return NoiseFamily::laplace;
    throw std::invalid_argument("unknown noise family '" + name + "'");
}

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd sigma, long sample_count)
    : sigma_(std::move(sigma)), sample_count_(sample_count) {
    if (sigma_.rows() != sigma_.cols() || sigma_.rows() == 0)
        throw std::invalid_argument("covariance matrix must be square and nonempty");
    if (!sigma_.allFinite())
        throw std::invalid_argument("covariance matrix has non-finite entries");
    const double scale = std::max(1.0, sigma_.cwiseAbs().maxCoeff());
    const double asym = (sigma_ - sigma_.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale)
        throw std::invalid_argument("covariance matrix is not symmetric");
    sigma_ = ((sigma_ + sigma_.transpose()) / 2.0).eval();
}

bool CovarianceMatrix::is_positive_definite() const {
    Eigen::LLT<Eigen::MatrixXd> llt(sigma_);
    if (llt.info() != Eigen::Success) return false;
    return llt.matrixLLT().diagonal().minCoeff() > 0.0;
}

SampleMatrix::SampleMatrix(Eigen::MatrixXd rows) : data_(std::move(rows)) {
    if (data_.rows() < 1 || data_.cols() < 1)
        throw std::invalid_argument("sample matrix must have at least one row and column");
    if (!data_.allFinite())
        throw std::invalid_argument("sample matrix has non-finite entries");
}

GaussianSem::GaussianSem(Dag graph, std::vector<double> edge_beta, std::vector<double> noise_var)
    : graph_(std::move(graph)), edge_beta_(std::move(edge_beta)), noise_var_(std::move(noise_var)) {
    if (edge_beta_.size() != graph_.edges().size())
        throw std::invalid_argument("one beta per edge required");
    if (noise_var_.size() != static_cast<std::size_t>(graph_.node_count()))
        throw std::invalid_argument("one noise variance per node required");
    for (double b : edge_beta_)
        if (!std::isfinite(b)) throw std::invalid_argument("edge coefficients must be finite");
    for (double v : noise_var_)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("noise variances must be positive and finite");
}

double GaussianSem::beta(int parent, int child) const {
    const auto& edges = graph_.edges();
    const auto it = std::lower_bound(edges.begin(), edges.end(), Edge{parent, child});
    if (it == edges.end() || *it != Edge{parent, child})
        throw std::invalid_argument("no edge (" + std::to_string(parent) + "," +
                                    std::to_string(child) + ")");
    return edge_beta_[static_cast<std::size_t>(it - edges.begin())];
}

namespace {

// Per-node list of (parent, beta), avoiding edge lookups in inner loops.
std::vector<std::vector<std::pair<int, double>>> parent_terms(const GaussianSem& sem) {
    std::vector<std::vector<std::pair<int, double>>> terms(sem.node_count());
    const auto& edges = sem.graph().edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
        terms[edges[i].second].emplace_back(edges[i].first, sem.edge_betas()[i]);
    return terms;
}

}  // namespace

CovarianceMatrix sem_to_covariance(const GaussianSem& sem) {
    const Dag& g = sem.graph();
    const int d = g.node_count();
    const auto terms = parent_terms(sem);
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(d, d);
    std::vector<bool> done(d, false);
    // X_k = sum_j beta_jk X_j + eta_k, so cross moments with already
    // processed nodes and the own variance follow from the parents' rows.
    for (int k : g.topological_order()) {
        for (int m = 0; m < d; ++m) {
            if (!done[m]) continue;
            double cov = 0.0;
            for (const auto& [j, b] : terms[k]) cov += b * sigma(j, m);
            sigma(k, m) = cov;
            sigma(m, k) = cov;
        }
        double var = sem.noise_variances()[k];
        for (const auto& [j, bj] : terms[k])
            for (const auto& [l, bl] : terms[k]) var += bj * bl * sigma(j, l);
        sigma(k, k) = var;
        done[k] = true;
    }
    return CovarianceMatrix(std::move(sigma));
}

SampleMatrix sample(const GaussianSem& sem, long n, NoiseFamily noise, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample count must be at least 1");
    const Dag& g = sem.graph();
    const int d = g.node_count();
    const auto terms = parent_terms(sem);
    std::vector<double> noise_sd(d);
    for (int k = 0; k < d; ++k) noise_sd[k] = std::sqrt(sem.noise_variances()[k]);
    Eigen::MatrixXd rows(n, d);
    Rng rng(seed);
    const auto& topo = g.topological_order();
    for (long i = 0; i < n; ++i) {
        for (int k : topo) {
            double value;
            switch (noise) {
                case NoiseFamily::gaussian:
                    value = rng.normal() * noise_sd[k];
                    break;
                case NoiseFamily::uniform:
                    value = rng.uniform(-1.0, 1.0);
                    break;
                case NoiseFamily::laplace:
                    value = rng.laplace();
                    break;
                default:
                    throw std::invalid_argument("unknown noise family");
            }
            for (const auto& [j, b] : terms[k]) value += b * rows(i, j);
            rows(i, k) = value;
        }
    }
    return SampleMatrix(std::move(rows));
}

Eigen::Matrix2d conditional_covariance(const CovarianceMatrix& sigma,
                                       std::pair<int, int> targets,
                                       const std::vector<int>& given) {
    const int d = sigma.dim();
    const auto [j, k] = targets;
    if (j < 0 || j >= d || k < 0 || k >= d || j == k)
        throw std::invalid_argument("targets must be two distinct nodes");
    for (int s : given) {
        if (s < 0 || s >= d) throw std::invalid_argument("conditioning node out of range");
        if (s == j || s == k)
            throw std::invalid_argument("conditioning set overlaps the targets");
    }

    const Eigen::MatrixXd& m = sigma.matrix();
    Eigen::Matrix2d block;
    block << m(j, j), m(j, k), m(k, j), m(k, k);
    if (given.empty()) return block;

    const int q = static_cast<int>(given.size());
    Eigen::MatrixXd sss(q, q);
    Eigen::MatrixXd cross(q, 2);
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) sss(a, b) = m(given[a], given[b]);
        cross(a, 0) = m(given[a], j);
        cross(a, 1) = m(given[a], k);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(sss);
    if (llt.info() != Eigen::Success || llt.matrixLLT().diagonal().minCoeff() <= 0.0)
        throw degenerate_error("conditioning block is singular");
    block -= (cross.transpose() * llt.solve(cross)).eval();
    return block;
}

}  // namespace polytree
