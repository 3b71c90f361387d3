#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <vector>

#include "polytree/graph.hpp"
#include "polytree/rng.hpp"
#include "polytree/sem.hpp"

namespace test_helpers {

using namespace polytree;

/// Chain 0 -> 1 -> ... -> d-1 with the given coefficients and unit noise.
inline GaussianSem chain_sem(const std::vector<double>& betas,
                             std::vector<double> noise_var = {}) {
    const int d = static_cast<int>(betas.size()) + 1;
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < d; ++i) edges.emplace_back(i, i + 1);
    if (noise_var.empty()) noise_var.assign(d, 1.0);
    return GaussianSem(Dag(d, std::move(edges)), betas, std::move(noise_var));
}

/// Well-conditioned random covariance: G G^T / d + I/2.
inline CovarianceMatrix random_pd_covariance(int d, Rng& rng) {
    Eigen::MatrixXd g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = rng.normal();
    Eigen::MatrixXd s = g * g.transpose() / static_cast<double>(d);
    s += 0.5 * Eigen::MatrixXd::Identity(d, d);
    return CovarianceMatrix(((s + s.transpose()) / 2.0).eval());
}

/// Test-side multivariate normal sampler (Cholesky times iid normals),
/// independent of the SEM sampling path.
inline SampleMatrix mvn_sample(const CovarianceMatrix& sigma, long n, std::uint64_t seed) {
    const Eigen::MatrixXd l = Eigen::LLT<Eigen::MatrixXd>(sigma.matrix()).matrixL();
    const int d = sigma.dim();
    Rng rng(seed);
    Eigen::MatrixXd rows(n, d);
    Eigen::VectorXd z(d);
    for (long i = 0; i < n; ++i) {
        for (int k = 0; k < d; ++k) z(k) = rng.normal();
        rows.row(i) = (l * z).transpose();
    }
    return SampleMatrix(std::move(rows));
}

/// Attaches coefficients of magnitude [0.1, 0.5) with random signs and unit
/// noise variances to a DAG.
inline GaussianSem attach_random_betas(const Dag& dag, Rng& rng) {
    std::vector<double> betas(dag.edges().size());
    for (double& b : betas) {
        const double magnitude = rng.uniform(0.1, 0.5);
        b = rng.coin() ? magnitude : -magnitude;
    }
    return GaussianSem(dag, std::move(betas), std::vector<double>(dag.node_count(), 1.0));
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace test_helpers
