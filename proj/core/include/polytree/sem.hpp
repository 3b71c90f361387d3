#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polytree/graph.hpp"

namespace polytree {

/// Zero-mean noise families. Gaussian draws are scaled by the per-node noise
/// variance; uniform(-1,1) and Laplace(0,1) are used raw, with their natural
/// variances 1/3 and 2, and ignore the per-node variance field.
enum class NoiseFamily { gaussian, uniform, laplace };

std::string noise_family_name(NoiseFamily f);
NoiseFamily parse_noise_family(const std::string& name);

/// Symmetric second-moment matrix. Construction enforces symmetry (to 1e-12,
/// relative) and stores the symmetrized matrix. Positive definiteness is
/// enforced by the consumers that factorize (KL, conditioning, partial
/// correlation), which raise degenerate_error; rank-deficient sample moments
/// remain representable.
class CovarianceMatrix {
public:
    explicit CovarianceMatrix(Eigen::MatrixXd sigma, long sample_count = 0);

    int dim() const { return static_cast<int>(sigma_.rows()); }
    const Eigen::MatrixXd& matrix() const { return sigma_; }
    double operator()(int i, int j) const { return sigma_(i, j); }
    /// Number of samples behind the estimate; 0 marks an exact matrix.
    long sample_count() const { return sample_count_; }

    bool is_positive_definite() const;

private:
    Eigen::MatrixXd sigma_;
    long sample_count_;
};

/// n observations of a d-dimensional vector, one per row. All entries finite.
class SampleMatrix {
public:
    explicit SampleMatrix(Eigen::MatrixXd rows);

    long rows() const { return data_.rows(); }
    int cols() const { return static_cast<int>(data_.cols()); }
    const Eigen::MatrixXd& matrix() const { return data_; }

private:
    Eigen::MatrixXd data_;
};

/// Linear SEM over a DAG: each node equals the beta-weighted sum of its
/// parents plus independent zero-mean noise with the given variance.
class GaussianSem {
public:
    /// `edge_beta` is aligned with graph.edges() (sorted order).
    GaussianSem(Dag graph, std::vector<double> edge_beta, std::vector<double> noise_var);

    const Dag& graph() const { return graph_; }
    int node_count() const { return graph_.node_count(); }
    double beta(int parent, int child) const;
    const std::vector<double>& edge_betas() const { return edge_beta_; }
    const std::vector<double>& noise_variances() const { return noise_var_; }

private:
    Dag graph_;
    std::vector<double> edge_beta_;
    std::vector<double> noise_var_;
};

/// Exact implied covariance, built by accumulating second moments in
/// topological order; no matrix inverse is formed.
CovarianceMatrix sem_to_covariance(const GaussianSem& sem);

/// Ancestral sampling in topological order; deterministic for a fixed seed.
SampleMatrix sample(const GaussianSem& sem, long n, NoiseFamily noise, std::uint64_t seed);

/// Schur complement of the (j,k) block given S; S may be empty (marginal
/// block). Throws degenerate_error when the conditioning block is singular.
Eigen::Matrix2d conditional_covariance(const CovarianceMatrix& sigma,
                                       std::pair<int, int> targets,
                                       const std::vector<int>& given);

}  // namespace polytree
