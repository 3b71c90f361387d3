#pragma once

#include <utility>
#include <vector>

#include "polytree/sem.hpp"

namespace polytree {

/// Partial correlation of a node pair given a (possibly empty) set.
struct CorrelationEstimate {
    double value = 0.0;          // in [-1, 1] after roundoff clamping
    std::pair<int, int> nodes;   // (j, k)
    std::vector<int> given;      // conditioning set, empty for marginal
    long n_effective = 0;        // samples behind the estimate minus |given|; 0 for exact input
};

enum class CiOutcome { accept_independence, reject_independence };

struct CiDecision {
    CiOutcome outcome;
    double statistic;  // |rho_hat| used for the decision
    double cutoff;
};

/// Mutual information in nats; nonnegative, finite whenever |rho| < 1.
struct MiEstimate {
    double value = 0.0;
};

/// Raw second-moment matrix (1/n) X^T X: no mean subtraction, 1/n scaling.
CovarianceMatrix sample_covariance(const SampleMatrix& data);

/// rho_{jk|S} from a covariance (exact or estimated). |S| <= 1 uses the
/// closed three-variable form; larger sets go through a Cholesky solve.
/// Values that land in [1, 1+1e-9) from roundoff are clamped to 1-1e-12
/// (same on the negative side); larger excursions raise degenerate_error,
/// as does a collapsed conditional variance.
CorrelationEstimate partial_correlation(const CovarianceMatrix& sigma, int j, int k,
                                        const std::vector<int>& given);

/// Declares dependence (reject_independence) iff |rho_hat| >= cutoff; the
/// boundary belongs to rejection. cutoff must lie in (0,1).
CiDecision ci_test(const CorrelationEstimate& rho_hat, double cutoff);

/// -1/2 log(1 - rho_jk^2 / (sigma_j^2 sigma_k^2)); infinite-MI degeneracy is
/// reported as degenerate_error.
MiEstimate empirical_mi(const CovarianceMatrix& sigma, int j, int k);

/// Conditional mutual information I(Y;Z|X) of the Gaussian with the given
/// second moments, via the regression quantities gamma, sigma_{y|x},
/// sigma_{z|x,y}. Symmetric in (y, z).
MiEstimate empirical_cmi(const CovarianceMatrix& sigma, int y, int z, int given_x);

struct CmiTestResult {
    MiEstimate estimate;
    bool dependent;    // estimate.value > threshold
    double threshold;  // epsilon / 100
};

CmiTestResult cmi_test(const CovarianceMatrix& sigma, int i, int j, int given_k,
                       double epsilon);

}  // namespace polytree
