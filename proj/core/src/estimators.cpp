#include "polytree/estimators.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>
#include <string>

#include "polytree/errors.hpp"

namespace polytree {

namespace {

constexpr double kClampWindow = 1e-9;
constexpr double kClampTarget = 1.0 - 1e-12;
constexpr double kVarianceFloor = 1e-12;

// Exact tree models can sit numerically at |rho| = 1; small excursions past
// the boundary are roundoff, anything larger is genuine degeneracy.
double clamp_correlation(double r, const std::string& context) {
    if (std::abs(r) < 1.0) return r;
    if (std::abs(r) < 1.0 + kClampWindow) return r > 0.0 ? kClampTarget : -kClampTarget;
    throw degenerate_error("correlation " + std::to_string(r) + " outside [-1,1]: " + context);
}

std::string pair_context(int j, int k, const std::vector<int>& given) {
    std::string s = "pair (" + std::to_string(j) + "," + std::to_string(k) + ") given {";
    for (std::size_t i = 0; i < given.size(); ++i)
        s += (i ? "," : "") + std::to_string(given[i]);
    return s + "}";
}

double conditional_variance_or_throw(double v, int node, const std::string& context) {
    if (v <= kVarianceFloor)
        throw degenerate_error("conditional variance of node " + std::to_string(node) +
                               " collapsed (" + std::to_string(v) + "): " + context);
    return v;
}

}  // namespace

CovarianceMatrix sample_covariance(const SampleMatrix& data) {
    const auto& x = data.matrix();
    Eigen::MatrixXd s = (x.transpose() * x) / static_cast<double>(data.rows());
    s = ((s + s.transpose()) / 2.0).eval();
    return CovarianceMatrix(std::move(s), data.rows());
}

CorrelationEstimate partial_correlation(const CovarianceMatrix& sigma, int j, int k,
                                        const std::vector<int>& given) {
    const int d = sigma.dim();
    if (j == k) throw std::invalid_argument("partial correlation needs distinct nodes");
    if (j < 0 || j >= d || k < 0 || k >= d) throw std::invalid_argument("node out of range");
    if (static_cast<int>(given.size()) > d - 2)
        throw std::invalid_argument("conditioning set larger than d-2");
    for (int s : given)
        if (s == j || s == k || s < 0 || s >= d)
            throw std::invalid_argument("invalid conditioning node " + std::to_string(s));

    const auto& m = sigma.matrix();
    const std::string ctx = pair_context(j, k, given);
    double num, vj, vk;
    if (given.empty()) {
        num = m(j, k);
        vj = m(j, j);
        vk = m(k, k);
    } else if (given.size() == 1) {
        const int l = given[0];
        const double vl = conditional_variance_or_throw(m(l, l), l, ctx);
        num = m(j, k) - m(j, l) * m(k, l) / vl;
        vj = m(j, j) - m(j, l) * m(j, l) / vl;
        vk = m(k, k) - m(k, l) * m(k, l) / vl;
    } else {
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
            throw degenerate_error("conditioning block is singular: " + ctx);
        const Eigen::MatrixXd solved = llt.solve(cross);
        num = m(j, k) - cross.col(0).dot(solved.col(1));
        vj = m(j, j) - cross.col(0).dot(solved.col(0));
        vk = m(k, k) - cross.col(1).dot(solved.col(1));
    }
    conditional_variance_or_throw(vj, j, ctx);
    conditional_variance_or_throw(vk, k, ctx);

    CorrelationEstimate est;
    est.value = clamp_correlation(num / std::sqrt(vj * vk), ctx);
    est.nodes = {j, k};
    est.given = given;
    const long n = sigma.sample_count();
    est.n_effective = n > 0 ? std::max<long>(0, n - static_cast<long>(given.size())) : 0;
    return est;
}

CiDecision ci_test(const CorrelationEstimate& rho_hat, double cutoff) {
    if (!(cutoff > 0.0 && cutoff < 1.0))
        throw std::invalid_argument("cutoff must lie in (0,1)");
    const double stat = std::abs(rho_hat.value);
    return CiDecision{
        stat >= cutoff ? CiOutcome::reject_independence : CiOutcome::accept_independence,
        stat, cutoff};
}

MiEstimate empirical_mi(const CovarianceMatrix& sigma, int j, int k) {
    const int d = sigma.dim();
    if (j == k || j < 0 || j >= d || k < 0 || k >= d)
        throw std::invalid_argument("empirical_mi needs two distinct nodes in range");
    const auto& m = sigma.matrix();
    const std::string ctx = pair_context(j, k, {});
    if (m(j, j) <= 0.0 || m(k, k) <= 0.0)
        throw degenerate_error("nonpositive variance: " + ctx);
    const double r = clamp_correlation(m(j, k) / std::sqrt(m(j, j) * m(k, k)),
                                       ctx + " (mutual information diverges)");
    return MiEstimate{-0.5 * std::log1p(-r * r)};
}

MiEstimate empirical_cmi(const CovarianceMatrix& sigma, int y, int z, int given_x) {
    const int d = sigma.dim();
    if (y == z || y == given_x || z == given_x)
        throw std::invalid_argument("empirical_cmi needs three distinct nodes");
    if (y < 0 || y >= d || z < 0 || z >= d || given_x < 0 || given_x >= d)
        throw std::invalid_argument("node out of range");
    const auto& m = sigma.matrix();
    const int x = given_x;
    const std::string ctx = "cmi(" + std::to_string(y) + ";" + std::to_string(z) + "|" +
                            std::to_string(x) + ")";

    const double sxx = m(x, x), syy = m(y, y), szz = m(z, z);
    const double sxy = m(x, y), sxz = m(x, z), syz = m(y, z);
    if (sxx <= kVarianceFloor) throw degenerate_error("variance collapsed: " + ctx);
    const double det2 = sxx * syy - sxy * sxy;
    if (det2 <= kVarianceFloor * sxx) throw degenerate_error("degenerate (x,y) block: " + ctx);

    // Regression of z on (x,y); the residual variance is expressed through
    // the orthogonalized regressors (x and the residual of y given x), which
    // keeps it equal to the Schur complement and makes the estimator the
    // mutual-information functional of the given second moments. That is
    // what the chain-rule identity and (y,z) symmetry require.
    const double gamma_yz = (sxx * syz - sxy * sxz) / det2;
    const double var_y_x = conditional_variance_or_throw(syy - sxy * sxy / sxx, y, ctx);
    const double var_z_xy =
        conditional_variance_or_throw(szz - sxz * sxz / sxx - gamma_yz * gamma_yz * var_y_x,
                                      z, ctx);
    return MiEstimate{0.5 * std::log1p(gamma_yz * gamma_yz * var_y_x / var_z_xy)};
}

CmiTestResult cmi_test(const CovarianceMatrix& sigma, int i, int j, int given_k,
                       double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    const MiEstimate est = empirical_cmi(sigma, i, j, given_k);
    const double threshold = epsilon / 100.0;
    return CmiTestResult{est, est.value > threshold, threshold};
}

}  // namespace polytree
