#pragma once

#include <cstdint>
#include <vector>

#include "polytree/rng.hpp"
#include "polytree/sem.hpp"

namespace polytree {

/// Pair of exact 3x3 covariances over (X, Y, Z) = nodes (0, 1, 2) that are
/// hard to tell apart; epsilon is the construction parameter.
struct GadgetPair {
    CovarianceMatrix sigma1;
    CovarianceMatrix sigma2;
    double epsilon;
};

/// Marginals of the hidden-hub constructions: one observed variable loads on
/// the hub with weight 1+epsilon (X in the first, Y in the second); neither
/// marginal is tree-structured. Swapping X and Y maps one onto the other.
GadgetPair nonrealizable_gadget(double epsilon);

/// Two exactly tree-structured distributions sharing the edge X->Y with a
/// near-deterministic coefficient; they differ only in whether Z hangs off X
/// or off Y.
GadgetPair realizable_gadget(double epsilon);

/// Ensemble member for the structure-learning hardness regime: a uniform
/// random directed tree rooted at node 0 with every coefficient sqrt(2)*c and
/// unit noise variances. Requires c^2 <= 1/5.
GaussianSem structure_lb_instance(int d, double c, std::uint64_t seed);

/// Largest c for which the instance is c-strong tree-faithful: the minimum of
/// |rho(j,k|l)| over skeleton edges (j,k) with l ranging over all other
/// nodes and the empty set, together with |rho(j,k|l)| over v-structures
/// j->l<-k. Returns +infinity when the graph has no edges (no constraints);
/// requires the skeleton to be a forest.
double faithfulness_parameter(const GaussianSem& sem);

/// d-1 edge coefficients beta_k = alpha_k + z with alpha_k drawn iid from
/// +-[0.1, 0.5) (magnitude uniform, sign fair) and one shared shift z uniform
/// on [-z_scale, z_scale]. z_scale = 0 reduces to the iid sampler.
std::vector<double> agnostic_beta_sampler(int d, double z_scale, std::uint64_t seed);

/// Same draw from a caller-owned stream (alphas first, then the shift).
std::vector<double> agnostic_betas(int d, double z_scale, Rng& rng);

}  // namespace polytree
