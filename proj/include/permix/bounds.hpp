#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "permix/component_list.hpp"
#include "permix/config.hpp"
#include "permix/series.hpp"

namespace permix {

/// The three divergence upper bounds from (capacity, H^2 singularity,
/// chi^2 diameter):   ub1 = 10 sum_{l=2}^n c^l,   ub2 = (e*delta)^c - 1,
/// ub3 = (1+d)^{1+c} - 1. Infinite inputs propagate to infinite bounds.
struct ThmBounds {
    double ub1, ub2, ub3;
};
ThmBounds thm_main_bounds(int n, double c, double delta_h2, double d_chi2);

struct BoundInputs {
    int n = 0;
    double capacity = 0.0;   // (1/n) sum_i chi^2(P_i || Pbar)
    double delta_h2 = 1.0;   // max-pair (1 - H^2/2)^{-2}
    double d_chi2 = 0.0;     // max-pair chi^2
};

struct BoundReport {
    std::optional<double> exact_chi2;  // permanent path, when n is within cap
    double ub1 = 0.0, ub2 = 0.0, ub3 = 0.0;
    double lower_spectral = 0.0;  // 1/sqrt(1 - lambda_2^2) - 1; informational
    BoundInputs inputs;
};

/// Evaluates the bounds with instance-level surrogates and checks the
/// sandwich exact <= min(finite ub_i) whenever the exact value is available.
BoundReport evaluate_instance(const ComponentList& c, const Config& cfg = default_config());

/// k-coordinate marginal divergence: exact value via the series identity
/// sum_{l=2}^k C(k,l)/C(n,l) S_l, and the k(k-1)/(n(n-1))-prefactored bound.
struct DeFinettiResult {
    double exact = 0.0;
    double bound = 0.0;
};
DeFinettiResult definetti_bound_and_exact(const ComponentList& c, int k,
                                          const Config& cfg = default_config());

/// Brute-force oracle for the k-marginal chi^2 (enumerates |alphabet|^k cells).
double definetti_marginal_chi2_bruteforce(const ComponentList& c, int k,
                                          const Config& cfg = default_config());

/// Mixtures differing in one component: chain
///   TV^2 <= (1/4) int (dP - dQ)^2 / dPbar^n <= (D/n) sum_l l S_{l-1}
///        <= 3 D (e Delta)^{3C} / n,
/// with S built from the shared components and (C, Delta, D) from the family
/// of all n+1 components. Every link is asserted.
struct TwoMixturesResult {
    double tv2 = 0.0;
    double middle = 0.0;
    double weighted_series = 0.0;
    double bound = 0.0;
};
TwoMixturesResult two_mixtures_check(const ComponentList& shared, const FiniteDistribution& p1,
                                     const FiniteDistribution& q1,
                                     const Config& cfg = default_config());

/// M sqrt(6 n D (e Delta)^{3C}).
double eb_risk_gap_bound(double m_loss, int n, double c, double delta_h2, double d_chi2);

/// gap = n I(theta_1; X_1) - I(theta; X), computed exactly as KL(P || Q) by
/// enumeration; ub = min(10 sum_l I^l, I (1 + log Delta)) with I the
/// per-coordinate chi^2 mutual information under the empirical prior.
struct MutualInfoResult {
    double gap = 0.0;
    double ub = 0.0;
};
MutualInfoResult mutual_info_gap(const ComponentList& c, const Config& cfg = default_config());

/// Kronecker block construction meeting the trace / spectral-gap budget with
/// the largest possible permanent: ((delta/m) J_m + (1-delta) I_m) (x) J_b/b.
struct WorstCaseMatrix {
    Eigen::MatrixXd a;
    int m = 0;      // number of blocks, ceil(c_target)
    int block = 0;  // block size
    double delta = 0.0;
};
WorstCaseMatrix worst_case_matrix(double c_target, double delta,
                                  const Config& cfg = default_config());

/// The matching distribution family P_i = sqrt(delta) delta_0 +
/// (1 - sqrt(delta)) delta_i on {0, ..., m}; verified to have H^2
/// singularity 1/delta and capacity at most m-1.
std::vector<FiniteDistribution> worst_case_family(double c_target, double delta);

/// Leave-one-out mixtures: max_i chi^2(avg || P_{-i}) <= D/(n+1), and
/// H^2(P_{-i}, P_{-j}) <= 4D/(n+1); both asserted.
struct GreenshteinRitovResult {
    double max_chi2 = 0.0;
    double bound = 0.0;
    double max_h2 = 0.0;
};
GreenshteinRitovResult greenshtein_ritov_check(const std::vector<FiniteDistribution>& components,
                                               const Config& cfg = default_config());

}  // namespace permix
