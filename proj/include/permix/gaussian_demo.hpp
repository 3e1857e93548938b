#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "permix/config.hpp"

namespace permix {

/// Second moment of the per-coordinate signed part of the balanced +/-mu
/// Gaussian location mixture: f(mu) = e^{-mu^2/2} int sinh^2(mu x)/cosh(mu x)
/// phi(x) dx. Always <= 1 - e^{-mu^2}.
double f_mu(double mu, const Config& cfg = default_config());

/// Both quadrature routes (the sinh^2/cosh form and 1 - e^{-mu^2/2}
/// int phi/cosh); they must agree to ~1e-10 in the supported range.
struct FMuForms {
    double primary;
    double alternate;
};
FMuForms f_mu_forms(double mu, const Config& cfg = default_config());

/// Coefficient of the degree-l term under a balanced mean vector:
/// (-1)^{l/2} C(n/2, l/2) / C(n, l) for even l, zero for odd l.
double g_ell(int n, int ell);

struct ToyModelResult {
    double mu = 0.0;
    int n = 0;
    double f = 0.0;
    std::vector<double> g;         // g_0 ... g_min(n,40)
    double chi2_series = 0.0;      // sum_{l=2}^n C(n,l) f^l g_l^2
    double geometric_cap = 0.0;    // f^2 / (1 - f)
    double bound_paper = 0.0;      // same closed form; dimension independent
};

/// Exact series evaluation, O(n) in log space; n may be as large as 10^6.
ToyModelResult toy_chi2(int n, double mu, const Config& cfg = default_config());

/// Independent 2-D quadrature oracle for n = 2 (mu <= 5).
double toy_chi2_oracle_n2(double mu, const Config& cfg = default_config());

/// Contribution of one moment-method multi-index family:
/// mu^{4l+4} / (2^l (n-1)^2) * n! / (2! l! (n-l-2)!). Grows like n^l.
double moments_blowup_term(int n, double mu, int ell);

/// Least-squares log-log slope of the term over a dyadic n-sweep.
double moments_blowup_slope(double mu, int ell, int n_lo, int n_hi);

/// Odd-index tangent numbers (alternating-permutation counts) b_1, b_3, ...
/// from the inclusion-exclusion recursion, in exact integers.
std::vector<boost::multiprecision::cpp_int> cumulant_sequence(int l_max);

/// log10 of the cumulant-method partial sums sum_j kappa^2/alpha! along the
/// (1, 2j+1, 0, ...) axis; the sequence diverges, which is the point.
struct CumulantDivergence {
    std::vector<boost::multiprecision::cpp_int> b;
    std::vector<double> log10_terms;
    std::vector<double> log10_partial_sums;
};
CumulantDivergence cumulant_divergence(int l_max, double mu, int n);

}  // namespace permix
