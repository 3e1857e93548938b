#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "permix/component_list.hpp"
#include "permix/config.hpp"
#include "permix/mixture_matrix.hpp"

namespace permix {

/// chi^2(perm-mixture || iid) via (n^n / n!) * Perm(A) - 1.
double exact_chi2_permanent(const ComponentList& c, const Config& cfg = default_config());
double exact_chi2_permanent(const MixtureMatrix& a, const Config& cfg = default_config());

/// Degree-graded decomposition chi^2 + 1 = sum_l S_l, where S_l is the
/// degree-l homogeneous part of Perm(A) in (lambda_2, ..., lambda_n).
/// Companions: R_l = S_l / C(n,l) (second moment of the degree-l term of the
/// doubly centered expansion) and T_l = n!/((n-l)! n^l) S_l (sum of
/// permanents of l x l submatrices of the centered matrix).
struct SeriesDecomposition {
    std::vector<double> s;                    // S_0 ... S_n
    std::vector<double> r;                    // R_l = S_l / C(n,l)
    std::optional<std::vector<double>> t;     // filled by the direct method
    int n = 0;
    double chi2() const;                      // sum_l S_l - 1
};

enum class SeriesMethod { Interpolation, Direct };

/// Interpolation: evaluates Perm(t*Abar + J/n) on the nodes t_k = k/n,
/// recovers the polynomial by Newton divided differences and rescales the
/// coefficients into S_l; a residual re-evaluation at t = 1/2 guards against
/// ill-conditioning. Direct: sums permanents of centered submatrices over
/// subset pairs (exact, cost sum_l C(n,l)^2 2^l l).
SeriesDecomposition s_series(const MixtureMatrix& a, SeriesMethod method,
                             const Config& cfg = default_config());

/// R_l by direct enumeration of the defining expectation: average the
/// degree-l centered product over ordered l-tuples of distinct component
/// indices and integrate the square over the l-fold marginal.
double r_ell_enumeration(const ComponentList& c, int ell, const Config& cfg = default_config());

/// Same expectation with the inner average computed by the rectangular
/// permanent-sum DP, feasible for every l <= n at small alphabets.
double r_ell_dp(const ComponentList& c, int ell, const Config& cfg = default_config());

/// Van der Waerden floor and the spectral ceiling
/// n!/n^n <= Perm(A) <= n!/n^n * prod_{i>=2} 1/(1-lambda_i).
struct PermanentSandwich {
    double lower = 0.0;
    double upper = 0.0;               // +inf when lambda_2 is at 1
    std::optional<double> permanent;  // filled (and checked) when n is within the Ryser cap
};
PermanentSandwich permanent_sandwich(const MixtureMatrix& a, const Config& cfg = default_config());

/// Complete homogeneous symmetric sum h_l(x) by the O(n*l) recurrence.
double complete_homogeneous_sum(const Eigen::VectorXd& x, int ell);

}  // namespace permix
