#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "permix/config.hpp"
#include "permix/rng.hpp"

namespace permix {

/// Vector with sum zero and squared norm n (the hypothesis class of the
/// centered Maclaurin-type bound). normalized() centers and rescales
/// arbitrary input; the constructor validates.
class CenteredVector {
  public:
    explicit CenteredVector(Eigen::VectorXcd values, bool is_real);

    static CenteredVector normalized(const Eigen::VectorXcd& raw, bool is_real);
    static CenteredVector from_real(const Eigen::VectorXd& values);

    int n() const { return static_cast<int>(values_.size()); }
    bool is_real() const { return is_real_; }
    const Eigen::VectorXcd& values() const { return values_; }
    Eigen::VectorXd real_values() const { return values_.real(); }

  private:
    Eigen::VectorXcd values_;
    bool is_real_;
};

/// All elementary symmetric polynomials e_0..e_n of x by sequential
/// convolution of prod_i (1 + x_i z); O(n^2).
Eigen::VectorXcd esp_all(const Eigen::VectorXcd& x, const Config& cfg = default_config());
Eigen::VectorXd esp_all(const Eigen::VectorXd& x, const Config& cfg = default_config());

/// Coefficient wrapper with the centered-input checks (e_0 = 1, e_1 ~ 0).
struct ESPCoefficients {
    Eigen::VectorXcd e;
};
ESPCoefficients esp_coefficients(const CenteredVector& x, const Config& cfg = default_config());

/// The two-valued extremal family: n-k entries sqrt(k/(n-k)) and k entries
/// -sqrt((n-k)/k). Centered and normalized by construction.
CenteredVector binary_support_vector(int n, int k);

/// (complex bound, its binomial relaxation, real bound) for |e_l| over the
/// centered hypothesis class, computed in log space:
///   sqrt(n^n / (l^l (n-l)^{n-l})),  sqrt(3 sqrt(l+1) C(n,l)),  sqrt(10 C(n,l)).
struct EspBounds {
    double complex_bound;
    double complex_bound_binomial;
    double real_bound;
};
EspBounds esp_bounds(int n, int ell);

struct EspViolation {
    int n, ell, k;       // k = -1 for random complex trials
    double value, bound;
};

struct EspVerifyReport {
    double max_ratio_real = 0.0;
    int real_argmax_n = 0, real_argmax_ell = 0, real_argmax_k = 0;
    double max_ratio_complex = 0.0;
    std::vector<EspViolation> violations;
};

/// Exhaustively checks the real bound on every binary-support vector with
/// n <= n_max, and the complex bound on `trials` random centered-normalized
/// complex Gaussian vectors. Violations are reported, not thrown.
EspVerifyReport verify_esp_theorem(int n_max, int trials, std::uint64_t seed, int threads = 1,
                                   const Config& cfg = default_config());

/// Centered-rows permanent-sum inequality:
///   |(1/l!) sum_{|T|=l} Perm(A_T)| <= sqrt(10 C(n,l)) prod_i rms(row_i).
struct HadamardCheck {
    double lhs, rhs;
};
HadamardCheck hadamard_check(const Eigen::MatrixXd& a, const Config& cfg = default_config());

}  // namespace permix
