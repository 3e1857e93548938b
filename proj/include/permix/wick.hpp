#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "permix/config.hpp"
#include "permix/mixture_matrix.hpp"

namespace permix {

struct WickResult {
    double estimate = 0.0;
    double stderr_ = 0.0;
    double target = 0.0;
};

/// Isserlis/Wick identity: for real P (m x n) and z ~ CN(0, I_n),
/// E prod_i |(Pz)_i|^2 = Perm(P P^T). Draws `samples` complex normal
/// vectors from the given seed and returns the empirical mean, its standard
/// error and the exact permanent target.
WickResult wick_check_permanent(const Eigen::MatrixXd& p, int samples, std::uint64_t seed,
                                const Config& cfg = default_config());

/// Companion identity through elementary symmetric polynomials: with
/// Pt = U~ D~^{1/2} (leading eigenpair removed),
/// S_l = n^l (n-l)!/n! * E |e_l(Pt z)|^2. `target` is the exact S_l passed
/// by the caller (from the series decomposition).
WickResult wick_check_esp(const Eigen::MatrixXd& pt, int ell, double s_target, int samples,
                          std::uint64_t seed);

}  // namespace permix
