#pragma once

#include <Eigen/Dense>
#include <complex>

#include "permix/config.hpp"

namespace permix {

/// Exact permanent by Ryser's inclusion-exclusion with Gray-code subset
/// iteration and compensated accumulation. O(2^n * n); n is capped.
double permanent_ryser(const Eigen::MatrixXd& m, const Config& cfg = default_config());
std::complex<double> permanent_ryser(const Eigen::MatrixXcd& m,
                                     const Config& cfg = default_config());

/// sum over column subsets T of size l of Perm(A_T), for an l x n matrix A
/// (l <= n). Column-sweep dynamic program over row subsets, O(n * 2^l * l).
/// For l = n this equals the permanent.
double rectangular_permanent_sum(const Eigen::MatrixXd& a, const Config& cfg = default_config());

}  // namespace permix
