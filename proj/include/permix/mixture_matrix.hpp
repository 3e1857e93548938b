#pragma once

#include <Eigen/Dense>

#include "permix/component_list.hpp"
#include "permix/config.hpp"

namespace permix {

/// The n x n Gram-like matrix A_ij = (1/n) sum_x P_i(x) P_j(x) / Pbar(x),
/// together with its spectral data. A is symmetric, doubly stochastic and
/// PSD, with leading eigenpair (1, all-ones) and 1 - lambda_2 at least the
/// reciprocal of the pairwise H^2 singularity of the instance.
struct MixtureMatrix {
    Eigen::MatrixXd a;
    Eigen::VectorXd eigenvalues;    // sorted descending, clamped into [0, 1]
    Eigen::MatrixXd eigenvectors;   // columns follow eigenvalue order
    double spectral_gap = 0.0;      // 1 - lambda_2 (0 when n == 1)
    double trace = 0.0;

    int n() const { return static_cast<int>(a.rows()); }
    double lambda2() const { return n() >= 2 ? eigenvalues(1) : 0.0; }

    Eigen::MatrixXd centered() const;  // A - J/n

    // U D^{1/2}: factor with Perm(P P^T) = Perm(A)
    Eigen::MatrixXd factor() const;
    // same with the leading eigenpair removed, n x (n-1)
    Eigen::MatrixXd factor_reduced() const;
};

/// Builds A, eigendecomposes it, validates every structural invariant and
/// throws std::logic_error on violation. Eigenvalues are clamped to
/// [-1e-10, 1+1e-10] during validation and truncated into [0, 1] afterwards.
MixtureMatrix build_mixture_matrix(const ComponentList& c, const Config& cfg = default_config());

}  // namespace permix
