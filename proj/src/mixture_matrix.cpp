#include "permix/mixture_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "permix/numeric.hpp"

namespace permix {

Eigen::MatrixXd MixtureMatrix::centered() const {
    const int m = n();
    return a - Eigen::MatrixXd::Constant(m, m, 1.0 / m);
}

Eigen::MatrixXd MixtureMatrix::factor() const {
    return eigenvectors * eigenvalues.cwiseSqrt().asDiagonal();
}

Eigen::MatrixXd MixtureMatrix::factor_reduced() const {
    // Factor the centered matrix directly: when lambda_2 = 1 the eigenbasis
    // of A may not isolate the all-ones direction, but Abar always has it in
    // its null space, so dropping one (near-)zero eigenvector is safe.
    const int m = n();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(centered());
    Eigen::VectorXd lam = es.eigenvalues().reverse();       // descending
    Eigen::MatrixXd vec = es.eigenvectors().rowwise().reverse();
    for (int i = 0; i < m; ++i) lam(i) = std::clamp(lam(i), 0.0, 1.0);
    return vec.leftCols(m - 1) * lam.head(m - 1).cwiseSqrt().asDiagonal();
}

MixtureMatrix build_mixture_matrix(const ComponentList& c, const Config& cfg) {
    const int n = c.n();
    const int k = c.alphabet_size();
    const auto& pbar = c.marginal();

    for (int x = 0; x < k; ++x) {
        if (pbar[x] > 0.0) continue;
        for (int i = 0; i < n; ++i)
            if (c.component(i)[x] > 0.0)
                throw std::invalid_argument(
                    "build_mixture_matrix: marginal vanishes on supported symbol " +
                    std::to_string(x));
    }

    MixtureMatrix mm;
    mm.a.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            KahanSum s;
            for (int x = 0; x < k; ++x) {
                if (pbar[x] == 0.0) continue;
                s.add(c.component(i)[x] * c.component(j)[x] / pbar[x]);
            }
            mm.a(i, j) = mm.a(j, i) = s.value() / n;
        }
    mm.trace = mm.a.trace();

    const double vtol = cfg.tol.validation;
    for (int i = 0; i < n; ++i) {
        if (std::abs(mm.a.row(i).sum() - 1.0) > vtol)
            throw std::logic_error("mixture matrix: row sums are not 1");
        if (std::abs(mm.a.col(i).sum() - 1.0) > vtol)
            throw std::logic_error("mixture matrix: column sums are not 1");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mm.a);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("mixture matrix: eigendecomposition failed");
    // Eigen sorts ascending; flip to descending
    mm.eigenvalues = es.eigenvalues().reverse();
    mm.eigenvectors = es.eigenvectors().rowwise().reverse();

    for (int i = 0; i < n; ++i) {
        const double lam = mm.eigenvalues(i);
        if (lam < -1e-10 || lam > 1.0 + 1e-10)
            throw std::logic_error("mixture matrix: eigenvalue " + std::to_string(lam) +
                                   " outside [0, 1]");
    }
    if (std::abs(mm.eigenvalues(0) - 1.0) > vtol)
        throw std::logic_error("mixture matrix: leading eigenvalue is not 1");
    // row sums = 1 already certifies that all-ones is an eigenvector of
    // eigenvalue 1; with a degenerate lambda_2 = 1 the solver basis need not
    // contain it, so no per-column check is made here.

    mm.spectral_gap = n >= 2 ? 1.0 - mm.eigenvalues(1) : 0.0;
    const double delta_h2 = max_pair_h2_singularity(c);
    if (n >= 2 && std::isfinite(delta_h2) && mm.spectral_gap < 1.0 / delta_h2 - 1e-8)
        throw std::logic_error("mixture matrix: spectral gap below 1/Delta_H2");
    if (mm.trace > 1.0 + instance_capacity(c) + cfg.tol.comparison)
        throw std::logic_error("mixture matrix: trace exceeds 1 + capacity");

    for (int i = 0; i < n; ++i)
        mm.eigenvalues(i) = std::clamp(mm.eigenvalues(i), 0.0, 1.0);
    return mm;
}

}  // namespace permix
