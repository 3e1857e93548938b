#include "permix/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace permix {

namespace {

GaussHermite compute_rule(int order) {
    if (order < 1 || order > 2000) throw std::invalid_argument("gauss_hermite: bad order");
    // Jacobi matrix of the (physicists') Hermite recurrence: off-diagonal
    // entries sqrt(k/2); weights from the squared first eigenvector entries.
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd sub(order - 1 > 0 ? order - 1 : 0);
    for (int k = 1; k < order; ++k) sub(k - 1) = std::sqrt(0.5 * k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub);
    const double mu0 = 1.7724538509055160273;  // sqrt(pi)
    GaussHermite rule;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));
    for (int i = 0; i < order; ++i) {
        rule.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
    }
    return rule;
}

}  // namespace

const GaussHermite& gauss_hermite(int order) {
    static std::map<int, GaussHermite> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

}  // namespace permix
