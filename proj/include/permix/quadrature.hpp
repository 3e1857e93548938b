#pragma once

#include <vector>

namespace permix {

/// Gauss-Hermite rule for weight exp(-t^2): integral f(t) e^{-t^2} dt
/// ~ sum w_i f(t_i). Nodes/weights by Golub-Welsch; cached per order.
struct GaussHermite {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussHermite& gauss_hermite(int order);

/// integral f(x) phi(x) dx with phi the standard normal density,
/// via the substitution x = sqrt(2) t.
template <typename F>
double integrate_gaussian(const F& f, int order = 200) {
    const auto& gh = gauss_hermite(order);
    const double inv_sqrt_pi = 0.5641895835477562869;
    double s = 0.0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i)
        s += gh.weights[i] * f(1.4142135623730950488 * gh.nodes[i]);
    return inv_sqrt_pi * s;
}

/// 2-D version against phi(x) phi(y).
template <typename F>
double integrate_gaussian_2d(const F& f, int order = 200) {
    const auto& gh = gauss_hermite(order);
    const double inv_pi = 0.31830988618379067154;
    double s = 0.0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < gh.nodes.size(); ++j)
            row += gh.weights[j] * f(1.4142135623730950488 * gh.nodes[i],
                                     1.4142135623730950488 * gh.nodes[j]);
        s += gh.weights[i] * row;
    }
    return inv_pi * s;
}

}  // namespace permix
