#include "permix/component_list.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

#include "permix/numeric.hpp"
#include "permix/permanent.hpp"

namespace permix {

namespace {

FiniteDistribution compute_marginal(const std::vector<FiniteDistribution>& comps) {
    if (comps.empty()) throw std::invalid_argument("ComponentList: need n >= 1");
    const int k = comps.front().alphabet_size();
    const double inv_n = 1.0 / static_cast<double>(comps.size());
    std::vector<double> m(static_cast<std::size_t>(k), 0.0);
    for (const auto& p : comps)
        for (int x = 0; x < k; ++x) m[static_cast<std::size_t>(x)] += inv_n * p[x];
    // renormalize away accumulation dust so downstream validation stays exact
    double sum = 0.0;
    for (double v : m) sum += v;
    for (double& v : m) v /= sum;
    return FiniteDistribution(std::move(m));
}

}  // namespace

ComponentList::ComponentList(std::vector<FiniteDistribution> components)
    : components_(std::move(components)),
      marginal_(compute_marginal(components_)) {
    if (components_.empty()) throw std::invalid_argument("ComponentList: need n >= 1");
    const int k = components_.front().alphabet_size();
    for (const auto& p : components_)
        if (p.alphabet_size() != k)
            throw std::invalid_argument("ComponentList: components on different alphabets");

    // doubly centered checks: every Psi_i integrates to zero, and the Psi_i
    // sum to zero pointwise
    for (int x = 0; x < k; ++x) {
        double col = 0.0;
        for (const auto& p : components_) col += p[x] - marginal_[x];
        if (std::abs(col) > kCenterTol * n())
            throw std::logic_error("ComponentList: pointwise centering failed");
    }
    for (int i = 0; i < n(); ++i) {
        double row = 0.0;
        for (int x = 0; x < k; ++x) row += component(i)[x] - marginal_[x];
        if (std::abs(row) > kCenterTol)
            throw std::logic_error("ComponentList: Psi integral-zero failed");
    }
}

SignedMeasureVector ComponentList::psi(int i) const {
    const int k = alphabet_size();
    std::vector<double> w(static_cast<std::size_t>(k));
    for (int x = 0; x < k; ++x) w[static_cast<std::size_t>(x)] = component(i)[x] - marginal_[x];
    return SignedMeasureVector(std::move(w));
}

double permutation_mixture_pmf(const ComponentList& c, const std::vector<int>& x,
                               const Config& cfg) {
    const int n = c.n();
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("permutation_mixture_pmf: tuple length != n");
    if (n > cfg.caps.perm_pmf_n)
        throw std::invalid_argument(
            "permutation_mixture_pmf: n exceeds cap; use the permanent-based divergence path");
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = c.component(j)[x[static_cast<std::size_t>(i)]];
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    return permanent_ryser(m, cfg) / fact;
}

double iid_mixture_pmf(const ComponentList& c, const std::vector<int>& x) {
    if (static_cast<int>(x.size()) != c.n())
        throw std::invalid_argument("iid_mixture_pmf: tuple length != n");
    double p = 1.0;
    for (int xi : x) p *= c.marginal()[xi];
    return p;
}

double exact_chi2_bruteforce(const ComponentList& c, const Config& cfg) {
    const int n = c.n();
    const int k = c.alphabet_size();
    double cells = std::pow(static_cast<double>(k), n);
    if (cells > static_cast<double>(cfg.caps.bruteforce_cells))
        throw std::invalid_argument("exact_chi2_bruteforce: |alphabet|^n exceeds cap");

    std::vector<int> x(static_cast<std::size_t>(n), 0);
    KahanSum acc;
    while (true) {
        const double p = permutation_mixture_pmf(c, x, cfg);
        const double q = iid_mixture_pmf(c, x);
        if (q == 0.0) {
            if (p > 1e-15) return kInf;
        } else {
            const double d = p - q;
            acc.add(d * d / q);
        }
        int i = 0;
        for (; i < n; ++i) {
            if (++x[static_cast<std::size_t>(i)] < k) break;
            x[static_cast<std::size_t>(i)] = 0;
        }
        if (i == n) break;
    }
    return acc.value();
}

double instance_capacity(const ComponentList& c) {
    KahanSum s;
    for (int i = 0; i < c.n(); ++i) s.add(chi2(c.component(i), c.marginal()));
    return s.value() / c.n();
}

double max_pair_chi2(const ComponentList& c) {
    double d = 0.0;
    for (int i = 0; i < c.n(); ++i)
        for (int j = 0; j < c.n(); ++j) {
            if (i == j) continue;
            d = std::max(d, chi2(c.component(i), c.component(j)));
        }
    return d;
}

double max_pair_hellinger2(const ComponentList& c) {
    double d = 0.0;
    for (int i = 0; i < c.n(); ++i)
        for (int j = i + 1; j < c.n(); ++j)
            d = std::max(d, hellinger2(c.component(i), c.component(j)));
    return d;
}

double max_pair_h2_singularity(const ComponentList& c) {
    const double h2 = max_pair_hellinger2(c);
    const double b = 1.0 - h2 / 2.0;
    if (b <= 0.0) return kInf;
    return 1.0 / (b * b);
}

ComponentList random_component_list(Rng& rng, int n, int alphabet, double floor) {
    if (floor * alphabet >= 1.0)
        throw std::invalid_argument("random_component_list: floor too large for alphabet");
    std::vector<FiniteDistribution> comps;
    comps.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Dirichlet(1) point mixed toward uniform so every entry >= floor
        std::vector<double> e(static_cast<std::size_t>(alphabet));
        double sum = 0.0;
        for (double& v : e) {
            v = -std::log(rng.uniform01());
            sum += v;
        }
        const double scale = 1.0 - floor * alphabet;
        for (double& v : e) v = floor + scale * (v / sum);
        double total = 0.0;
        for (double v : e) total += v;
        for (double& v : e) v /= total;
        comps.emplace_back(std::move(e));
    }
    return ComponentList(std::move(comps));
}

}  // namespace permix
