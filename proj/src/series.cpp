#include "permix/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "permix/numeric.hpp"
#include "permix/permanent.hpp"

namespace permix {

namespace {

double pow_ratio(int n) {  // n^n / n!
    double r = 1.0;
    for (int i = 1; i <= n; ++i) r *= static_cast<double>(n) / i;
    return r;
}

// next size-k index combination in lexicographic order; false when exhausted
bool next_combination(std::vector<int>& idx, int n) {
    const int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[static_cast<std::size_t>(i)] < n - k + i) {
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

void validate_series(SeriesDecomposition& sd, double chi2_exact) {
    if (std::abs(sd.s[0] - 1.0) > 1e-8)
        throw std::logic_error("s_series: S_0 = " + std::to_string(sd.s[0]) + ", expected 1");
    if (sd.n >= 1 && std::abs(sd.s[1]) > 1e-6)
        throw std::logic_error("s_series: S_1 = " + std::to_string(sd.s[1]) + ", expected 0");
    for (double v : sd.s)
        if (v < -1e-6) throw std::logic_error("s_series: negative S_l = " + std::to_string(v));
    if (!rel_close(sd.chi2(), chi2_exact, 1e-6))
        throw std::logic_error("s_series: sum_l S_l does not match the permanent identity");
    // clean tiny interpolation dust so downstream sums stay nonnegative
    for (double& v : sd.s) v = std::max(v, 0.0);
    sd.r.resize(sd.s.size());
    for (int l = 0; l <= sd.n; ++l)
        sd.r[static_cast<std::size_t>(l)] =
            sd.s[static_cast<std::size_t>(l)] / binomial(sd.n, l);
}

}  // namespace

double exact_chi2_permanent(const MixtureMatrix& a, const Config& cfg) {
    return pow_ratio(a.n()) * permanent_ryser(a.a, cfg) - 1.0;
}

double exact_chi2_permanent(const ComponentList& c, const Config& cfg) {
    return exact_chi2_permanent(build_mixture_matrix(c, cfg), cfg);
}

double SeriesDecomposition::chi2() const {
    KahanSum acc;
    for (double v : s) acc.add(v);
    return acc.value() - 1.0;
}

SeriesDecomposition s_series(const MixtureMatrix& a, SeriesMethod method, const Config& cfg) {
    const int n = a.n();
    SeriesDecomposition sd;
    sd.n = n;
    const Eigen::MatrixXd abar = a.centered();
    const Eigen::MatrixXd jn = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    const double scale = pow_ratio(n);  // Perm(t*Abar + J/n) = n!/n^n * sum_l S_l t^l

    if (method == SeriesMethod::Interpolation) {
        if (n > cfg.caps.permanent_n)
            throw std::invalid_argument("s_series: n exceeds the permanent cap");
        std::vector<long double> nodes(static_cast<std::size_t>(n + 1));
        std::vector<long double> values(static_cast<std::size_t>(n + 1));
        for (int k = 0; k <= n; ++k) {
            const double t = static_cast<double>(k) / n;
            nodes[static_cast<std::size_t>(k)] = t;
            values[static_cast<std::size_t>(k)] = permanent_ryser(Eigen::MatrixXd(t * abar + jn), cfg);
        }

        // Newton divided differences, then expansion into monomial
        // coefficients; extended precision buys a few digits against the
        // equispaced-node conditioning, which grows quickly with n
        std::vector<long double> dd = values;
        for (int j = 1; j <= n; ++j)
            for (int i = n; i >= j; --i)
                dd[static_cast<std::size_t>(i)] =
                    (dd[static_cast<std::size_t>(i)] - dd[static_cast<std::size_t>(i - 1)]) /
                    (nodes[static_cast<std::size_t>(i)] - nodes[static_cast<std::size_t>(i - j)]);
        std::vector<long double> coef(static_cast<std::size_t>(n + 1), 0.0L);
        std::vector<long double> basis(static_cast<std::size_t>(n + 1), 0.0L);
        basis[0] = 1.0L;
        for (int i = 0; i <= n; ++i) {
            for (int d = 0; d <= i; ++d)
                coef[static_cast<std::size_t>(d)] +=
                    dd[static_cast<std::size_t>(i)] * basis[static_cast<std::size_t>(d)];
            if (i < n) {  // basis *= (t - t_i)
                for (int d = i + 1; d >= 1; --d)
                    basis[static_cast<std::size_t>(d)] =
                        basis[static_cast<std::size_t>(d - 1)] -
                        nodes[static_cast<std::size_t>(i)] * basis[static_cast<std::size_t>(d)];
                basis[0] *= -nodes[static_cast<std::size_t>(i)];
            }
        }

        // residual guard off the interpolation grid
        const double probe = permanent_ryser(Eigen::MatrixXd(0.5 * abar + jn), cfg);
        long double poly = 0.0L;
        for (int d = n; d >= 0; --d) poly = poly * 0.5L + coef[static_cast<std::size_t>(d)];
        if (!rel_close(static_cast<double>(poly), probe, 1e-6))
            throw std::runtime_error(
                "s_series: interpolation residual too large; use the direct method");

        sd.s.resize(static_cast<std::size_t>(n + 1));
        for (int l = 0; l <= n; ++l)
            sd.s[static_cast<std::size_t>(l)] =
                static_cast<double>(scale * coef[static_cast<std::size_t>(l)]);
    } else {
        double work = 0.0;
        for (int l = 0; l <= n; ++l) {
            const double c = binomial(n, l);
            work += c * c * std::pow(2.0, l) * std::max(l, 1);
        }
        if (work > cfg.caps.series_direct_work)
            throw std::invalid_argument("s_series: direct subset-pair budget exceeded");

        std::vector<double> tvals(static_cast<std::size_t>(n + 1), 0.0);
        tvals[0] = 1.0;  // empty submatrix
        for (int l = 1; l <= n; ++l) {
            KahanSum acc;
            std::vector<int> rows(static_cast<std::size_t>(l));
            std::iota(rows.begin(), rows.end(), 0);
            do {
                std::vector<int> cols(static_cast<std::size_t>(l));
                std::iota(cols.begin(), cols.end(), 0);
                do {
                    Eigen::MatrixXd sub(l, l);
                    for (int i = 0; i < l; ++i)
                        for (int j = 0; j < l; ++j)
                            sub(i, j) = abar(rows[static_cast<std::size_t>(i)],
                                             cols[static_cast<std::size_t>(j)]);
                    acc.add(permanent_ryser(sub, cfg));
                } while (next_combination(cols, n));
            } while (next_combination(rows, n));
            tvals[static_cast<std::size_t>(l)] = acc.value();
        }

        sd.s.resize(static_cast<std::size_t>(n + 1));
        for (int l = 0; l <= n; ++l) {
            // S_l = (n-l)!/n! * n^l * T_l
            double f = 1.0;
            for (int i = 0; i < l; ++i) f *= static_cast<double>(n) / (n - i);
            sd.s[static_cast<std::size_t>(l)] = f * tvals[static_cast<std::size_t>(l)];
        }
        sd.t = std::move(tvals);
    }

    try {
        validate_series(sd, exact_chi2_permanent(a, cfg));
    } catch (const std::logic_error& e) {
        if (method == SeriesMethod::Interpolation)
            throw std::runtime_error(std::string(e.what()) +
                                     "; interpolation is ill-conditioned here, use the direct "
                                     "method");
        throw;
    }
    return sd;
}

double r_ell_dp(const ComponentList& c, int ell, const Config& cfg) {
    const int n = c.n();
    const int k = c.alphabet_size();
    if (ell < 0 || ell > n) throw std::invalid_argument("r_ell: need 0 <= l <= n");
    if (ell == 0) return 1.0;

    double falling = 1.0;
    for (int i = 0; i < ell; ++i) falling *= n - i;

    std::vector<int> x(static_cast<std::size_t>(ell), 0);
    Eigen::MatrixXd b(ell, n);
    KahanSum acc;
    while (true) {
        double weight = 1.0;
        for (int i = 0; i < ell; ++i) weight *= c.marginal()[x[static_cast<std::size_t>(i)]];
        if (weight > 0.0) {
            for (int i = 0; i < ell; ++i) {
                const int xi = x[static_cast<std::size_t>(i)];
                const double pb = c.marginal()[xi];
                for (int j = 0; j < n; ++j) b(i, j) = (c.component(j)[xi] - pb) / pb;
            }
            const double inner = rectangular_permanent_sum(b, cfg) / falling;
            acc.add(weight * inner * inner);
        }
        int i = 0;
        for (; i < ell; ++i) {
            if (++x[static_cast<std::size_t>(i)] < k) break;
            x[static_cast<std::size_t>(i)] = 0;
        }
        if (i == ell) break;
    }
    return acc.value();
}

double r_ell_enumeration(const ComponentList& c, int ell, const Config& cfg) {
    const int n = c.n();
    const int k = c.alphabet_size();
    if (ell < 0 || ell > n) throw std::invalid_argument("r_ell_enumeration: need 0 <= l <= n");
    if (ell > cfg.caps.r_ell_max || n > cfg.caps.r_ell_n)
        throw std::invalid_argument("r_ell_enumeration: enumeration budget exceeded");
    if (ell == 0) return 1.0;

    // ordered l-tuples of distinct component indices (only the images of the
    // first l positions of the permutation matter)
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    const auto recurse = [&](auto&& self) -> void {
        if (static_cast<int>(cur.size()) == ell) {
            tuples.push_back(cur);
            return;
        }
        for (int j = 0; j < n; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            used[static_cast<std::size_t>(j)] = true;
            cur.push_back(j);
            self(self);
            cur.pop_back();
            used[static_cast<std::size_t>(j)] = false;
        }
    };
    recurse(recurse);

    std::vector<int> x(static_cast<std::size_t>(ell), 0);
    KahanSum acc;
    while (true) {
        double weight = 1.0;
        for (int i = 0; i < ell; ++i) weight *= c.marginal()[x[static_cast<std::size_t>(i)]];
        if (weight > 0.0) {
            KahanSum inner;
            for (const auto& tup : tuples) {
                double prod = 1.0;
                for (int i = 0; i < ell; ++i) {
                    const int xi = x[static_cast<std::size_t>(i)];
                    const double pb = c.marginal()[xi];
                    prod *= (c.component(tup[static_cast<std::size_t>(i)])[xi] - pb) / pb;
                }
                inner.add(prod);
            }
            const double mean = inner.value() / static_cast<double>(tuples.size());
            acc.add(weight * mean * mean);
        }
        int i = 0;
        for (; i < ell; ++i) {
            if (++x[static_cast<std::size_t>(i)] < k) break;
            x[static_cast<std::size_t>(i)] = 0;
        }
        if (i == ell) break;
    }
    return acc.value();
}

PermanentSandwich permanent_sandwich(const MixtureMatrix& a, const Config& cfg) {
    const int n = a.n();
    PermanentSandwich out;
    out.lower = 1.0 / pow_ratio(n);
    double log_upper = std::log(out.lower);
    bool infinite = false;
    for (int i = 1; i < n; ++i) {
        const double lam = a.eigenvalues(i);
        if (lam >= 1.0 - 1e-12) {
            infinite = true;
            break;
        }
        log_upper -= std::log1p(-lam);
    }
    out.upper = infinite ? kInf : std::exp(log_upper);

    if (n <= cfg.caps.permanent_n) {
        const double perm = permanent_ryser(a.a, cfg);
        out.permanent = perm;
        if (perm < out.lower - 1e-10)
            throw std::logic_error("permanent_sandwich: van der Waerden floor violated");
        if (std::isfinite(out.upper) && perm > out.upper * (1.0 + 1e-8))
            throw std::logic_error("permanent_sandwich: spectral ceiling violated");
    }
    return out;
}

double complete_homogeneous_sum(const Eigen::VectorXd& x, int ell) {
    if (ell < 0) return 0.0;
    std::vector<double> h(static_cast<std::size_t>(ell + 1), 0.0);
    h[0] = 1.0;
    for (Eigen::Index j = 0; j < x.size(); ++j)
        for (int d = 1; d <= ell; ++d)
            h[static_cast<std::size_t>(d)] += x(j) * h[static_cast<std::size_t>(d - 1)];
    return h[static_cast<std::size_t>(ell)];
}

}  // namespace permix
