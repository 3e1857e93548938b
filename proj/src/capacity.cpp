#include "permix/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "permix/numeric.hpp"
#include "permix/quadrature.hpp"
#include "permix/rng.hpp"

namespace permix {

double chi2_mutual_information(const std::vector<FiniteDistribution>& family,
                               const std::vector<double>& prior) {
    if (family.empty()) throw std::invalid_argument("chi2_mutual_information: empty family");
    if (prior.size() != family.size())
        throw std::invalid_argument("chi2_mutual_information: prior length mismatch");
    double psum = 0.0;
    for (double p : prior) {
        if (p < -1e-12) throw std::invalid_argument("chi2_mutual_information: negative prior");
        psum += p;
    }
    if (std::abs(psum - 1.0) > 1e-9)
        throw std::invalid_argument("chi2_mutual_information: prior does not sum to 1");

    const int k = family.front().alphabet_size();
    std::vector<double> mix(static_cast<std::size_t>(k), 0.0);
    for (std::size_t i = 0; i < family.size(); ++i)
        for (int x = 0; x < k; ++x)
            mix[static_cast<std::size_t>(x)] += prior[i] * family[i][x];

    KahanSum acc;
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (prior[i] <= 0.0) continue;
        KahanSum term;  // chi^2(P_i || mix)
        for (int x = 0; x < k; ++x) {
            const double px = family[i][x];
            const double mx = mix[static_cast<std::size_t>(x)];
            if (mx == 0.0) {
                if (px > 0.0) return kInf;
                continue;
            }
            const double d = px - mx;
            term.add(d * d / mx);
        }
        acc.add(prior[i] * term.value());
    }
    return acc.value();
}

namespace {

// Euclidean projection onto the probability simplex
std::vector<double> project_simplex(std::vector<double> v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0, tau = 0.0;
    int rho = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        css += u[i];
        const double t = (css - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) {
            rho = static_cast<int>(i + 1);
            tau = t;
        }
    }
    (void)rho;
    for (double& x : v) x = std::max(0.0, x - tau);
    return v;
}

double ascend_from(const std::vector<FiniteDistribution>& family, std::vector<double> rho,
                   int iterations) {
    const std::size_t m = family.size();
    double best = chi2_mutual_information(family, rho);
    const double h = 1e-6;
    double step = 0.5;
    for (int it = 0; it < iterations; ++it) {
        std::vector<double> grad(m);
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<double> bumped = rho;
            bumped[i] += h;
            const double scale = 1.0 + h;
            for (double& x : bumped) x /= scale;
            grad[i] = (chi2_mutual_information(family, bumped) - best) / h;
        }
        bool improved = false;
        while (step > 1e-12) {
            std::vector<double> trial = rho;
            for (std::size_t i = 0; i < m; ++i) trial[i] += step * grad[i];
            trial = project_simplex(std::move(trial));
            const double val = chi2_mutual_information(family, trial);
            if (val > best) {
                best = val;
                rho = std::move(trial);
                improved = true;
                step *= 1.5;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    return best;
}

}  // namespace

double capacity_estimate(const std::vector<FiniteDistribution>& family, int restarts,
                         std::uint64_t seed, const Config& cfg) {
    (void)cfg;
    if (family.empty()) throw std::invalid_argument("capacity_estimate: empty family");
    if (family.size() > 64) throw std::invalid_argument("capacity_estimate: family too large");
    const std::size_t m = family.size();
    if (m == 1) return 0.0;

    double best = ascend_from(family, std::vector<double>(m, 1.0 / m), 200);
    for (int r = 0; r < restarts; ++r) {
        Rng rng = derive_rng(seed, static_cast<std::uint64_t>(r));
        std::vector<double> rho(m);
        double sum = 0.0;
        for (double& x : rho) {
            x = -std::log(rng.uniform01());  // Dirichlet(1)
            sum += x;
        }
        for (double& x : rho) x /= sum;
        best = std::max(best, ascend_from(family, std::move(rho), 200));
    }
    return best;
}

double union_capacity_bound(const std::vector<double>& bounds) {
    if (bounds.empty()) throw std::invalid_argument("union_capacity_bound: empty list");
    KahanSum s;
    for (double b : bounds) s.add(b);
    return s.value() + static_cast<double>(bounds.size()) - 1.0;
}

double gaussian_pair_chi2(double t1, double t2) {
    const double d = t1 - t2;
    return std::expm1(d * d);
}

double gaussian_pair_h2(double t1, double t2) {
    const double d = t1 - t2;
    return 2.0 - 2.0 * std::exp(-d * d / 8.0);
}

double gaussian_pair_h2_quadrature(double t1, double t2, int order) {
    // 2 - 2 int sqrt(phi_{t1} phi_{t2}); integrate against phi centered at
    // the midpoint
    const double mid = 0.5 * (t1 + t2);
    const double bc = integrate_gaussian(
        [&](double z) {
            const double x = z + mid;
            const double a = x - t1, b = x - t2, c = x - mid;
            return std::exp(-0.25 * (a * a + b * b) + 0.5 * c * c);
        },
        order);
    return 2.0 - 2.0 * bc;
}

double poisson_pair_h2(double l1, double l2) {
    const double d = std::sqrt(l1) - std::sqrt(l2);
    return 2.0 - 2.0 * std::exp(-d * d / 2.0);
}

double poisson_pair_h2_sum(double l1, double l2, double truncation_mass) {
    if (truncation_mass > 1e-6)
        throw std::invalid_argument("poisson: truncation mass too large for accurate diameters");
    // truncate where both tails are below the admissible mass; the geometric
    // tail factor is only valid once kmax clears 2*lambda, so insist on that
    const double lmax = std::max(l1, l2);
    int kmax = static_cast<int>(2.0 * lmax) + 8;
    while (true) {
        const double logtail =
            kmax * std::log(std::max(lmax, 1e-300)) - log_factorial(kmax) - lmax + std::log(4.0);
        if (std::exp(logtail) < truncation_mass || kmax > 200000) break;
        kmax += 8;
    }
    KahanSum bc;
    for (int k = 0; k <= kmax; ++k) {
        const double lp1 = k * std::log(std::max(l1, 1e-300)) - l1 - log_factorial(k);
        const double lp2 = k * std::log(std::max(l2, 1e-300)) - l2 - log_factorial(k);
        if (l1 == 0.0) {
            if (k == 0) bc.add(std::exp(0.5 * lp2));
            continue;
        }
        if (l2 == 0.0) {
            if (k == 0) bc.add(std::exp(0.5 * lp1));
            continue;
        }
        bc.add(std::exp(0.5 * (lp1 + lp2)));
    }
    return 2.0 - 2.0 * bc.value();
}

std::vector<FiniteDistribution> discretize_family(const FamilySpec& spec, int grid_points,
                                                  const Config& cfg) {
    (void)cfg;
    if (grid_points < 2) throw std::invalid_argument("discretize_family: need >= 2 grid points");

    if (const auto* ex = std::get_if<ExplicitFinite>(&spec)) return ex->components;

    if (const auto* be = std::get_if<BernoulliInterval>(&spec)) {
        std::vector<FiniteDistribution> fam;
        for (int i = 0; i < grid_points; ++i) {
            const double p = be->eps + (1.0 - 2.0 * be->eps) * i / (grid_points - 1);
            fam.push_back(FiniteDistribution::bernoulli(p));
        }
        return fam;
    }

    if (const auto* ga = std::get_if<GaussianLocation>(&spec)) {
        std::vector<double> means;
        if (ga->support) {
            means = *ga->support;
        } else {
            for (int i = 0; i < grid_points; ++i)
                means.push_back(-ga->mu_max + 2.0 * ga->mu_max * i / (grid_points - 1));
        }
        // bin the real line; quantization only reduces chi^2 information
        const double lo = -ga->mu_max - 8.0, hi = ga->mu_max + 8.0;
        const int bins = 400;
        const auto cdf = [](double z) { return 0.5 * std::erfc(-z * 0.70710678118654752440); };
        std::vector<FiniteDistribution> fam;
        for (double mu : means) {
            std::vector<double> p(static_cast<std::size_t>(bins + 2), 0.0);
            p[0] = cdf(lo - mu);
            for (int b = 0; b < bins; ++b) {
                const double a = lo + (hi - lo) * b / bins;
                const double bnd = lo + (hi - lo) * (b + 1) / bins;
                p[static_cast<std::size_t>(b + 1)] = cdf(bnd - mu) - cdf(a - mu);
            }
            p[static_cast<std::size_t>(bins + 1)] = 1.0 - cdf(hi - mu);
            double sum = 0.0;
            for (double v : p) sum += v;
            for (double& v : p) v /= sum;
            fam.emplace_back(std::move(p));
        }
        return fam;
    }

    const auto& po = std::get<PoissonInterval>(spec);
    const int kmax = static_cast<int>(po.m_max + 12.0 * std::sqrt(po.m_max + 1.0) + 20);
    std::vector<FiniteDistribution> fam;
    for (int i = 0; i < grid_points; ++i) {
        const double lam = po.m_max * i / (grid_points - 1);
        std::vector<double> p(static_cast<std::size_t>(kmax + 2), 0.0);
        double mass = 0.0;
        for (int k = 0; k <= kmax; ++k) {
            const double lp = lam == 0.0 ? (k == 0 ? 0.0 : -kInf)
                                         : k * std::log(lam) - lam - log_factorial(k);
            p[static_cast<std::size_t>(k)] = std::exp(lp);
            mass += p[static_cast<std::size_t>(k)];
        }
        p[static_cast<std::size_t>(kmax + 1)] = std::max(0.0, 1.0 - mass);  // lumped tail
        double sum = 0.0;
        for (double v : p) sum += v;
        for (double& v : p) v /= sum;
        fam.emplace_back(std::move(p));
    }
    return fam;
}

namespace {

FamilyFunctionals finish(FamilyFunctionals f) {
    const double bc = 1.0 - f.d_h2 / 2.0;
    f.delta_h2 = bc <= 0.0 ? kInf : 1.0 / (bc * bc);
    if (f.c_chi2_estimate > f.c_chi2_upper + 1e-8)
        throw std::logic_error("family_functionals: estimate exceeds the certified bound");
    if (std::isfinite(f.d_chi2) && f.c_chi2_upper > f.d_chi2 + 1e-8)
        throw std::logic_error("family_functionals: capacity bound exceeds the chi^2 diameter");
    if (std::isfinite(f.delta_h2) && std::isfinite(f.d_chi2) &&
        f.delta_h2 > f.d_chi2 + 1.0 + 1e-8)
        throw std::logic_error("family_functionals: singularity exceeds diameter + 1");
    return f;
}

}  // namespace

FamilyFunctionals family_functionals(const FamilySpec& spec, const Config& cfg, int restarts,
                                     std::uint64_t seed) {
    FamilyFunctionals f;

    if (const auto* ex = std::get_if<ExplicitFinite>(&spec)) {
        const auto& fam = ex->components;
        if (fam.empty()) throw std::invalid_argument("family_functionals: empty family");
        for (std::size_t i = 0; i < fam.size(); ++i)
            for (std::size_t j = 0; j < fam.size(); ++j) {
                if (i == j) continue;
                f.d_chi2 = std::max(f.d_chi2, chi2(fam[i], fam[j]));
                if (i < j) f.d_h2 = std::max(f.d_h2, hellinger2(fam[i], fam[j]));
            }
        f.c_chi2_upper = std::min(static_cast<double>(fam.size()) - 1.0, f.d_chi2);
        f.c_chi2_estimate = capacity_estimate(fam, restarts, seed, cfg);
        return finish(f);
    }

    if (const auto* be = std::get_if<BernoulliInterval>(&spec)) {
        if (!(be->eps > 0.0 && be->eps <= 0.5))
            throw std::invalid_argument("family_functionals: need eps in (0, 1/2]");
        const double e = be->eps;
        f.d_chi2 = (1.0 - 2.0 * e) * (1.0 - 2.0 * e) / (e * (1.0 - e));
        f.d_h2 = 2.0 - 4.0 * std::sqrt(e * (1.0 - e));
        f.c_chi2_upper = std::min(1.0 - 2.0 * e, f.d_chi2);
        f.c_chi2_estimate =
            capacity_estimate(discretize_family(spec, 33, cfg), restarts, seed, cfg);
        return finish(f);
    }

    if (const auto* ga = std::get_if<GaussianLocation>(&spec)) {
        if (!(ga->mu_max >= 0.0))
            throw std::invalid_argument("family_functionals: need mu_max >= 0");
        double max_gap = 2.0 * ga->mu_max;
        if (ga->support) {
            if (ga->support->empty())
                throw std::invalid_argument("family_functionals: empty support");
            max_gap = 0.0;
            for (double t : *ga->support) {
                if (std::abs(t) > ga->mu_max + 1e-12)
                    throw std::invalid_argument("family_functionals: support outside [-mu, mu]");
                for (double u : *ga->support) max_gap = std::max(max_gap, std::abs(t - u));
            }
        }
        f.d_chi2 = gaussian_pair_chi2(0.0, max_gap);
        f.d_h2 = gaussian_pair_h2(0.0, max_gap);
        const double strips = 2.0 * std::floor(ga->mu_max + 1.0) + 1.0;
        const double strip_route = strips * (std::exp(1.0) - 1.0) + strips - 1.0;
        f.c_chi2_upper = std::min(f.d_chi2, strip_route);
        if (ga->support)
            f.c_chi2_upper =
                std::min(f.c_chi2_upper, static_cast<double>(ga->support->size()) - 1.0);
        const int grid = ga->support ? static_cast<int>(ga->support->size()) : 17;
        f.c_chi2_estimate =
            capacity_estimate(discretize_family(spec, std::max(grid, 2), cfg), restarts, seed,
                              cfg);
        return finish(f);
    }

    const auto& po = std::get<PoissonInterval>(spec);
    if (!(po.m_max >= 0.0)) throw std::invalid_argument("family_functionals: need m_max >= 0");
    f.d_chi2 = po.m_max > 0.0 ? kInf : 0.0;  // Poi(0) vs Poi(m) is singular in chi^2
    f.d_h2 = poisson_pair_h2(0.0, po.m_max);
    {  // cross-check the closed form against the truncated discrete sum
        const double by_sum = poisson_pair_h2_sum(0.0, po.m_max, po.truncation_mass);
        if (std::abs(by_sum - f.d_h2) > 1e-8)
            throw std::logic_error("family_functionals: Poisson H^2 sum disagrees");
    }
    if (po.m_max <= 1.0) {
        f.c_chi2_upper = po.m_max;
    } else {
        const int strips = static_cast<int>(std::ceil(std::sqrt(po.m_max)));
        std::vector<double> parts;
        parts.push_back(-std::expm1(-std::min(1.0, po.m_max)));  // 1 - e^{-min(1, M)}
        for (int i = 2; i <= strips; ++i) {
            const double lo = static_cast<double>(i - 1) * (i - 1);
            const double hi = std::min(static_cast<double>(i) * i, po.m_max);
            const double gap = hi - lo;
            parts.push_back(std::expm1(gap * gap / lo));
        }
        f.c_chi2_upper = union_capacity_bound(parts);
    }
    f.c_chi2_estimate = capacity_estimate(discretize_family(spec, 17, cfg), restarts, seed, cfg);
    return finish(f);
}

}  // namespace permix
