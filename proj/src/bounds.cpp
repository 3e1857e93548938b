#include "permix/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "permix/capacity.hpp"
#include "permix/mixture_matrix.hpp"
#include "permix/numeric.hpp"
#include "permix/permanent.hpp"

namespace permix {

namespace {

// pmf table of the permutation mixture over all |alphabet|^n tuples
std::vector<double> mixture_table(const ComponentList& c, const Config& cfg) {
    const int n = c.n();
    const int k = c.alphabet_size();
    const double cells = std::pow(static_cast<double>(k), n);
    if (cells > static_cast<double>(cfg.caps.bruteforce_cells))
        throw std::invalid_argument("enumeration cap exceeded");
    std::vector<double> table(static_cast<std::size_t>(cells));
    std::vector<int> x(static_cast<std::size_t>(n), 0);
    for (std::size_t cell = 0;; ++cell) {
        table[cell] = permutation_mixture_pmf(c, x, cfg);
        int i = 0;
        for (; i < n; ++i) {
            if (++x[static_cast<std::size_t>(i)] < k) break;
            x[static_cast<std::size_t>(i)] = 0;
        }
        if (i == n) break;
    }
    return table;
}

}  // namespace

ThmBounds thm_main_bounds(int n, double c, double delta_h2, double d_chi2) {
    if (c < 0.0 || d_chi2 < 0.0 || delta_h2 < 1.0)
        throw std::invalid_argument("thm_main_bounds: need c, d >= 0 and delta >= 1");
    ThmBounds b{};

    if (n < 2 || c == 0.0) {
        b.ub1 = 0.0;
    } else if (std::isinf(c)) {
        b.ub1 = kInf;
    } else if (c == 1.0) {
        b.ub1 = 10.0 * (n - 1);
    } else {
        // 10 * c^2 * (1 - c^(n-1)) / (1 - c), in logs when c > 1
        if (c < 1.0) {
            b.ub1 = 10.0 * c * c * (1.0 - std::pow(c, n - 1)) / (1.0 - c);
        } else {
            const double log_top = (n + 1) * std::log(c);
            b.ub1 = 10.0 * (std::exp(log_top) - c * c) / (c - 1.0);
        }
    }

    b.ub2 = (std::isinf(delta_h2) && c > 0.0) ? kInf
                                              : std::expm1(c * (1.0 + std::log(delta_h2)));
    b.ub3 = (std::isinf(d_chi2)) ? kInf : pow1p_minus1(d_chi2, 1.0 + c);
    return b;
}

BoundReport evaluate_instance(const ComponentList& c, const Config& cfg) {
    BoundReport rep;
    rep.inputs.n = c.n();
    rep.inputs.capacity = instance_capacity(c);
    rep.inputs.delta_h2 = max_pair_h2_singularity(c);
    rep.inputs.d_chi2 = max_pair_chi2(c);

    const auto b = thm_main_bounds(c.n(), rep.inputs.capacity, rep.inputs.delta_h2,
                                   rep.inputs.d_chi2);
    rep.ub1 = b.ub1;
    rep.ub2 = b.ub2;
    rep.ub3 = b.ub3;

    const MixtureMatrix mm = build_mixture_matrix(c, cfg);
    const double lam2 = mm.lambda2();
    rep.lower_spectral = lam2 >= 1.0 ? kInf : 1.0 / std::sqrt(1.0 - lam2 * lam2) - 1.0;

    if (c.n() <= cfg.caps.permanent_n) {
        const double exact = exact_chi2_permanent(mm, cfg);
        rep.exact_chi2 = exact;
        for (double ub : {rep.ub1, rep.ub2, rep.ub3}) {
            if (!std::isfinite(ub)) continue;
            if (exact > ub + cfg.tol.comparison * (1.0 + ub))
                throw std::logic_error("evaluate_instance: exact chi^2 exceeds an upper bound");
        }
    }
    return rep;
}

double definetti_marginal_chi2_bruteforce(const ComponentList& c, int k, const Config& cfg) {
    const int n = c.n();
    const int ab = c.alphabet_size();
    if (k < 1 || k > n) throw std::invalid_argument("definetti: need 1 <= k <= n");
    const double cells = std::pow(static_cast<double>(ab), k);
    if (cells > static_cast<double>(cfg.caps.bruteforce_cells))
        throw std::invalid_argument("definetti: enumeration cap exceeded");

    double falling = 1.0;
    for (int i = 0; i < k; ++i) falling *= n - i;

    std::vector<int> y(static_cast<std::size_t>(k), 0);
    Eigen::MatrixXd b(k, n);
    KahanSum acc;
    while (true) {
        // marginal pmf: average over ordered injections of components into
        // the first k coordinates
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < n; ++j) b(i, j) = c.component(j)[y[static_cast<std::size_t>(i)]];
        const double p = rectangular_permanent_sum(b, cfg) / falling;
        double q = 1.0;
        for (int i = 0; i < k; ++i) q *= c.marginal()[y[static_cast<std::size_t>(i)]];
        if (q == 0.0) {
            if (p > 1e-15) return kInf;
        } else {
            const double d = p - q;
            acc.add(d * d / q);
        }
        int i = 0;
        for (; i < k; ++i) {
            if (++y[static_cast<std::size_t>(i)] < ab) break;
            y[static_cast<std::size_t>(i)] = 0;
        }
        if (i == k) break;
    }
    return acc.value();
}

DeFinettiResult definetti_bound_and_exact(const ComponentList& c, int k, const Config& cfg) {
    const int n = c.n();
    if (k < 1 || k > n) throw std::invalid_argument("definetti: need 1 <= k <= n");
    const MixtureMatrix mm = build_mixture_matrix(c, cfg);
    const auto sd = s_series(mm, SeriesMethod::Interpolation, cfg);

    DeFinettiResult out;
    KahanSum acc;
    for (int l = 2; l <= k; ++l)
        acc.add(sd.s[static_cast<std::size_t>(l)] * binomial(k, l) / binomial(n, l));
    out.exact = acc.value();

    const double cap = instance_capacity(c);
    const double delta = max_pair_h2_singularity(c);
    const auto b = thm_main_bounds(n, cap, delta, max_pair_chi2(c));
    double ub = kInf;
    for (double v : {b.ub1, b.ub2})
        if (std::isfinite(v)) ub = std::min(ub, v);
    const double prefactor =
        (static_cast<double>(k) * (k - 1)) / (static_cast<double>(n) * (n - 1 ? n - 1 : 1));
    out.bound = prefactor * ub;
    return out;
}

TwoMixturesResult two_mixtures_check(const ComponentList& shared, const FiniteDistribution& p1,
                                     const FiniteDistribution& q1, const Config& cfg) {
    const int ab = shared.alphabet_size();
    if (p1.alphabet_size() != ab || q1.alphabet_size() != ab)
        throw std::invalid_argument("two_mixtures_check: alphabet mismatch");
    const int n = shared.n() + 1;

    std::vector<FiniteDistribution> pc{p1}, qc{q1};
    for (const auto& d : shared.components()) {
        pc.push_back(d);
        qc.push_back(d);
    }
    const ComponentList cp(std::move(pc)), cq(std::move(qc));
    const auto pt = mixture_table(cp, cfg);
    const auto qt = mixture_table(cq, cfg);

    TwoMixturesResult out;
    KahanSum tv_acc, mid_acc;
    std::vector<int> x(static_cast<std::size_t>(n), 0);
    bool mid_infinite = false;
    for (std::size_t cell = 0; cell < pt.size(); ++cell) {
        const double diff = pt[cell] - qt[cell];
        tv_acc.add(std::abs(diff));
        double base = 1.0;
        for (int i = 0; i < n; ++i) base *= shared.marginal()[x[static_cast<std::size_t>(i)]];
        if (base == 0.0) {
            if (std::abs(diff) > 1e-15) mid_infinite = true;
        } else {
            mid_acc.add(diff * diff / base);
        }
        int i = 0;
        for (; i < n; ++i) {
            if (++x[static_cast<std::size_t>(i)] < ab) break;
            x[static_cast<std::size_t>(i)] = 0;
        }
    }
    const double tv = 0.5 * tv_acc.value();
    out.tv2 = tv * tv;
    out.middle = mid_infinite ? kInf : 0.25 * mid_acc.value();

    // series from the shared components only
    const auto sd = s_series(build_mixture_matrix(shared, cfg), SeriesMethod::Interpolation, cfg);

    // family quantities over all n+1 components
    std::vector<FiniteDistribution> fam{p1, q1};
    for (const auto& d : shared.components()) fam.push_back(d);
    double d_chi2 = 0.0, max_h2 = 0.0;
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = 0; j < fam.size(); ++j) {
            if (i == j) continue;
            d_chi2 = std::max(d_chi2, chi2(fam[i], fam[j]));
            if (i < j) max_h2 = std::max(max_h2, hellinger2(fam[i], fam[j]));
        }
    const double bc = 1.0 - max_h2 / 2.0;
    const double delta = bc <= 0.0 ? kInf : 1.0 / (bc * bc);
    const double cap_upper = std::min(static_cast<double>(fam.size() - 1), d_chi2);

    KahanSum ws;
    for (int l = 1; l <= n; ++l) ws.add(l * sd.s[static_cast<std::size_t>(l - 1)]);
    out.weighted_series = d_chi2 / n * ws.value();
    out.bound = std::isinf(delta)
                    ? kInf
                    : 3.0 * d_chi2 / n * std::exp(3.0 * cap_upper * (1.0 + std::log(delta)));

    const double rel = cfg.tol.comparison;
    if (out.tv2 > out.middle * (1.0 + rel) + 1e-15)
        throw std::logic_error("two_mixtures_check: TV^2 exceeds the quadratic middle term");
    if (out.middle > out.weighted_series * (1.0 + rel) + 1e-15)
        throw std::logic_error("two_mixtures_check: middle term exceeds the weighted series");
    if (out.weighted_series > out.bound * (1.0 + rel) + 1e-15)
        throw std::logic_error("two_mixtures_check: weighted series exceeds the closed bound");
    return out;
}

double eb_risk_gap_bound(double m_loss, int n, double c, double delta_h2, double d_chi2) {
    if (m_loss < 0.0 || c < 0.0 || d_chi2 < 0.0 || delta_h2 < 1.0)
        throw std::invalid_argument("eb_risk_gap_bound: invalid inputs");
    if (m_loss == 0.0 || d_chi2 == 0.0) return 0.0;
    if (std::isinf(d_chi2) || std::isinf(delta_h2) || std::isinf(c)) return kInf;
    const double log_val = std::log(6.0) + std::log(static_cast<double>(n)) + std::log(d_chi2) +
                           3.0 * c * (1.0 + std::log(delta_h2));
    return m_loss * std::exp(0.5 * log_val);
}

MutualInfoResult mutual_info_gap(const ComponentList& c, const Config& cfg) {
    const int n = c.n();
    const int ab = c.alphabet_size();
    const auto table = mixture_table(c, cfg);

    MutualInfoResult out;
    KahanSum acc;
    std::vector<int> x(static_cast<std::size_t>(n), 0);
    for (std::size_t cell = 0; cell < table.size(); ++cell) {
        const double p = table[cell];
        if (p > 0.0) {
            double q = 1.0;
            for (int i = 0; i < n; ++i) q *= c.marginal()[x[static_cast<std::size_t>(i)]];
            if (q == 0.0) {
                out.gap = kInf;
                break;
            }
            acc.add(p * std::log(p / q));
        }
        int i = 0;
        for (; i < n; ++i) {
            if (++x[static_cast<std::size_t>(i)] < ab) break;
            x[static_cast<std::size_t>(i)] = 0;
        }
    }
    if (!std::isinf(out.gap)) out.gap = acc.value();

    const double info = instance_capacity(c);
    const double delta = max_pair_h2_singularity(c);
    const double ub1 = thm_main_bounds(n, info, 1.0, 0.0).ub1;
    const double ub2 = std::isinf(delta) && info > 0.0 ? kInf : info * (1.0 + std::log(delta));
    out.ub = std::min(ub1, ub2);

    if (out.gap < -1e-10) throw std::logic_error("mutual_info_gap: negative gap");
    if (out.gap > out.ub + cfg.tol.comparison * (1.0 + std::abs(out.ub)))
        throw std::logic_error("mutual_info_gap: gap exceeds the stated bound");
    return out;
}

WorstCaseMatrix worst_case_matrix(double c_target, double delta, const Config& cfg) {
    if (!(c_target >= 1.0)) throw std::invalid_argument("worst_case_matrix: need c_target >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("worst_case_matrix: need 0 < delta < 1");

    WorstCaseMatrix out;
    out.m = static_cast<int>(std::ceil(c_target));
    out.block = std::max(2, static_cast<int>(std::ceil(1.0 / (-2.0 * std::log1p(-delta)))));
    out.delta = delta;
    const int dim = out.m * out.block;
    if (dim > cfg.caps.worst_case_dim)
        throw std::invalid_argument("worst_case_matrix: dimension " + std::to_string(out.m) +
                                    "x" + std::to_string(out.block) + " exceeds cap");

    out.a.resize(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const bool same_block = (i / out.block) == (j / out.block);
            double v = delta / dim;
            if (out.m == 1)
                v = 1.0 / out.block * (same_block ? 1.0 : 0.0);  // single block: J_b / b
            else if (same_block)
                v += (1.0 - delta) / out.block;
            out.a(i, j) = v;
        }

    // validate stochasticity and the advertised spectrum exactly
    for (int i = 0; i < dim; ++i)
        if (std::abs(out.a.row(i).sum() - 1.0) > 1e-10 || std::abs(out.a.col(i).sum() - 1.0) > 1e-10)
            throw std::logic_error("worst_case_matrix: not doubly stochastic");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.a);
    Eigen::VectorXd lam = es.eigenvalues().reverse();
    if (std::abs(lam(0) - 1.0) > 1e-9) throw std::logic_error("worst_case_matrix: lambda_1 != 1");
    for (int i = 1; i < out.m; ++i)
        if (std::abs(lam(i) - (1.0 - delta)) > 1e-9)
            throw std::logic_error("worst_case_matrix: repeated eigenvalue mismatch");
    for (int i = out.m; i < dim; ++i)
        if (std::abs(lam(i)) > 1e-9)
            throw std::logic_error("worst_case_matrix: null eigenvalue mismatch");
    if (out.a.trace() > 1.0 + c_target + 1e-10)
        throw std::logic_error("worst_case_matrix: trace exceeds 1 + c_target");
    return out;
}

std::vector<FiniteDistribution> worst_case_family(double c_target, double delta) {
    if (!(c_target >= 1.0)) throw std::invalid_argument("worst_case_family: need c_target >= 1");
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("worst_case_family: need 0 < delta <= 1");
    const int m = static_cast<int>(std::ceil(c_target));
    const double root = std::sqrt(delta);

    std::vector<FiniteDistribution> fam;
    fam.reserve(static_cast<std::size_t>(m));
    for (int i = 1; i <= m; ++i) {
        std::vector<double> p(static_cast<std::size_t>(m + 1), 0.0);
        p[0] = root;
        p[static_cast<std::size_t>(i)] = 1.0 - root;
        fam.emplace_back(std::move(p));
    }

    // verify the advertised singularity and capacity budget
    if (m >= 2 && delta < 1.0) {
        double max_h2 = 0.0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                max_h2 = std::max(max_h2, hellinger2(fam[static_cast<std::size_t>(i)],
                                                     fam[static_cast<std::size_t>(j)]));
        const double bc = 1.0 - max_h2 / 2.0;
        if (std::abs(1.0 / (bc * bc) - 1.0 / delta) > 1e-8 / delta)
            throw std::logic_error("worst_case_family: singularity is not 1/delta");
    }
    const double cap_upper = union_capacity_bound(std::vector<double>(fam.size(), 0.0));
    if (cap_upper > m - 1 + 1e-12)
        throw std::logic_error("worst_case_family: capacity budget violated");
    return fam;
}

GreenshteinRitovResult greenshtein_ritov_check(const std::vector<FiniteDistribution>& components,
                                               const Config& cfg) {
    const int total = static_cast<int>(components.size());
    if (total < 2) throw std::invalid_argument("greenshtein_ritov_check: need >= 2 components");
    const int n = total - 1;
    const int ab = components.front().alphabet_size();
    const double cells = std::pow(static_cast<double>(ab), n);
    if (total > 6 || cells > static_cast<double>(cfg.caps.bruteforce_cells))
        throw std::invalid_argument("greenshtein_ritov_check: enumeration cap exceeded");

    // leave-one-out permutation mixtures as dense tables
    std::vector<std::vector<double>> tables;
    for (int drop = 0; drop < total; ++drop) {
        std::vector<FiniteDistribution> rest;
        for (int i = 0; i < total; ++i)
            if (i != drop) rest.push_back(components[static_cast<std::size_t>(i)]);
        tables.push_back(mixture_table(ComponentList(std::move(rest)), cfg));
    }
    const std::size_t size = tables.front().size();
    std::vector<double> avg(size, 0.0);
    for (const auto& t : tables)
        for (std::size_t c2 = 0; c2 < size; ++c2) avg[c2] += t[c2] / total;

    double d_chi2 = 0.0;
    for (int i = 0; i < total; ++i)
        for (int j = 0; j < total; ++j) {
            if (i == j) continue;
            d_chi2 = std::max(d_chi2, chi2(components[static_cast<std::size_t>(i)],
                                           components[static_cast<std::size_t>(j)]));
        }

    GreenshteinRitovResult out;
    out.bound = d_chi2 / total;
    for (const auto& t : tables) {
        KahanSum acc;
        bool infinite = false;
        for (std::size_t c2 = 0; c2 < size; ++c2) {
            if (t[c2] == 0.0) {
                if (avg[c2] > 1e-15) infinite = true;
                continue;
            }
            const double d = avg[c2] - t[c2];
            acc.add(d * d / t[c2]);
        }
        out.max_chi2 = std::max(out.max_chi2, infinite ? kInf : acc.value());
    }
    for (std::size_t i = 0; i < tables.size(); ++i)
        for (std::size_t j = i + 1; j < tables.size(); ++j) {
            KahanSum acc;
            for (std::size_t c2 = 0; c2 < size; ++c2) {
                const double d = std::sqrt(tables[i][c2]) - std::sqrt(tables[j][c2]);
                acc.add(d * d);
            }
            out.max_h2 = std::max(out.max_h2, acc.value());
        }

    const double rel = cfg.tol.comparison;
    if (out.max_chi2 > out.bound * (1.0 + rel) + 1e-15)
        throw std::logic_error("greenshtein_ritov_check: chi^2 bound violated");
    if (out.max_h2 > 4.0 * d_chi2 / total * (1.0 + rel) + 1e-15)
        throw std::logic_error("greenshtein_ritov_check: H^2 bound violated");
    return out;
}

}  // namespace permix
