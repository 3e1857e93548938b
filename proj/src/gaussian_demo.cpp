#include "permix/gaussian_demo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "permix/numeric.hpp"
#include "permix/quadrature.hpp"

namespace permix {

namespace {

// e^{-mu^2/2} / cosh(mu x), overflow-free
double damped_sech(double mu, double x) {
    const double y = std::abs(mu * x);
    return 2.0 * std::exp(-0.5 * mu * mu - y) / (1.0 + std::exp(-2.0 * y));
}

FMuForms f_mu_forms_at_order(double mu, int order) {
    FMuForms f;
    // second moment of tanh(mu X) under the two-point location mixture; the
    // integrand is bounded, unlike the raw sinh^2/cosh form whose quadrature
    // sum blows up with the order
    f.primary = 0.5 * (integrate_gaussian(
                           [&](double y) {
                               const double t = std::tanh(mu * (y + mu));
                               return t * t;
                           },
                           order) +
                       integrate_gaussian(
                           [&](double y) {
                               const double t = std::tanh(mu * (y - mu));
                               return t * t;
                           },
                           order));
    f.alternate = 1.0 - integrate_gaussian([&](double x) { return damped_sech(mu, x); }, order);
    return f;
}

}  // namespace

FMuForms f_mu_forms(double mu, const Config& cfg) {
    if (mu < 0.0) throw std::invalid_argument("f_mu: need mu >= 0");
    if (mu > cfg.caps.mu_max)
        throw std::invalid_argument("f_mu: mu outside the supported quadrature regime");
    if (mu == 0.0) return {0.0, 0.0};
    // doubling ladder certifies the digits (the sech integrand has poles off
    // the real axis, so the base order can be short of full precision)
    FMuForms prev = f_mu_forms_at_order(mu, 200);
    for (int order : {400, 800, 1600}) {
        const FMuForms next = f_mu_forms_at_order(mu, order);
        const bool stable = std::abs(next.primary - prev.primary) <= 2.5e-13 &&
                            std::abs(next.alternate - prev.alternate) <= 2.5e-13;
        prev = next;
        if (stable) break;
    }
    prev.primary = std::clamp(prev.primary, 0.0, 1.0);
    prev.alternate = std::clamp(prev.alternate, 0.0, 1.0);
    return prev;
}

double f_mu(double mu, const Config& cfg) {
    const FMuForms f = f_mu_forms(mu, cfg);
    if (std::abs(f.primary - f.alternate) > 1e-10)
        throw std::logic_error("f_mu: quadrature routes disagree");
    const double cap = -std::expm1(-mu * mu);
    if (f.primary > cap + 1e-10)
        throw std::logic_error("f_mu: value exceeds 1 - exp(-mu^2)");
    return f.primary;
}

double g_ell(int n, int ell) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("g_ell: n must be even");
    if (ell < 0 || ell > n) throw std::invalid_argument("g_ell: need 0 <= l <= n");
    if (ell % 2 != 0) return 0.0;
    const double lg = log_binomial(n / 2, ell / 2) - log_binomial(n, ell);
    const double mag = std::exp(lg);
    return (ell / 2) % 2 == 0 ? mag : -mag;
}

ToyModelResult toy_chi2(int n, double mu, const Config& cfg) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("toy_chi2: n must be even");
    if (n > 1000000) throw std::invalid_argument("toy_chi2: n too large");

    ToyModelResult out;
    out.mu = mu;
    out.n = n;
    out.f = f_mu(mu, cfg);
    const int gcap = std::min(n, 40);
    for (int l = 0; l <= gcap; ++l) out.g.push_back(g_ell(n, l));

    // chi^2 = sum over even l >= 2 of f^l C(n/2,l/2)^2 / C(n,l), with the
    // binomials advanced incrementally in log space
    const double logf = mu == 0.0 ? -kInf : std::log(out.f);
    double log_cn = std::log(static_cast<double>(n) * (n - 1) / 2.0);  // log C(n,2)
    double log_ch = std::log(static_cast<double>(n) / 2.0);            // log C(n/2,1)
    KahanSum acc;
    for (int l = 2; l <= n; l += 2) {
        if (mu > 0.0) acc.add(std::exp(l * logf + 2.0 * log_ch - log_cn));
        if (l + 2 <= n) {
            // C(n, l) -> C(n, l+2), C(n/2, l/2) -> C(n/2, l/2 + 1)
            log_cn += std::log(static_cast<double>(n - l) * (n - l - 1) /
                               (static_cast<double>(l + 1) * (l + 2)));
            log_ch += std::log(static_cast<double>(n / 2 - l / 2) / (l / 2 + 1));
        }
    }
    out.chi2_series = acc.value();
    out.geometric_cap = out.f >= 1.0 ? kInf : out.f * out.f / (1.0 - out.f);
    out.bound_paper = out.geometric_cap;

    if (out.chi2_series > out.geometric_cap + 1e-8)
        throw std::logic_error("toy_chi2: series exceeds the geometric cap");
    return out;
}

namespace {

double log_cosh(double z) {
    const double a = std::abs(z);
    return a + std::log1p(std::exp(-2.0 * a)) - 0.6931471805599453094;
}

}  // namespace

double toy_chi2_oracle_n2(double mu, const Config& cfg) {
    (void)cfg;
    if (mu < 0.0 || mu > 5.0) throw std::invalid_argument("toy_chi2_oracle_n2: need mu in [0,5]");
    if (mu == 0.0) return 0.0;
    // E_Q[(dP/dQ - 1)^2] summed over the four product components of Q; the
    // density ratio cosh(mu(x-y)) / (cosh(mu x) cosh(mu y)) is evaluated in
    // log space and stays bounded, so the quadrature sum cannot blow up
    const auto at_order = [&](int order) {
        double total = 0.0;
        for (double s1 : {1.0, -1.0})
            for (double s2 : {1.0, -1.0})
                total += 0.25 * integrate_gaussian_2d(
                                    [&](double a, double b) {
                                        const double x = s1 * mu + a, y = s2 * mu + b;
                                        const double lr =
                                            std::exp(log_cosh(mu * (x - y)) - log_cosh(mu * x) -
                                                     log_cosh(mu * y));
                                        return (lr - 1.0) * (lr - 1.0);
                                    },
                                    order);
        return total;
    };
    double prev = at_order(200);
    double change = kInf;
    for (int order : {320, 480, 800}) {
        const double next = at_order(order);
        change = std::abs(next - prev);
        prev = next;
        if (change <= 1e-10) break;
    }
    if (change > 1e-9)
        throw std::logic_error("toy_chi2_oracle_n2: quadrature did not stabilize");
    return prev;
}

double moments_blowup_term(int n, double mu, int ell) {
    if (ell < 0 || ell + 2 > n) throw std::invalid_argument("moments_blowup: need l + 2 <= n");
    if (mu == 0.0) return 0.0;
    const double log_multinomial =
        log_factorial(n) - log_factorial(2) - log_factorial(ell) - log_factorial(n - ell - 2);
    const double log_term = (4.0 * ell + 4.0) * std::log(mu) - ell * std::log(2.0) -
                            2.0 * std::log(static_cast<double>(n - 1)) + log_multinomial;
    return std::exp(log_term);
}

double moments_blowup_slope(double mu, int ell, int n_lo, int n_hi) {
    if (n_lo < ell + 2 || n_hi <= n_lo)
        throw std::invalid_argument("moments_blowup_slope: bad sweep range");
    std::vector<double> xs, ys;
    for (int n = n_lo; n <= n_hi; n *= 2) {
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(moments_blowup_term(n, mu, ell)));
    }
    return lsq_slope(xs, ys);
}

std::vector<boost::multiprecision::cpp_int> cumulant_sequence(int l_max) {
    using boost::multiprecision::cpp_int;
    if (l_max < 0 || l_max > 200) throw std::invalid_argument("cumulant_sequence: l_max in [0,200]");
    // b_{2l+1} = (-1)^l - sum_{j>=1} (-1)^j C(2l+1, 2j) b_{2(l-j)+1}
    std::vector<cpp_int> b;
    b.push_back(1);  // b_1
    for (int l = 1; l <= l_max; ++l) {
        // exact binomials C(2l+1, 2j) by the multiplicative recurrence
        cpp_int val = (l % 2 == 0) ? 1 : -1;
        cpp_int binom = 1;
        for (int j = 1; j <= l; ++j) {
            // advance C(2l+1, 2j-2) -> C(2l+1, 2j)
            binom = binom * (2 * l + 1 - (2 * j - 2)) / (2 * j - 1);
            binom = binom * (2 * l + 1 - (2 * j - 1)) / (2 * j);
            const cpp_int term = binom * b[static_cast<std::size_t>(l - j)];
            if (j % 2 == 1)
                val += term;
            else
                val -= term;
        }
        b.push_back(val);
    }
    return b;
}

namespace {

double log10_cpp_int(const boost::multiprecision::cpp_int& v) {
    if (v == 0) return -kInf;
    const boost::multiprecision::cpp_int a = v < 0 ? boost::multiprecision::cpp_int(-v) : v;
    const std::string s = a.str();
    const std::size_t lead = std::min<std::size_t>(s.size(), 17);
    const double head = std::stod(s.substr(0, lead));
    return std::log10(head) + static_cast<double>(s.size() - lead);
}

}  // namespace

CumulantDivergence cumulant_divergence(int l_max, double mu, int n) {
    if (n < 2) throw std::invalid_argument("cumulant_divergence: need n >= 2");
    if (mu <= 0.0) throw std::invalid_argument("cumulant_divergence: need mu > 0");
    CumulantDivergence out;
    out.b = cumulant_sequence(l_max);
    const double log10_mu = std::log10(mu);
    const double log10_n1 = std::log10(static_cast<double>(n - 1));
    const double ln10 = std::log(10.0);
    double running = -kInf;  // log10 of the partial sum
    for (int l = 0; l <= l_max; ++l) {
        // kappa_{(1, 2l+1, 0, ...)} = +/- mu^{2l+2} b_{2l+1} / (n-1);
        // term = kappa^2 / (1! (2l+1)!)
        const double log10_kappa =
            (2.0 * l + 2.0) * log10_mu + log10_cpp_int(out.b[static_cast<std::size_t>(l)]) -
            log10_n1;
        const double log10_term = 2.0 * log10_kappa - log_factorial(2 * l + 1) / ln10;
        out.log10_terms.push_back(log10_term);
        running = log_add_exp(running * ln10, log10_term * ln10) / ln10;
        out.log10_partial_sums.push_back(running);
    }
    return out;
}

}  // namespace permix
