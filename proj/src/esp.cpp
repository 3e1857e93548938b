#include "permix/esp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "permix/numeric.hpp"
#include "permix/permanent.hpp"

namespace permix {

CenteredVector::CenteredVector(Eigen::VectorXcd values, bool is_real)
    : values_(std::move(values)), is_real_(is_real) {
    const int n = static_cast<int>(values_.size());
    if (n < 1) throw std::invalid_argument("CenteredVector: empty");
    std::complex<double> sum = 0.0;
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
        if (is_real_ && values_(i).imag() != 0.0)
            throw std::invalid_argument("CenteredVector: declared real but has imaginary part");
        sum += values_(i);
        norm2 += std::norm(values_(i));
    }
    if (std::abs(sum) > 1e-10 * n)
        throw std::invalid_argument("CenteredVector: entries do not sum to zero");
    if (std::abs(norm2 - n) > 1e-8 * n)
        throw std::invalid_argument("CenteredVector: squared norm must equal n");
}

CenteredVector CenteredVector::normalized(const Eigen::VectorXcd& raw, bool is_real) {
    const int n = static_cast<int>(raw.size());
    if (n < 1) throw std::invalid_argument("CenteredVector: empty");
    Eigen::VectorXcd v = raw;
    v.array() -= v.sum() / static_cast<double>(n);
    const double norm2 = v.squaredNorm();
    if (norm2 <= 0.0) throw std::invalid_argument("CenteredVector: zero after centering");
    v *= std::sqrt(static_cast<double>(n) / norm2);
    return CenteredVector(std::move(v), is_real);
}

CenteredVector CenteredVector::from_real(const Eigen::VectorXd& values) {
    return CenteredVector(values.cast<std::complex<double>>(), true);
}

Eigen::VectorXcd esp_all(const Eigen::VectorXcd& x, const Config& cfg) {
    const int n = static_cast<int>(x.size());
    if (n > cfg.caps.esp_n)
        throw std::invalid_argument(
            "esp_all: n exceeds the double-precision cap (extended precision not supported)");
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n + 1);
    e(0) = 1.0;
    for (int i = 0; i < n; ++i)
        for (int d = i + 1; d >= 1; --d) e(d) += x(i) * e(d - 1);
    return e;
}

Eigen::VectorXd esp_all(const Eigen::VectorXd& x, const Config& cfg) {
    const int n = static_cast<int>(x.size());
    if (n > cfg.caps.esp_n)
        throw std::invalid_argument(
            "esp_all: n exceeds the double-precision cap (extended precision not supported)");
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n + 1);
    e(0) = 1.0;
    for (int i = 0; i < n; ++i)
        for (int d = i + 1; d >= 1; --d) e(d) += x(i) * e(d - 1);
    return e;
}

ESPCoefficients esp_coefficients(const CenteredVector& x, const Config& cfg) {
    ESPCoefficients out{esp_all(x.values(), cfg)};
    const int n = x.n();
    if (std::abs(out.e(0) - 1.0) != 0.0)
        throw std::logic_error("esp: e_0 != 1");
    if (std::abs(out.e(1)) > 1e-10 * n)
        throw std::logic_error("esp: e_1 of a centered vector must vanish");
    return out;
}

CenteredVector binary_support_vector(int n, int k) {
    if (k < 1 || k > n - 1)
        throw std::invalid_argument("binary_support_vector: need 1 <= k <= n-1");
    const double hi = std::sqrt(static_cast<double>(k) / (n - k));
    const double lo = -std::sqrt(static_cast<double>(n - k) / k);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = i < n - k ? hi : lo;
    // kill rounding dust so the invariant check is exact
    Eigen::VectorXcd c = v.cast<std::complex<double>>();
    return CenteredVector::normalized(c, true);
}

EspBounds esp_bounds(int n, int ell) {
    if (ell < 0 || ell > n) throw std::invalid_argument("esp_bounds: need 0 <= l <= n");
    // 0^0 := 1 at the endpoints
    double log_complex_sq = n * std::log(static_cast<double>(n));
    if (ell > 0) log_complex_sq -= ell * std::log(static_cast<double>(ell));
    if (ell < n) log_complex_sq -= (n - ell) * std::log(static_cast<double>(n - ell));
    const double log_binom = log_binomial(n, ell);
    EspBounds b;
    b.complex_bound = std::exp(0.5 * log_complex_sq);
    b.complex_bound_binomial =
        std::exp(0.5 * (std::log(3.0) + 0.5 * std::log(ell + 1.0) + log_binom));
    b.real_bound = std::exp(0.5 * (std::log(10.0) + log_binom));
    return b;
}

namespace {

// the complex bound is attained exactly (n = 2, l = 2: every admissible
// vector saturates it), so violation flagging allows for round-off
constexpr double kEqualityGuard = 1e-12;

struct NodeResult {
    double max_ratio_real = 0.0;
    int argmax_ell = 0, argmax_k = 0;
    std::vector<EspViolation> violations;
};

NodeResult verify_real_for_n(int n, const Config& cfg) {
    NodeResult res;
    for (int k = 1; k <= n - 1; ++k) {
        const auto x = binary_support_vector(n, k);
        const Eigen::VectorXd e = esp_all(x.real_values(), cfg);
        for (int ell = 0; ell <= n; ++ell) {
            const double bound = esp_bounds(n, ell).real_bound;
            const double ratio = std::abs(e(ell)) / bound;
            if (ratio > res.max_ratio_real) {
                res.max_ratio_real = ratio;
                res.argmax_ell = ell;
                res.argmax_k = k;
            }
            if (std::abs(e(ell)) > bound * (1.0 + kEqualityGuard))
                res.violations.push_back({n, ell, k, std::abs(e(ell)), bound});
        }
    }
    return res;
}

}  // namespace

EspVerifyReport verify_esp_theorem(int n_max, int trials, std::uint64_t seed, int threads,
                                   const Config& cfg) {
    if (n_max > cfg.caps.esp_n) throw std::invalid_argument("verify_esp_theorem: n_max too large");
    EspVerifyReport rep;

    // exhaustive sweep over the binary-support family; parallel over n with a
    // deterministic merge in index order
    std::vector<NodeResult> results(static_cast<std::size_t>(std::max(0, n_max - 1)));
    const auto worker = [&](int t, int stride) {
        for (int n = 2 + t; n <= n_max; n += stride)
            results[static_cast<std::size_t>(n - 2)] = verify_real_for_n(n, cfg);
    };
    if (threads <= 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t, threads);
        for (auto& th : pool) th.join();
    }
    for (int n = 2; n <= n_max; ++n) {
        const auto& r = results[static_cast<std::size_t>(n - 2)];
        if (r.max_ratio_real > rep.max_ratio_real) {
            rep.max_ratio_real = r.max_ratio_real;
            rep.real_argmax_n = n;
            rep.real_argmax_ell = r.argmax_ell;
            rep.real_argmax_k = r.argmax_k;
        }
        rep.violations.insert(rep.violations.end(), r.violations.begin(), r.violations.end());
    }

    // random centered-normalized complex vectors against the complex bound
    for (int t = 0; t < trials; ++t) {
        Rng rng = derive_rng(seed, static_cast<std::uint64_t>(t));
        const int n = 2 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(
                                               std::max(1, n_max - 1)));
        Eigen::VectorXcd raw(n);
        for (int i = 0; i < n; ++i) raw(i) = rng.complex_normal();
        CenteredVector x = CenteredVector::normalized(raw, false);
        const Eigen::VectorXcd e = esp_all(x.values(), cfg);
        for (int ell = 0; ell <= n; ++ell) {
            const double bound = esp_bounds(n, ell).complex_bound;
            const double val = std::abs(e(ell));
            rep.max_ratio_complex = std::max(rep.max_ratio_complex, val / bound);
            if (val > bound * (1.0 + kEqualityGuard))
                rep.violations.push_back({n, ell, -1, val, bound});
        }
    }
    return rep;
}

HadamardCheck hadamard_check(const Eigen::MatrixXd& a, const Config& cfg) {
    const int l = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    if (l < 1 || l > n) throw std::invalid_argument("hadamard_check: need 1 <= l <= n");
    for (int i = 0; i < l; ++i)
        if (std::abs(a.row(i).sum()) > 1e-9 * n)
            throw std::invalid_argument("hadamard_check: row sums must vanish");

    double lfact = 1.0;
    for (int i = 2; i <= l; ++i) lfact *= i;
    HadamardCheck out;
    out.lhs = std::abs(rectangular_permanent_sum(a, cfg)) / lfact;
    double prod = 1.0;
    for (int i = 0; i < l; ++i) prod *= std::sqrt(a.row(i).squaredNorm() / n);
    out.rhs = std::sqrt(10.0 * binomial(n, l)) * prod;
    if (out.lhs > out.rhs + 1e-8 * out.rhs)
        throw std::logic_error("hadamard_check: inequality violated");
    return out;
}

}  // namespace permix
