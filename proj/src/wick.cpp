#include "permix/wick.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "permix/numeric.hpp"
#include "permix/permanent.hpp"
#include "permix/rng.hpp"

namespace permix {

namespace {

constexpr int kMinSamples = 1000;

struct MeanStderr {
    double mean, se;
};

// streaming mean/variance (Welford)
template <typename F>
MeanStderr mc_mean(int samples, std::uint64_t seed, F&& draw_value) {
    double mean = 0.0, m2 = 0.0;
    for (int s = 0; s < samples; ++s) {
        Rng rng = derive_rng(seed, static_cast<std::uint64_t>(s));
        const double v = draw_value(rng);
        const double d = v - mean;
        mean += d / (s + 1);
        m2 += d * (v - mean);
    }
    const double var = m2 / (samples - 1);
    return {mean, std::sqrt(var / samples)};
}

}  // namespace

WickResult wick_check_permanent(const Eigen::MatrixXd& p, int samples, std::uint64_t seed,
                                const Config& cfg) {
    if (samples < kMinSamples) throw std::invalid_argument("wick: need >= 1000 samples");
    const int m = static_cast<int>(p.rows());
    const int n = static_cast<int>(p.cols());

    const auto stat = mc_mean(samples, seed, [&](Rng& rng) {
        Eigen::VectorXcd z(n);
        for (int j = 0; j < n; ++j) z(j) = rng.complex_normal();
        const Eigen::VectorXcd v = p * z;
        double prod = 1.0;
        for (int i = 0; i < m; ++i) prod *= std::norm(v(i));
        return prod;
    });

    WickResult out;
    out.estimate = stat.mean;
    out.stderr_ = stat.se;
    out.target = permanent_ryser(Eigen::MatrixXd(p * p.transpose()), cfg);
    return out;
}

WickResult wick_check_esp(const Eigen::MatrixXd& pt, int ell, double s_target, int samples,
                          std::uint64_t seed) {
    if (samples < kMinSamples) throw std::invalid_argument("wick: need >= 1000 samples");
    const int n = static_cast<int>(pt.rows());
    const int m = static_cast<int>(pt.cols());
    if (ell < 0 || ell > n) throw std::invalid_argument("wick_check_esp: need 0 <= l <= n");

    // n^l (n-l)!/n! = prod_{i=0}^{l-1} n/(n-i)
    double scale = 1.0;
    for (int i = 0; i < ell; ++i) scale *= static_cast<double>(n) / (n - i);

    const auto stat = mc_mean(samples, seed, [&](Rng& rng) {
        Eigen::VectorXcd z(m);
        for (int j = 0; j < m; ++j) z(j) = rng.complex_normal();
        const Eigen::VectorXcd v = pt * z;
        // e_l coefficient of prod (1 + v_i t) by sequential convolution
        std::vector<std::complex<double>> e(static_cast<std::size_t>(ell + 1), 0.0);
        e[0] = 1.0;
        int deg = 0;
        for (int i = 0; i < n; ++i) {
            deg = std::min(deg + 1, ell);
            for (int d = deg; d >= 1; --d)
                e[static_cast<std::size_t>(d)] += v(i) * e[static_cast<std::size_t>(d - 1)];
        }
        return scale * std::norm(e[static_cast<std::size_t>(ell)]);
    });

    WickResult out;
    out.estimate = stat.mean;
    out.stderr_ = stat.se;
    out.target = s_target;
    return out;
}

}  // namespace permix
