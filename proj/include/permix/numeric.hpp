#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace permix {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Compensated accumulator. 2^n-term alternating sums (Ryser) lose digits
// with naive accumulation.
class KahanSum {
  public:
    void add(double x) {
        const double y = x - carry_;
        const double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

inline double log_factorial(int n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

inline double log_binomial(int n, int k) {
    if (k < 0 || k > n) return -kInf;
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return std::exp(log_binomial(n, k));
}

// log(exp(a) + exp(b)) without overflow; either argument may be -inf.
inline double log_add_exp(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

// (1+x)^p - 1 with infinity propagation, evaluated through logs.
inline double pow1p_minus1(double x, double p) {
    if (std::isinf(x) || std::isinf(p)) return kInf;
    return std::expm1(p * std::log1p(x));
}

// Least-squares slope of y against x.
inline double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("lsq_slope: need two equal-length samples");
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline bool rel_close(double a, double b, double rel_tol) {
    if (a == b) return true;  // covers matching infinities
    return std::abs(a - b) <= rel_tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace permix
