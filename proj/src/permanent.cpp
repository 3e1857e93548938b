#include "permix/permanent.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "permix/numeric.hpp"

namespace permix {

namespace {

// Perm(A) = (-1)^n sum_{S != 0} (-1)^{|S|} prod_i (sum_{j in S} a_ij).
// Row sums are updated incrementally along the Gray-code walk.
template <typename Scalar, typename Acc>
Scalar ryser_impl(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m,
                  const Config& cfg) {
    const int n = static_cast<int>(m.rows());
    if (n < 1 || m.cols() != n) throw std::invalid_argument("permanent: matrix must be square");
    if (n > cfg.caps.permanent_n)
        throw std::invalid_argument("permanent: dimension exceeds Ryser cap");
    if (!m.allFinite()) throw std::invalid_argument("permanent: non-finite entries");
    if (n == 1) return m(0, 0);

    std::vector<Scalar> row_sum(static_cast<std::size_t>(n), Scalar(0));
    Acc acc;
    const std::uint64_t total = 1ULL << n;
    std::uint64_t gray_prev = 0;
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        const std::uint64_t gray = idx ^ (idx >> 1);
        const std::uint64_t diff = gray ^ gray_prev;
        const int j = std::countr_zero(diff);
        if (gray & diff)
            for (int i = 0; i < n; ++i) row_sum[static_cast<std::size_t>(i)] += m(i, j);
        else
            for (int i = 0; i < n; ++i) row_sum[static_cast<std::size_t>(i)] -= m(i, j);
        gray_prev = gray;

        Scalar prod(1);
        for (int i = 0; i < n; ++i) prod *= row_sum[static_cast<std::size_t>(i)];
        const int popcount = std::popcount(gray);
        if ((n - popcount) & 1)
            acc.add(-prod);
        else
            acc.add(prod);
    }
    return acc.value();
}

struct KahanAcc {
    KahanSum s;
    void add(double x) { s.add(x); }
    double value() const { return s.value(); }
};

struct ComplexKahanAcc {
    KahanSum re, im;
    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }
    std::complex<double> value() const { return {re.value(), im.value()}; }
};

}  // namespace

double permanent_ryser(const Eigen::MatrixXd& m, const Config& cfg) {
    return ryser_impl<double, KahanAcc>(m, cfg);
}

std::complex<double> permanent_ryser(const Eigen::MatrixXcd& m, const Config& cfg) {
    return ryser_impl<std::complex<double>, ComplexKahanAcc>(m, cfg);
}

double rectangular_permanent_sum(const Eigen::MatrixXd& a, const Config& cfg) {
    const int l = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    if (l < 1) throw std::invalid_argument("rectangular_permanent_sum: need at least one row");
    if (l > n) throw std::invalid_argument("rectangular_permanent_sum: more rows than columns");
    if (l > cfg.caps.rect_rows)
        throw std::invalid_argument("rectangular_permanent_sum: row count exceeds cap");

    // f[S] = sum over assignments of |S| distinct already-seen columns to the
    // rows in S. Sweeping columns j: f[S] += a(i,j) * f[S \ {i}].
    const std::size_t states = std::size_t{1} << l;
    std::vector<double> f(states, 0.0);
    f[0] = 1.0;
    for (int j = 0; j < n; ++j) {
        for (std::uint64_t s = states - 1; s > 0; --s) {
            double add = 0.0;
            std::uint64_t rest = s;
            while (rest) {
                const int i = std::countr_zero(rest);
                rest &= rest - 1;
                add += a(i, j) * f[s & ~(1ULL << i)];
            }
            f[s] += add;
        }
    }
    return f[states - 1];
}

}  // namespace permix
