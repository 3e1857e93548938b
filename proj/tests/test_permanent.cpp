#include <doctest.h>

#include <Eigen/Dense>
#include <complex>

#include "permix/component_list.hpp"
#include "permix/numeric.hpp"
#include "permix/permanent.hpp"
#include "permix/rng.hpp"

using namespace permix;

namespace {

// reference permanent by direct permutation expansion, n <= 8
template <typename Mat>
typename Mat::Scalar permanent_naive(const Mat& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    typename Mat::Scalar total(0);
    do {
        typename Mat::Scalar prod(1);
        for (int i = 0; i < n; ++i) prod *= m(i, idx[static_cast<std::size_t>(i)]);
        total += prod;
    } while (std::next_permutation(idx.begin(), idx.end()));
    return total;
}

}  // namespace

TEST_CASE("ryser on identity, ones, and the golden 2x2") {
    CHECK(permanent_ryser(Eigen::MatrixXd(Eigen::MatrixXd::Identity(3, 3))) == doctest::Approx(1.0));
    CHECK(permanent_ryser(Eigen::MatrixXd(Eigen::MatrixXd::Ones(3, 3))) == doctest::Approx(6.0));
    Eigen::MatrixXd a(2, 2);
    a << 0.68, 0.32, 0.32, 0.68;
    CHECK(permanent_ryser(a) == doctest::Approx(0.5648).epsilon(1e-14));
}

TEST_CASE("ryser matches the naive expansion") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 6);
        Eigen::MatrixXd m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
        CHECK(permanent_ryser(m) ==
              doctest::Approx(permanent_naive(m)).epsilon(1e-11));
    }
}

TEST_CASE("complex ryser matches the naive expansion") {
    Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 4);
        Eigen::MatrixXcd m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const auto got = permanent_ryser(m);
        const auto want = permanent_naive(m);
        CHECK(std::abs(got - want) <= 1e-11 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("ryser guards") {
    CHECK_THROWS_AS(permanent_ryser(Eigen::MatrixXd(Eigen::MatrixXd::Ones(2, 3))), std::invalid_argument);
    Config small = default_config();
    small.caps.permanent_n = 4;
    CHECK_THROWS_AS(permanent_ryser(Eigen::MatrixXd(Eigen::MatrixXd::Ones(5, 5)), small), std::invalid_argument);
}

TEST_CASE("rectangular permanent sum") {
    // single row: plain sum
    Eigen::MatrixXd row(1, 4);
    row << 0.5, -0.25, 1.0, 2.0;
    CHECK(rectangular_permanent_sum(row) == doctest::Approx(3.25));
    // 2x3 all ones: three 2x2 all-one blocks
    CHECK(rectangular_permanent_sum(Eigen::MatrixXd(Eigen::MatrixXd::Ones(2, 3))) == doctest::Approx(6.0));
    // zero-row-sum and one row: exactly zero
    Eigen::MatrixXd z(1, 3);
    z << 1.0, -0.5, -0.5;
    CHECK(rectangular_permanent_sum(z) == doctest::Approx(0.0));
    CHECK_THROWS_AS(rectangular_permanent_sum(Eigen::MatrixXd(Eigen::MatrixXd::Ones(3, 2))),
                    std::invalid_argument);
}

TEST_CASE("rectangular sum equals ryser when square, and equals the subset sum") {
    Rng rng(44);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 4);
        Eigen::MatrixXd m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
        CHECK(rectangular_permanent_sum(m) ==
              doctest::Approx(permanent_ryser(m)).epsilon(1e-11));
    }
    // 2x4 against the explicit subset expansion
    Eigen::MatrixXd a(2, 4);
    a << 1.0, 2.0, -1.0, 0.5, 0.25, -2.0, 3.0, 1.0;
    double expect = 0.0;
    for (int c1 = 0; c1 < 4; ++c1)
        for (int c2 = c1 + 1; c2 < 4; ++c2)
            expect += a(0, c1) * a(1, c2) + a(0, c2) * a(1, c1);
    CHECK(rectangular_permanent_sum(a) == doctest::Approx(expect).epsilon(1e-13));
}
