#include <doctest.h>

#include <cmath>

#include "permix/gaussian_demo.hpp"
#include "permix/numeric.hpp"

using namespace permix;

TEST_CASE("f at zero and the exponential cap") {
    CHECK(f_mu(0.0) == 0.0);
    for (double mu : {0.1, 0.5, 1.0, 2.0, 3.0, 5.0})
        CHECK(f_mu(mu) <= -std::expm1(-mu * mu) + 1e-10);
    CHECK_THROWS_AS((void)f_mu(31.0), std::invalid_argument);
    CHECK_THROWS_AS((void)f_mu(-1.0), std::invalid_argument);
}

TEST_CASE("both quadrature routes agree") {
    for (double mu : {0.25, 1.0, 2.0, 4.0, 8.0, 20.0}) {
        const auto forms = f_mu_forms(mu);
        CHECK(std::abs(forms.primary - forms.alternate) <= 1e-10);
    }
}

TEST_CASE("series coefficients") {
    CHECK(g_ell(6, 0) == doctest::Approx(1.0));
    CHECK(g_ell(6, 1) == 0.0);
    CHECK(g_ell(6, 3) == 0.0);
    CHECK(g_ell(4, 2) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS((void)g_ell(5, 2), std::invalid_argument);
    // coefficient cap g_l^2 <= 1/C(n,l)
    for (int n : {4, 10, 30})
        for (int l = 0; l <= n; ++l) {
            const double g = g_ell(n, l);
            CHECK(g * g <= 1.0 / binomial(n, l) + 1e-12);
        }
}

TEST_CASE("toy divergence series") {
    CHECK(toy_chi2(10, 0.0).chi2_series == 0.0);

    // n = 2 collapses to f^2 and matches the quadrature oracle
    for (double mu : {0.25, 0.5, 1.0, 2.0}) {
        const auto res = toy_chi2(2, mu);
        const double f = f_mu(mu);
        CHECK(res.chi2_series == doctest::Approx(f * f).epsilon(1e-12));
        CHECK(res.chi2_series == doctest::Approx(toy_chi2_oracle_n2(mu)).epsilon(1e-8));
    }

    // dimension-independent cap along an n-sweep
    for (int n : {10, 100, 1000, 100000, 1000000}) {
        const auto res = toy_chi2(n, 1.0);
        CHECK(res.chi2_series >= 0.0);
        CHECK(res.chi2_series <= res.geometric_cap + 1e-8);
    }
    CHECK_THROWS_AS((void)toy_chi2(7, 1.0), std::invalid_argument);
}

TEST_CASE("toy series settles toward the spectral value, not upward") {
    // the per-degree coefficients decay with n, so the series decreases from
    // n = 2 and approaches 1/sqrt(1 - f^2) - 1 from above
    const double f = f_mu(1.0);
    const double limit = 1.0 / std::sqrt(1.0 - f * f) - 1.0;
    double prev = kInf;
    for (int n : {2, 4, 8, 16, 64, 256, 4096}) {
        const double v = toy_chi2(n, 1.0).chi2_series;
        CHECK(v < prev);
        CHECK(v >= limit - 1e-12);
        prev = v;
    }
    CHECK(prev == doctest::Approx(limit).epsilon(5e-3));
}

TEST_CASE("small-mu quartic regime") {
    for (double mu : {0.2, 0.5, 1.0}) {
        const auto res = toy_chi2(1000, mu);
        const double f = f_mu(mu);
        CHECK(res.chi2_series <= 10.0 * f * f + 1e-12);
        // empirical quartic constant, reported via the cap f <= mu^2
        CHECK(res.chi2_series <= 10.0 * std::pow(mu, 4) + 1e-12);
    }
}

TEST_CASE("moment blowup terms") {
    CHECK(moments_blowup_term(10, 0.0, 1) == 0.0);
    // l = 0: mu^4/(n-1)^2 * C(n,2) -> mu^4/2 * n/(n-1)
    CHECK(moments_blowup_term(100, 1.0, 0) ==
          doctest::Approx(0.5 * 100.0 / 99.0).epsilon(1e-12));
    // doubling n roughly doubles the l = 1 term
    const double r = moments_blowup_term(2048, 1.0, 1) / moments_blowup_term(1024, 1.0, 1);
    CHECK(r == doctest::Approx(2.0).epsilon(2e-3));
    CHECK_THROWS_AS((void)moments_blowup_term(2, 1.0, 1), std::invalid_argument);

    for (int ell : {0, 1, 2})
        CHECK(std::abs(moments_blowup_slope(1.0, ell, 16, 4096) - ell) <= 0.05);
}

TEST_CASE("tangent numbers and cumulant divergence") {
    const auto b = cumulant_sequence(4);
    REQUIRE(b.size() == 5);
    CHECK(b[0] == 1);
    CHECK(b[1] == 2);
    CHECK(b[2] == 16);
    CHECK(b[3] == 272);
    CHECK(b[4] == 7936);

    // deep sequence stays exact (known value of the next few entries)
    const auto deep = cumulant_sequence(7);
    CHECK(deep[5] == 353792);
    CHECK(deep[6] == 22368256);
    CHECK(deep[7] == 1903757312LL);

    const auto div = cumulant_divergence(30, 1.0, 10);
    REQUIRE(div.log10_partial_sums.size() == 31);
    double best = -kInf;
    for (double v : div.log10_partial_sums) best = std::max(best, v);
    CHECK(best > 6.0);
    // terms are eventually strictly increasing: factorial growth wins
    const auto& t = div.log10_terms;
    for (std::size_t i = 20; i + 1 < t.size(); ++i) CHECK(t[i + 1] > t[i]);
}
