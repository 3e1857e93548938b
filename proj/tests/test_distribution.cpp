#include <doctest.h>

#include <cmath>

#include "permix/distribution.hpp"
#include "permix/numeric.hpp"

using namespace permix;

TEST_CASE("finite distribution validation") {
    CHECK_THROWS_AS(FiniteDistribution({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteDistribution({-0.1, 1.1}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteDistribution({}), std::invalid_argument);
    const auto d = FiniteDistribution::bernoulli(0.2);
    CHECK(d[0] == doctest::Approx(0.8));
    CHECK(d[1] == doctest::Approx(0.2));
}

TEST_CASE("signed measure must sum to zero") {
    CHECK_NOTHROW(SignedMeasureVector({0.25, -0.25, 0.0}));
    CHECK_THROWS_AS(SignedMeasureVector({0.3, -0.2}), std::invalid_argument);
}

TEST_CASE("chi2 examples") {
    const auto b2 = FiniteDistribution::bernoulli(0.2);
    const auto b5 = FiniteDistribution::bernoulli(0.5);
    CHECK(chi2(b2, b5) == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(chi2(b2, b2) == 0.0);
    // closed form (1-2e)^2/(e(1-e)) at e = 1/4
    const auto lo = FiniteDistribution::bernoulli(0.25);
    const auto hi = FiniteDistribution::bernoulli(0.75);
    CHECK(chi2(lo, hi) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("singular cases propagate infinity, never throw") {
    const auto d0 = FiniteDistribution::point_mass(0, 2);
    const auto d1 = FiniteDistribution::point_mass(1, 2);
    CHECK(chi2(d0, d1) == kInf);
    CHECK(kl(d0, d1) == kInf);
    CHECK(hellinger2(d0, d1) == doctest::Approx(2.0));
    CHECK(total_variation(d0, d1) == doctest::Approx(1.0));
    CHECK(le_cam(d0, d1) == doctest::Approx(1.0));
}

TEST_CASE("divergence ranges and errors") {
    const auto p = FiniteDistribution({0.1, 0.4, 0.5});
    const auto q = FiniteDistribution({0.3, 0.3, 0.4});
    CHECK(hellinger2(p, q) >= 0.0);
    CHECK(hellinger2(p, q) <= 2.0);
    CHECK(total_variation(p, q) <= 1.0);
    CHECK(kl(p, q) >= 0.0);
    const auto two = FiniteDistribution::bernoulli(0.5);
    CHECK_THROWS_AS(chi2(p, two), std::invalid_argument);
    CHECK_THROWS_AS((void)divergence_from_name("wat"), std::invalid_argument);
    CHECK(divergence(Divergence::Chi2, q, q) == 0.0);
}

TEST_CASE("kl and le cam on overlapping supports") {
    const auto p = FiniteDistribution({0.5, 0.5, 0.0});
    const auto q = FiniteDistribution({0.25, 0.25, 0.5});
    CHECK(kl(p, q) == doctest::Approx(std::log(2.0)));
    CHECK(kl(q, p) == kInf);
    CHECK(le_cam(p, q) <= 1.0);
}
