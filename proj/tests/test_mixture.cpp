#include <doctest.h>

#include <cmath>

#include "permix/component_list.hpp"
#include "permix/mixture_matrix.hpp"
#include "permix/numeric.hpp"
#include "permix/rng.hpp"

using namespace permix;

namespace {

ComponentList golden() {
    return ComponentList({FiniteDistribution::bernoulli(0.2),
                          FiniteDistribution::bernoulli(0.8)});
}

}  // namespace

TEST_CASE("marginal and centered components") {
    const auto c = golden();
    CHECK(c.marginal()[0] == doctest::Approx(0.5).epsilon(1e-14));
    const auto psi = c.psi(0);
    CHECK(psi[0] == doctest::Approx(0.3));
    CHECK(psi[1] == doctest::Approx(-0.3));
}

TEST_CASE("mixture matrix golden values") {
    const auto mm = build_mixture_matrix(golden());
    CHECK(mm.a(0, 0) == doctest::Approx(0.68).epsilon(1e-13));
    CHECK(mm.a(0, 1) == doctest::Approx(0.32).epsilon(1e-13));
    CHECK(mm.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(mm.lambda2() == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(mm.spectral_gap == doctest::Approx(0.64).epsilon(1e-12));
    // gap meets 1/Delta with equality on this instance
    CHECK(mm.spectral_gap ==
          doctest::Approx(1.0 / max_pair_h2_singularity(golden())).epsilon(1e-12));
}

TEST_CASE("identical components give the rank-one matrix") {
    const auto p = FiniteDistribution({0.2, 0.3, 0.5});
    const auto mm = build_mixture_matrix(ComponentList({p, p, p}));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(mm.a(i, j) == doctest::Approx(1.0 / 3));
    CHECK(mm.lambda2() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("permutation mixture pmf") {
    const auto c = golden();
    CHECK(permutation_mixture_pmf(c, {0, 0}) == doctest::Approx(0.16).epsilon(1e-14));
    // n = 1 reduces to the single component
    const ComponentList single({FiniteDistribution::bernoulli(0.3)});
    CHECK(permutation_mixture_pmf(single, {1}) == doctest::Approx(0.3));
    // identical components: permutation is irrelevant
    const auto p = FiniteDistribution({0.6, 0.4});
    const ComponentList same({p, p, p});
    CHECK(permutation_mixture_pmf(same, {1, 0, 1}) ==
          doctest::Approx(0.4 * 0.6 * 0.4).epsilon(1e-13));
    CHECK_THROWS_AS(permutation_mixture_pmf(c, {0}), std::invalid_argument);
}

TEST_CASE("iid pmf and equality for identical components") {
    const auto c = golden();
    CHECK(iid_mixture_pmf(c, {0, 1}) == doctest::Approx(0.25).epsilon(1e-14));
    const auto p = FiniteDistribution({0.6, 0.4});
    const ComponentList same({p, p});
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            CHECK(iid_mixture_pmf(same, {a, b}) ==
                  doctest::Approx(permutation_mixture_pmf(same, {a, b})).epsilon(1e-13));
}

TEST_CASE("pmf sums to one and the marginal is the mixture marginal") {
    Rng rng(123);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 5);  // up to 6
        const int k = 2 + static_cast<int>(rng.next_u64() % 3);  // up to 4
        const auto c = random_component_list(rng, n, k, 0.01);
        std::vector<int> x(static_cast<std::size_t>(n), 0);
        KahanSum total;
        std::vector<double> marginal(static_cast<std::size_t>(k), 0.0);
        while (true) {
            const double p = permutation_mixture_pmf(c, x);
            total.add(p);
            marginal[static_cast<std::size_t>(x[0])] += p;
            int i = 0;
            for (; i < n; ++i) {
                if (++x[static_cast<std::size_t>(i)] < k) break;
                x[static_cast<std::size_t>(i)] = 0;
            }
            if (i == n) break;
        }
        CHECK(total.value() == doctest::Approx(1.0).epsilon(1e-9));
        for (int s = 0; s < k; ++s)
            CHECK(marginal[static_cast<std::size_t>(s)] ==
                  doctest::Approx(c.marginal()[s]).epsilon(1e-10));
    }
}

TEST_CASE("brute force divergence examples") {
    CHECK(exact_chi2_bruteforce(golden()) == doctest::Approx(0.1296).epsilon(1e-12));
    const auto p = FiniteDistribution({0.25, 0.75});
    CHECK(exact_chi2_bruteforce(ComponentList({p, p, p})) == doctest::Approx(0.0));
    const ComponentList singular({FiniteDistribution::point_mass(0, 2),
                                  FiniteDistribution::point_mass(1, 2)});
    CHECK(exact_chi2_bruteforce(singular) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("instance capacity") {
    CHECK(instance_capacity(golden()) == doctest::Approx(0.36).epsilon(1e-12));
    const auto p = FiniteDistribution({0.25, 0.75});
    CHECK(instance_capacity(ComponentList({p, p})) == doctest::Approx(0.0));
    const ComponentList singular({FiniteDistribution::point_mass(0, 2),
                                  FiniteDistribution::point_mass(1, 2)});
    CHECK(instance_capacity(singular) == doctest::Approx(1.0));
    // trace route agrees
    const auto mm = build_mixture_matrix(golden());
    CHECK(instance_capacity(golden()) == doctest::Approx(mm.trace - 1.0).epsilon(1e-12));
}

TEST_CASE("matrix invariants hold on random instances") {
    Rng rng(777);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 5);
        const int k = 2 + static_cast<int>(rng.next_u64() % 3);
        const auto c = random_component_list(rng, n, k, 0.02);
        CHECK_NOTHROW((void)build_mixture_matrix(c));  // validation happens inside
    }
}

TEST_CASE("size caps produce advisory errors") {
    Config tight = default_config();
    tight.caps.perm_pmf_n = 2;
    const auto p = FiniteDistribution({0.5, 0.5});
    const ComponentList c3({p, p, p});
    CHECK_THROWS_WITH_AS(
        (void)permutation_mixture_pmf(c3, {0, 0, 0}, tight),
        "permutation_mixture_pmf: n exceeds cap; use the permanent-based divergence path",
        std::invalid_argument);
    Config tiny = default_config();
    tiny.caps.bruteforce_cells = 4;
    CHECK_THROWS_AS((void)exact_chi2_bruteforce(c3, tiny), std::invalid_argument);
}
