#include <doctest.h>

#include <cmath>

#include "permix/bounds.hpp"
#include "permix/capacity.hpp"
#include "permix/mixture_matrix.hpp"
#include "permix/numeric.hpp"
#include "permix/series.hpp"

using namespace permix;

namespace {

ComponentList golden() {
    return ComponentList({FiniteDistribution::bernoulli(0.2),
                          FiniteDistribution::bernoulli(0.8)});
}

}  // namespace

TEST_CASE("closed-form bounds") {
    const auto zero = thm_main_bounds(5, 0.0, 1.0, 0.0);
    CHECK(zero.ub1 == 0.0);
    CHECK(zero.ub2 == 0.0);
    CHECK(zero.ub3 == 0.0);

    const auto g = thm_main_bounds(2, 0.36, 1.5625, 2.25);
    CHECK(g.ub1 == doctest::Approx(1.296).epsilon(1e-12));
    CHECK(g.ub2 == doctest::Approx(0.6831438045876863).epsilon(1e-12));

    // degenerate geometric sum at c = 1
    CHECK(thm_main_bounds(5, 1.0, 2.0, 1.0).ub1 == doctest::Approx(40.0));
    // infinity propagation
    CHECK(thm_main_bounds(4, 1.0, kInf, kInf).ub2 == kInf);
    CHECK(thm_main_bounds(4, 1.0, kInf, kInf).ub3 == kInf);
    CHECK(std::isfinite(thm_main_bounds(1000, 2.0, 4.0, 10.0).ub2));
    CHECK_THROWS_AS((void)thm_main_bounds(3, -1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("instance report on the golden pair") {
    const auto rep = evaluate_instance(golden());
    REQUIRE(rep.exact_chi2.has_value());
    CHECK(*rep.exact_chi2 == doctest::Approx(0.1296).epsilon(1e-12));
    CHECK(rep.lower_spectral == doctest::Approx(0.07186615714068023).epsilon(1e-12));
    CHECK(rep.inputs.capacity == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(rep.inputs.delta_h2 == doctest::Approx(1.5625).epsilon(1e-12));
    CHECK(rep.inputs.d_chi2 == doctest::Approx(2.25).epsilon(1e-12));
    CHECK(*rep.exact_chi2 <= rep.ub1);
    CHECK(*rep.exact_chi2 <= rep.ub2);
    CHECK(*rep.exact_chi2 <= rep.ub3);
}

TEST_CASE("identical components give an all-zero report") {
    const auto p = FiniteDistribution({0.4, 0.6});
    const auto rep = evaluate_instance(ComponentList({p, p, p}));
    CHECK(*rep.exact_chi2 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rep.ub1 == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(rep.lower_spectral == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("singular pair: infinite family quantities, finite capacity route") {
    const ComponentList singular({FiniteDistribution::point_mass(0, 2),
                                  FiniteDistribution::point_mass(1, 2)});
    const auto rep = evaluate_instance(singular);
    CHECK(*rep.exact_chi2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.inputs.delta_h2 == kInf);
    CHECK(rep.ub2 == kInf);
    CHECK(rep.ub3 == kInf);
    CHECK(std::isfinite(rep.ub1));  // 10 * sum of capacity powers, finite n
    CHECK(rep.lower_spectral == kInf);  // lambda_2 = 1
}

TEST_CASE("k-marginal closeness") {
    const auto c = golden();
    const auto k1 = definetti_bound_and_exact(c, 1);
    CHECK(k1.exact == doctest::Approx(0.0));
    CHECK(k1.bound == doctest::Approx(0.0));

    const auto k2 = definetti_bound_and_exact(c, 2);
    CHECK(k2.exact == doctest::Approx(0.1296).epsilon(1e-10));
    // prefactor 1; the bound is the best finite closed form, here 0.683 < 1.296
    CHECK(k2.bound == doctest::Approx(0.6831438045876863).epsilon(1e-10));
    CHECK(k2.exact <= k2.bound);

    CHECK(definetti_marginal_chi2_bruteforce(c, 2) == doctest::Approx(0.1296).epsilon(1e-12));
    CHECK(definetti_marginal_chi2_bruteforce(c, 1) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK_THROWS_AS((void)definetti_bound_and_exact(c, 3), std::invalid_argument);
}

TEST_CASE("two-mixtures chain on a hand-checkable instance") {
    const ComponentList shared({FiniteDistribution::bernoulli(0.5)});
    const auto res = two_mixtures_check(shared, FiniteDistribution::bernoulli(0.2),
                                        FiniteDistribution::bernoulli(0.8));
    // TV between the two 2-coordinate mixtures by hand: cells (0,0),(1,1)
    // have pmf 0.4 vs 0.1 and 0.1 vs 0.4, cells (0,1),(1,0) are equal,
    // so TV = (0.3 + 0.3)/2 = 0.3
    CHECK(res.tv2 == doctest::Approx(0.09).epsilon(1e-12));
    CHECK(res.tv2 <= res.middle);
    CHECK(res.middle <= res.weighted_series);
    CHECK(res.weighted_series <= res.bound);

    // equal extra components collapse the chain heads to zero
    const auto same = two_mixtures_check(shared, FiniteDistribution::bernoulli(0.3),
                                         FiniteDistribution::bernoulli(0.3));
    CHECK(same.tv2 == doctest::Approx(0.0));
    CHECK(same.middle == doctest::Approx(0.0));
}

TEST_CASE("risk gap bound") {
    CHECK(eb_risk_gap_bound(0.0, 10, 1.0, 2.0, 1.0) == 0.0);
    CHECK(eb_risk_gap_bound(1.0, 10, 1.0, 2.0, 0.0) == 0.0);
    CHECK(eb_risk_gap_bound(1.0, 100, 0.36, 1.5625, 0.36) ==
          doctest::Approx(32.0928813023875).epsilon(1e-12));
    CHECK(eb_risk_gap_bound(2.0, 10, 1.0, kInf, 1.0) == kInf);
}

TEST_CASE("mutual information gap") {
    const auto p = FiniteDistribution({0.4, 0.6});
    const auto same = mutual_info_gap(ComponentList({p, p, p}));
    CHECK(same.gap == doctest::Approx(0.0).epsilon(1e-12));

    const auto g = mutual_info_gap(golden());
    CHECK(g.gap == doctest::Approx(0.06627772298751924).epsilon(1e-12));
    CHECK(g.gap <= g.ub);

    const ComponentList singular({FiniteDistribution::point_mass(0, 2),
                                  FiniteDistribution::point_mass(1, 2)});
    const auto s = mutual_info_gap(singular);
    CHECK(s.gap == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("worst-case matrix") {
    const auto wc = worst_case_matrix(2.0, 0.5);
    CHECK(wc.m == 2);
    CHECK(wc.block == 2);
    CHECK(wc.a.rows() == 4);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(wc.a);
    CHECK(es.eigenvalues()(3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(es.eigenvalues()(2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(es.eigenvalues()(1) == doctest::Approx(0.0).epsilon(1e-12));

    const auto single = worst_case_matrix(1.0, 0.5);
    CHECK(single.m == 1);
    for (int i = 0; i < single.a.rows(); ++i)
        for (int j = 0; j < single.a.cols(); ++j)
            CHECK(single.a(i, j) == doctest::Approx(1.0 / single.block));

    Config tiny = default_config();
    tiny.caps.worst_case_dim = 4;
    CHECK_THROWS_AS((void)worst_case_matrix(8.0, 0.1, tiny), std::invalid_argument);
}

TEST_CASE("worst-case family") {
    const auto fam = worst_case_family(2.0, 0.25);
    REQUIRE(fam.size() == 2);
    CHECK(fam[0][0] == doctest::Approx(0.5));
    CHECK(fam[0][1] == doctest::Approx(0.5));
    CHECK(fam[1][2] == doctest::Approx(0.5));
    CHECK(hellinger2(fam[0], fam[1]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(max_pair_h2_singularity(ComponentList(fam)) == doctest::Approx(4.0).epsilon(1e-12));

    // degenerate delta = 1: all components collapse onto the same point
    const auto flat = worst_case_family(2.0, 1.0);
    CHECK(exact_chi2_permanent(ComponentList(flat)) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("leave-one-out mixtures") {
    const std::vector<FiniteDistribution> equal(3, FiniteDistribution::bernoulli(0.4));
    const auto same = greenshtein_ritov_check(equal);
    CHECK(same.max_chi2 == doctest::Approx(0.0).epsilon(1e-14));

    const std::vector<FiniteDistribution> trio{FiniteDistribution::bernoulli(0.2),
                                               FiniteDistribution::bernoulli(0.5),
                                               FiniteDistribution::bernoulli(0.8)};
    const auto res = greenshtein_ritov_check(trio);
    CHECK(res.bound == doctest::Approx(0.75).epsilon(1e-12));  // 2.25 / 3
    CHECK(res.max_chi2 <= res.bound);

    // two components: the mixtures are singletons
    const std::vector<FiniteDistribution> duo{FiniteDistribution::bernoulli(0.3),
                                              FiniteDistribution::bernoulli(0.6)};
    const auto two = greenshtein_ritov_check(duo);
    CHECK(two.max_chi2 <= two.bound * (1.0 + 1e-12));
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS((void)worst_case_matrix(0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS((void)worst_case_matrix(2.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS((void)worst_case_family(2.0, 0.0), std::invalid_argument);
    const ComponentList shared({FiniteDistribution::bernoulli(0.5)});
    CHECK_THROWS_AS((void)two_mixtures_check(shared, FiniteDistribution::uniform(3),
                                             FiniteDistribution::uniform(3)),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)greenshtein_ritov_check({FiniteDistribution::bernoulli(0.5)}),
                    std::invalid_argument);
}

TEST_CASE("k-marginal identity at n = 6") {
    Rng rng(606);
    const auto c = random_component_list(rng, 6, 2, 0.05);
    for (int k : {2, 4, 6}) {
        const auto d = definetti_bound_and_exact(c, k);
        const double brute = definetti_marginal_chi2_bruteforce(c, k);
        CHECK(d.exact == doctest::Approx(brute).epsilon(1e-7));
        CHECK(d.exact <= d.bound + 1e-8 * (1.0 + d.bound));
    }
}
