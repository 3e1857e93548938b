#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "permix/config.hpp"
#include "permix/distribution.hpp"

namespace permix {

struct ExplicitFinite {
    std::vector<FiniteDistribution> components;
};

struct GaussianLocation {
    double mu_max = 0.0;
    std::optional<std::vector<double>> support;  // finite set of means, if restricted
};

struct BernoulliInterval {
    double eps = 0.0;  // success probabilities in [eps, 1-eps], eps in (0, 1/2]
};

struct PoissonInterval {
    double m_max = 0.0;
    double truncation_mass = 1e-12;  // admissible omitted tail when summing pmfs
};

using FamilySpec = std::variant<ExplicitFinite, GaussianLocation, BernoulliInterval,
                                PoissonInterval>;

/// Family-level functionals: a certified upper bound on the chi^2 capacity,
/// a heuristic lower estimate, the two diameters, and the H^2 singularity.
/// Infinite values are first class (chi^2 diameter of a singular family).
struct FamilyFunctionals {
    double c_chi2_upper = 0.0;
    double c_chi2_estimate = 0.0;
    double d_chi2 = 0.0;
    double d_h2 = 0.0;
    double delta_h2 = 1.0;
};

/// E_{rho}[chi^2(P_i || sum_j rho_j P_j)]; terms with rho_i = 0 contribute 0.
double chi2_mutual_information(const std::vector<FiniteDistribution>& family,
                               const std::vector<double>& prior);

/// Multi-start projected-gradient ascent over the prior simplex. The result
/// is a LOWER estimate of the capacity: concavity of the objective is not
/// established, so no optimality certificate is claimed.
double capacity_estimate(const std::vector<FiniteDistribution>& family, int restarts,
                         std::uint64_t seed, const Config& cfg = default_config());

/// Capacity of a union: sum of per-subfamily bounds plus (m - 1).
double union_capacity_bound(const std::vector<double>& bounds);

FamilyFunctionals family_functionals(const FamilySpec& spec,
                                     const Config& cfg = default_config(),
                                     int restarts = 32, std::uint64_t seed = 0x9e3779b9);

// Closed forms for location pairs, used for family diameters and tested
// against quadrature.
double gaussian_pair_chi2(double theta1, double theta2);     // e^{(t1-t2)^2} - 1
double gaussian_pair_h2(double theta1, double theta2);       // 2 - 2 e^{-(t1-t2)^2/8}
double gaussian_pair_h2_quadrature(double theta1, double theta2, int order = 200);
double poisson_pair_h2(double lam1, double lam2);            // 2 - 2 e^{-(sqrt l1 - sqrt l2)^2/2}
double poisson_pair_h2_sum(double lam1, double lam2, double truncation_mass);

/// Quantized surrogates used to feed the optimizer for the parametric
/// variants (coarsening only lowers the chi^2 information, so the estimate
/// stays a valid lower estimate).
std::vector<FiniteDistribution> discretize_family(const FamilySpec& spec, int grid_points,
                                                  const Config& cfg = default_config());

}  // namespace permix
