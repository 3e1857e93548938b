#pragma once

#include <vector>

#include "permix/config.hpp"
#include "permix/distribution.hpp"
#include "permix/rng.hpp"

namespace permix {

/// Ordered list (P_1, ..., P_n) on one shared alphabet. Defines the
/// permutation mixture (uniformly random assignment of components to
/// coordinates) and its i.i.d. counterpart Pbar^{(x)n} with
/// Pbar = (1/n) sum_i P_i. The centered components Psi_i = P_i - Pbar
/// integrate to zero and also sum to zero pointwise.
class ComponentList {
  public:
    explicit ComponentList(std::vector<FiniteDistribution> components);

    int n() const { return static_cast<int>(components_.size()); }
    int alphabet_size() const { return components_.front().alphabet_size(); }
    const FiniteDistribution& component(int i) const {
        return components_[static_cast<std::size_t>(i)];
    }
    const std::vector<FiniteDistribution>& components() const { return components_; }

    const FiniteDistribution& marginal() const { return marginal_; }
    SignedMeasureVector psi(int i) const;

    static constexpr double kCenterTol = 1e-10;

  private:
    std::vector<FiniteDistribution> components_;
    FiniteDistribution marginal_;
};

/// Exact pmf of the permutation mixture at a tuple, via a permanent of the
/// n x n matrix M with M_ij = P_j(x_i), divided by n!.
double permutation_mixture_pmf(const ComponentList& c, const std::vector<int>& x,
                               const Config& cfg = default_config());

/// Exact pmf of the i.i.d. counterpart: prod_i Pbar(x_i).
double iid_mixture_pmf(const ComponentList& c, const std::vector<int>& x);

/// Oracle: chi^2 between the two mixtures by enumerating all |alphabet|^n
/// tuples. Cells where the i.i.d. mass vanishes contribute +inf unless the
/// permutation-mixture mass vanishes there too.
double exact_chi2_bruteforce(const ComponentList& c, const Config& cfg = default_config());

/// (1/n) sum_i chi^2(P_i || Pbar); equals Tr(A) - 1 of the mixture matrix.
/// The sharpest capacity surrogate valid for this instance.
double instance_capacity(const ComponentList& c);

// Pairwise diameters over the components (sup over ordered pairs for chi^2).
double max_pair_chi2(const ComponentList& c);
double max_pair_hellinger2(const ComponentList& c);
// (1 - maxH2/2)^{-2}; +inf when some pair is mutually singular.
double max_pair_h2_singularity(const ComponentList& c);

/// Seeded random instance with all entries >= floor (post-normalization);
/// used by verification sweeps.
ComponentList random_component_list(Rng& rng, int n, int alphabet, double floor = 0.05);

}  // namespace permix
