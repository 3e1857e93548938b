#pragma once

#include <string>
#include <vector>

namespace permix {

/// Probability vector on an abstract alphabet {0, ..., K-1}. Entries are
/// validated on construction: nonnegative, summing to one within 1e-12.
class FiniteDistribution {
  public:
    explicit FiniteDistribution(std::vector<double> probs);

    int alphabet_size() const { return static_cast<int>(probs_.size()); }
    double operator[](int x) const { return probs_[static_cast<std::size_t>(x)]; }
    const std::vector<double>& probs() const { return probs_; }

    static FiniteDistribution bernoulli(double p);        // {1-p, p} on {0,1}
    static FiniteDistribution point_mass(int x, int k);   // delta_x on {0,...,k-1}
    static FiniteDistribution uniform(int k);

    static constexpr double kSumTol = 1e-12;

  private:
    std::vector<double> probs_;
};

/// Signed measure on the same alphabet; entries must sum to zero (within
/// 1e-12 scaled by the vector's magnitude). Houses the centered components
/// P_i - Pbar of the doubly centered expansion.
class SignedMeasureVector {
  public:
    explicit SignedMeasureVector(std::vector<double> weights);

    int alphabet_size() const { return static_cast<int>(weights_.size()); }
    double operator[](int x) const { return weights_[static_cast<std::size_t>(x)]; }
    const std::vector<double>& weights() const { return weights_; }

    static constexpr double kSumTol = 1e-12;

  private:
    std::vector<double> weights_;
};

enum class Divergence { Chi2, Hellinger2, TV, KL, LeCam };

Divergence divergence_from_name(const std::string& name);
std::string divergence_name(Divergence d);

/// chi2 and KL return +inf when p has mass where q has none. Conventions:
/// 0*log(0/0) = 0, and a zero cell of both p and q contributes nothing.
double divergence(Divergence kind, const FiniteDistribution& p, const FiniteDistribution& q);

double chi2(const FiniteDistribution& p, const FiniteDistribution& q);
double hellinger2(const FiniteDistribution& p, const FiniteDistribution& q);
double total_variation(const FiniteDistribution& p, const FiniteDistribution& q);
double kl(const FiniteDistribution& p, const FiniteDistribution& q);
double le_cam(const FiniteDistribution& p, const FiniteDistribution& q);

}  // namespace permix
