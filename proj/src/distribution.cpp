#include "permix/distribution.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "permix/numeric.hpp"

namespace permix {

FiniteDistribution::FiniteDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw std::invalid_argument("FiniteDistribution: empty alphabet");
    double sum = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0)) throw std::invalid_argument("FiniteDistribution: negative entry");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kSumTol)
        throw std::invalid_argument("FiniteDistribution: entries sum to " + std::to_string(sum));
}

FiniteDistribution FiniteDistribution::bernoulli(double p) {
    return FiniteDistribution({1.0 - p, p});
}

FiniteDistribution FiniteDistribution::point_mass(int x, int k) {
    std::vector<double> v(static_cast<std::size_t>(k), 0.0);
    v.at(static_cast<std::size_t>(x)) = 1.0;
    return FiniteDistribution(std::move(v));
}

FiniteDistribution FiniteDistribution::uniform(int k) {
    return FiniteDistribution(std::vector<double>(static_cast<std::size_t>(k), 1.0 / k));
}

SignedMeasureVector::SignedMeasureVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
    double sum = 0.0, mag = 0.0;
    for (double w : weights_) {
        sum += w;
        mag += std::abs(w);
    }
    if (std::abs(sum) > kSumTol * std::max(1.0, mag))
        throw std::invalid_argument("SignedMeasureVector: entries must sum to zero");
}

Divergence divergence_from_name(const std::string& name) {
    if (name == "chi2") return Divergence::Chi2;
    if (name == "hellinger2") return Divergence::Hellinger2;
    if (name == "tv") return Divergence::TV;
    if (name == "kl") return Divergence::KL;
    if (name == "lecam") return Divergence::LeCam;
    throw std::invalid_argument("unknown divergence kind: " + name);
}

std::string divergence_name(Divergence d) {
    switch (d) {
        case Divergence::Chi2: return "chi2";
        case Divergence::Hellinger2: return "hellinger2";
        case Divergence::TV: return "tv";
        case Divergence::KL: return "kl";
        case Divergence::LeCam: return "lecam";
    }
    return "?";
}

namespace {

void check_same_alphabet(const FiniteDistribution& p, const FiniteDistribution& q) {
    if (p.alphabet_size() != q.alphabet_size())
        throw std::invalid_argument("divergence: alphabet size mismatch");
}

}  // namespace

double chi2(const FiniteDistribution& p, const FiniteDistribution& q) {
    check_same_alphabet(p, q);
    KahanSum s;
    for (int x = 0; x < p.alphabet_size(); ++x) {
        const double px = p[x], qx = q[x];
        if (qx == 0.0) {
            if (px > 0.0) return kInf;
            continue;
        }
        const double d = px - qx;
        s.add(d * d / qx);
    }
    return s.value();
}

double hellinger2(const FiniteDistribution& p, const FiniteDistribution& q) {
    check_same_alphabet(p, q);
    KahanSum s;
    for (int x = 0; x < p.alphabet_size(); ++x) {
        const double d = std::sqrt(p[x]) - std::sqrt(q[x]);
        s.add(d * d);
    }
    return s.value();
}

double total_variation(const FiniteDistribution& p, const FiniteDistribution& q) {
    check_same_alphabet(p, q);
    KahanSum s;
    for (int x = 0; x < p.alphabet_size(); ++x) s.add(std::abs(p[x] - q[x]));
    return 0.5 * s.value();
}

double kl(const FiniteDistribution& p, const FiniteDistribution& q) {
    check_same_alphabet(p, q);
    KahanSum s;
    for (int x = 0; x < p.alphabet_size(); ++x) {
        const double px = p[x], qx = q[x];
        if (px == 0.0) continue;
        if (qx == 0.0) return kInf;
        s.add(px * std::log(px / qx));
    }
    return s.value();
}

double le_cam(const FiniteDistribution& p, const FiniteDistribution& q) {
    check_same_alphabet(p, q);
    KahanSum s;
    for (int x = 0; x < p.alphabet_size(); ++x) {
        const double px = p[x], qx = q[x];
        if (px + qx == 0.0) continue;
        const double d = px - qx;
        s.add(d * d / (px + qx));
    }
    return 0.5 * s.value();
}

double divergence(Divergence kind, const FiniteDistribution& p, const FiniteDistribution& q) {
    switch (kind) {
        case Divergence::Chi2: return chi2(p, q);
        case Divergence::Hellinger2: return hellinger2(p, q);
        case Divergence::TV: return total_variation(p, q);
        case Divergence::KL: return kl(p, q);
        case Divergence::LeCam: return le_cam(p, q);
    }
    throw std::logic_error("divergence: unreachable");
}

}  // namespace permix
