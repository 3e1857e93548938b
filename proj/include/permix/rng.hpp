#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace permix {

// splitmix64; used both as the generator and to derive independent
// sub-streams from one master seed, so results do not depend on the
// evaluation order of parallel sweeps.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // burn a few outputs so that small seeds decorrelate
        for (int i = 0; i < 4; ++i) splitmix64(state_);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    // uniform on (0, 1); never returns 0 so logs are safe
    double uniform01() {
        const std::uint64_t r = next_u64() >> 11;  // 53 bits
        return (static_cast<double>(r) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Box-Muller, fully specified (no library distribution state)
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // standard complex normal: independent real/imag parts of variance 1/2
    std::complex<double> complex_normal() {
        const double s = 0.7071067811865475244;  // 1/sqrt(2)
        return {s * normal(), s * normal()};
    }

    Rng split(std::uint64_t index) const {
        std::uint64_t s = state_;
        const std::uint64_t a = splitmix64(s);
        std::uint64_t t = a ^ (0xd1342543de82ef95ULL * (index + 1));
        splitmix64(t);
        return Rng(t);
    }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline Rng derive_rng(std::uint64_t master_seed, std::uint64_t index) {
    return Rng(master_seed).split(index);
}

}  // namespace permix
