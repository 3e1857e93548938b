#pragma once

#include <cstdint>

namespace permix {

// One knob for float comparisons: `validation` guards structural invariants
// (sums to one, symmetry, ...), `comparison` guards cross-route agreement.
struct Tolerances {
    double validation = 1e-10;
    double comparison = 1e-8;
};

struct Caps {
    int permanent_n = 28;            // Ryser is O(2^n * n)
    int perm_pmf_n = 10;             // direct permutation-mixture pmf evaluation
    std::int64_t bruteforce_cells = 10'000'000;  // |alphabet|^n enumeration limit
    int rect_rows = 22;              // rectangular permanent-sum DP is O(n * 2^l * l)
    int esp_n = 64;                  // double precision growth cap for e_l coefficients
    double series_direct_work = 2.0e8;  // sum_l C(n,l)^2 * 2^l * l
    int r_ell_max = 3;               // naive enumeration budget for R_l
    int r_ell_n = 8;
    int worst_case_dim = 64;         // m*n cap for the Kronecker construction
    double mu_max = 30.0;            // quadrature regime for the Gaussian toy model
};

struct Config {
    Tolerances tol;
    Caps caps;
};

inline const Config& default_config() {
    static const Config cfg{};
    return cfg;
}

}  // namespace permix
