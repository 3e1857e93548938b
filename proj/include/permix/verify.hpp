#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "permix/config.hpp"

namespace permix {

/// One named verification sweep. `lhs`/`rhs`/`margin` describe the tightest
/// asserted inequality encountered (margin = rhs - lhs), `checked` counts
/// individual assertions, `violations` how many failed.
struct CheckResult {
    std::string name;
    bool pass = false;
    long checked = 0;
    long violations = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 7;
    int oracle_instances = 500;      // permanent vs brute force, and the bound sandwich
    int rst_instances = 100;         // S/R/T identity sweeps
    int rst_agree_instances = 20;    // interpolation vs direct, n <= 8
    int esp_n_max = 40;
    int esp_complex_trials = 100000;
    int esp_complex_n_max = 32;
    int hadamard_trials = 10000;
    int wick_instances = 20;
    int wick_samples = 100000;
    int definetti_instances = 60;
    int two_mixtures_instances = 200;
    int mutual_info_instances = 200;
    int greenshtein_instances = 100;
    int toy_big_n = 1000000;
    int threads = 1;
};

VerifyOptions budget_options(const std::string& budget, std::uint64_t seed);

CheckResult check_golden_instance(const Config& cfg = default_config());
CheckResult check_oracle_equivalence(const VerifyOptions& o, const Config& cfg = default_config());
CheckResult check_theorem_sandwich(const VerifyOptions& o, const Config& cfg = default_config());
CheckResult check_rst_identities(const VerifyOptions& o, const Config& cfg = default_config());
CheckResult check_series_method_agreement(const VerifyOptions& o,
                                          const Config& cfg = default_config());
CheckResult check_series_term_bounds(const VerifyOptions& o, const Config& cfg = default_config());
CheckResult check_esp_exhaustive(const VerifyOptions& o, const Config& cfg = default_config());
CheckResult check_esp_complex(const VerifyOptions& o, const Config& cfg = default_config());
CheckResult check_hadamard(const VerifyOptions& o, const Config& cfg = default_config());
CheckResult check_wick(const VerifyOptions& o, const Config& cfg = default_config());
CheckResult check_definetti(const VerifyOptions& o, const Config& cfg = default_config());
CheckResult check_two_mixtures(const VerifyOptions& o, const Config& cfg = default_config());
CheckResult check_mutual_info(const VerifyOptions& o, const Config& cfg = default_config());
CheckResult check_toy_model(const VerifyOptions& o, const Config& cfg = default_config());
CheckResult check_moment_slopes(const Config& cfg = default_config());
CheckResult check_cumulants(const Config& cfg = default_config());
CheckResult check_worst_case(const Config& cfg = default_config());
CheckResult check_risk_gap(const Config& cfg = default_config());
CheckResult check_greenshtein(const VerifyOptions& o, const Config& cfg = default_config());
CheckResult check_replication_trend(const VerifyOptions& o, const Config& cfg = default_config());
CheckResult check_capacity_consistency(const VerifyOptions& o,
                                       const Config& cfg = default_config());

std::vector<CheckResult> run_all_checks(const VerifyOptions& o,
                                        const Config& cfg = default_config());

}  // namespace permix
