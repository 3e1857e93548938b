#include "permix/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "permix/bounds.hpp"
#include "permix/capacity.hpp"
#include "permix/esp.hpp"
#include "permix/gaussian_demo.hpp"
#include "permix/json_io.hpp"
#include "permix/mixture_matrix.hpp"
#include "permix/numeric.hpp"
#include "permix/permanent.hpp"
#include "permix/series.hpp"
#include "permix/verify.hpp"
#include "permix/wick.hpp"

namespace permix {

namespace {

struct CliState {
    std::uint64_t seed = 7;
    std::string out_path;
    std::string format = "json";
    int threads = 1;
    std::string budget = "large";
    bool timing = false;
    double tol_validation = 1e-10;
    double tol_comparison = 1e-8;

    Config config() const {
        Config cfg = default_config();
        cfg.tol.validation = tol_validation;
        cfg.tol.comparison = tol_comparison;
        return cfg;
    }
};

// FNV-1a of the canonical input serialization, echoed into reports
std::string digest(const Json& inputs) {
    const std::string s = inputs.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

class Report {
  public:
    Report(const std::string& command, const CliState& st, const Json& inputs) {
        j_["command"] = command;
        j_["seed"] = st.seed;
        j_["inputs_digest"] = digest(inputs);
        j_["results"] = Json::object();
        j_["assertions"] = Json::array();
        start_ = std::chrono::steady_clock::now();
    }

    Json& results() { return j_["results"]; }

    void assert_le(const std::string& name, double lhs, double rhs, double slack = 0.0) {
        const bool ok = lhs <= rhs + slack;
        Json a;
        a["name"] = name;
        a["lhs"] = num_or_inf(lhs);
        a["rhs"] = num_or_inf(rhs);
        a["margin"] = num_or_inf(rhs - lhs);
        a["pass"] = ok;
        j_["assertions"].push_back(std::move(a));
        pass_ = pass_ && ok;
    }

    void assert_close(const std::string& name, double value, double target, double tol) {
        assert_le(name, std::abs(value - target), tol);
    }

    void add_check(const CheckResult& c) {
        Json a;
        a["name"] = c.name;
        a["lhs"] = num_or_inf(c.lhs);
        a["rhs"] = num_or_inf(c.rhs);
        a["margin"] = num_or_inf(c.margin);
        a["checked"] = c.checked;
        a["violations"] = c.violations;
        a["detail"] = c.detail;
        a["pass"] = c.pass;
        j_["assertions"].push_back(std::move(a));
        pass_ = pass_ && c.pass;
    }

    bool pass() const { return pass_; }

    int emit(const CliState& st, std::ostream& out) {
        j_["pass"] = pass_;
        if (st.timing) {
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - start_)
                                .count();
            j_["wall_ms"] = ms;
        }
        std::ostream* sink = &out;
        std::ofstream file;
        if (!st.out_path.empty()) {
            file.open(st.out_path);
            if (!file) throw std::invalid_argument("cannot open --out file: " + st.out_path);
            sink = &file;
        }
        if (st.format == "csv")
            *sink << to_csv();
        else
            *sink << j_.dump(2) << "\n";
        return pass_ ? 0 : 1;
    }

  private:
    std::string to_csv() const {
        std::ostringstream os;
        // assertions as rows, scalar results as rows, and arrays as
        // plot-ready tables (index,value or one column per object key)
        os << "kind,name,lhs,rhs,margin,pass\n";
        for (const auto& a : j_.at("assertions"))
            os << "assertion," << a.at("name").get<std::string>() << ","
               << a.at("lhs").dump() << "," << a.at("rhs").dump() << ","
               << a.at("margin").dump() << "," << (a.at("pass").get<bool>() ? 1 : 0) << "\n";
        for (const auto& [key, val] : j_.at("results").items()) {
            if (val.is_number() || val.is_string())
                os << "result," << key << "," << val.dump() << ",,,\n";
            if (!val.is_array() || val.empty()) continue;
            if (val.front().is_object()) {
                os << "table," << key;
                for (const auto& [col, cell] : val.front().items()) {
                    (void)cell;
                    os << "," << col;
                }
                os << "\n";
                for (const auto& row : val) {
                    os << "row," << key;
                    for (const auto& [col, cell] : row.items()) {
                        (void)col;
                        os << "," << cell.dump();
                    }
                    os << "\n";
                }
            } else if (val.front().is_array()) {
                os << "table," << key << ",row,values...\n";
                int idx = 0;
                for (const auto& v : val) {
                    os << "row," << key << "," << idx++;
                    for (const auto& cell : v) os << "," << cell.dump();
                    os << "\n";
                }
            } else {
                os << "table," << key << ",index,value\n";
                int idx = 0;
                for (const auto& v : val)
                    if (v.is_number() || v.is_string())
                        os << "row," << key << "," << idx++ << "," << v.dump() << "\n";
            }
        }
        return os.str();
    }

    Json j_;
    bool pass_ = true;
    std::chrono::steady_clock::time_point start_;
};

Json bound_report_json(const BoundReport& rep, const std::string& provenance) {
    Json r;
    if (rep.exact_chi2) r["exact_chi2"] = num_or_inf(*rep.exact_chi2);
    r["ub1"] = num_or_inf(rep.ub1);
    r["ub2"] = num_or_inf(rep.ub2);
    r["ub3"] = num_or_inf(rep.ub3);
    r["lower_spectral"] = num_or_inf(rep.lower_spectral);
    r["inputs"] = {{"n", rep.inputs.n},
                   {"capacity", num_or_inf(rep.inputs.capacity)},
                   {"delta_h2", num_or_inf(rep.inputs.delta_h2)},
                   {"d_chi2", num_or_inf(rep.inputs.d_chi2)}};
    r["provenance"] = provenance;
    return r;
}

int cmd_divergence(const CliState& st, const std::string& components_path,
                   const std::string& kind, std::ostream& out) {
    const Config cfg = st.config();
    const Json input = load_json_file(components_path);
    const ComponentList c = parse_component_list(input);
    Report rep("divergence", st, input);

    const Divergence dv = divergence_from_name(kind);
    Json pairwise = Json::array();
    for (int i = 0; i < c.n(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < c.n(); ++j)
            row.push_back(num_or_inf(divergence(dv, c.component(i), c.component(j))));
        pairwise.push_back(std::move(row));
    }
    rep.results()["kind"] = kind;
    rep.results()["pairwise"] = std::move(pairwise);

    const MixtureMatrix mm = build_mixture_matrix(c, cfg);
    const double by_perm = exact_chi2_permanent(mm, cfg);
    rep.results()["exact_chi2_permanent"] = num_or_inf(by_perm);
    const double cells = std::pow(static_cast<double>(c.alphabet_size()), c.n());
    if (c.n() <= cfg.caps.perm_pmf_n &&
        cells <= static_cast<double>(cfg.caps.bruteforce_cells)) {
        const double by_brute = exact_chi2_bruteforce(c, cfg);
        rep.results()["exact_chi2_bruteforce"] = num_or_inf(by_brute);
        rep.assert_close("permanent-vs-bruteforce", by_perm, by_brute,
                         cfg.tol.comparison * (1.0 + std::abs(by_brute)));
    }
    rep.results()["instance_capacity"] = num_or_inf(instance_capacity(c));
    rep.results()["lambda2"] = mm.lambda2();
    rep.results()["spectral_gap"] = mm.spectral_gap;
    rep.results()["max_pair_chi2"] = num_or_inf(max_pair_chi2(c));
    rep.results()["max_pair_h2"] = num_or_inf(max_pair_hellinger2(c));
    return rep.emit(st, out);
}

struct UserBoundInputs {
    double capacity = -1.0, delta_h2 = -1.0, d_chi2 = -1.0;
    bool any() const { return capacity >= 0.0 || delta_h2 >= 0.0 || d_chi2 >= 0.0; }
};

int cmd_bounds(const CliState& st, const std::string& components_path,
               const std::string& family_path, const UserBoundInputs& user,
               std::ostream& out) {
    const Config cfg = st.config();
    const Json input = load_json_file(components_path);
    const ComponentList c = parse_component_list(input);
    Json all_inputs = input;

    std::string provenance = "instance";
    BoundReport rep = evaluate_instance(c, cfg);
    if (user.any()) {
        if (user.capacity >= 0.0) rep.inputs.capacity = user.capacity;
        if (user.delta_h2 >= 0.0) rep.inputs.delta_h2 = user.delta_h2;
        if (user.d_chi2 >= 0.0) rep.inputs.d_chi2 = user.d_chi2;
        const auto b = thm_main_bounds(c.n(), rep.inputs.capacity, rep.inputs.delta_h2,
                                       rep.inputs.d_chi2);
        rep.ub1 = b.ub1;
        rep.ub2 = b.ub2;
        rep.ub3 = b.ub3;
        provenance = "user-supplied";
        all_inputs = Json{{"components", input},
                          {"capacity", rep.inputs.capacity},
                          {"delta_h2", rep.inputs.delta_h2},
                          {"d_chi2", rep.inputs.d_chi2}};
    } else if (!family_path.empty()) {
        const Json famj = load_json_file(family_path);
        all_inputs = Json{{"components", input}, {"family", famj}};
        const FamilyFunctionals f = family_functionals(parse_family_spec(famj), cfg, 32, st.seed);
        const auto b = thm_main_bounds(c.n(), f.c_chi2_upper, f.delta_h2, f.d_chi2);
        rep.ub1 = b.ub1;
        rep.ub2 = b.ub2;
        rep.ub3 = b.ub3;
        rep.inputs.capacity = f.c_chi2_upper;
        rep.inputs.delta_h2 = f.delta_h2;
        rep.inputs.d_chi2 = f.d_chi2;
        provenance = "family";
    }

    Report r("bounds evaluate", st, all_inputs);
    r.results() = bound_report_json(rep, provenance);
    if (rep.exact_chi2) {
        for (const auto& [label, ub] :
             {std::pair<const char*, double>{"ub1", rep.ub1}, {"ub2", rep.ub2},
              {"ub3", rep.ub3}}) {
            if (std::isfinite(ub))
                r.assert_le(std::string("exact<=") + label, *rep.exact_chi2, ub,
                            cfg.tol.comparison * (1.0 + ub));
        }
        r.assert_le("exact>=0", 0.0, *rep.exact_chi2, 0.0);
    }
    return r.emit(st, out);
}

int cmd_series(const CliState& st, const std::string& components_path, const std::string& method,
               std::ostream& out) {
    const Config cfg = st.config();
    const Json input = load_json_file(components_path);
    const ComponentList c = parse_component_list(input);
    Report rep("series", st, input);
    const MixtureMatrix mm = build_mixture_matrix(c, cfg);
    const auto sd = s_series(
        mm, method == "direct" ? SeriesMethod::Direct : SeriesMethod::Interpolation, cfg);
    rep.results() = series_to_json(sd);
    rep.assert_close("S0=1", sd.s[0], 1.0, 1e-8);
    if (c.n() >= 1) rep.assert_close("S1=0", sd.s[1], 0.0, 1e-6);
    rep.assert_close("sum-S=chi2+1", sd.chi2(), exact_chi2_permanent(mm, cfg),
                     1e-6 * (1.0 + std::abs(sd.chi2())));
    if (c.n() <= 8) {  // cross-check the other route when it is cheap
        const auto other = s_series(
            mm, method == "direct" ? SeriesMethod::Interpolation : SeriesMethod::Direct, cfg);
        double worst = 0.0;
        for (std::size_t l = 0; l < sd.s.size(); ++l)
            worst = std::max(worst, std::abs(sd.s[l] - other.s[l]) / (1.0 + other.s[l]));
        rep.assert_le("method-agreement", worst, 1e-5);
    }
    return rep.emit(st, out);
}

int cmd_esp_verify(const CliState& st, int n_max, int trials, std::ostream& out) {
    const Config cfg = st.config();
    Report rep("esp verify", st,
               Json{{"n_max", n_max}, {"trials", trials}, {"seed", st.seed}});
    const auto r = verify_esp_theorem(n_max, trials, st.seed, st.threads, cfg);
    rep.results()["max_ratio_real"] = r.max_ratio_real;
    rep.results()["max_ratio_complex"] = r.max_ratio_complex;
    Json viol = Json::array();
    for (const auto& v : r.violations)
        viol.push_back(Json{{"n", v.n}, {"ell", v.ell}, {"k", v.k}, {"value", v.value},
                            {"bound", v.bound}});
    rep.results()["violations"] = std::move(viol);
    // the complex bound is exactly attained at n = 2, so ratios may sit on
    // 1 up to round-off
    rep.assert_le("real-ratio<=1", r.max_ratio_real, 1.0, 1e-12);
    rep.assert_le("complex-ratio<=1", r.max_ratio_complex, 1.0, 1e-12);
    rep.assert_le("violations=0", static_cast<double>(r.violations.size()), 0.0);
    return rep.emit(st, out);
}

int cmd_capacity(const CliState& st, const std::string& family_path, int restarts,
                 std::ostream& out) {
    const Config cfg = st.config();
    const Json input = load_json_file(family_path);
    const FamilySpec spec = parse_family_spec(input);
    Report rep("capacity", st, input);
    const FamilyFunctionals f = family_functionals(spec, cfg, restarts, st.seed);
    rep.results()["c_chi2_upper"] = num_or_inf(f.c_chi2_upper);
    rep.results()["c_chi2_estimate"] = num_or_inf(f.c_chi2_estimate);
    rep.results()["d_chi2"] = num_or_inf(f.d_chi2);
    rep.results()["d_h2"] = num_or_inf(f.d_h2);
    rep.results()["delta_h2"] = num_or_inf(f.delta_h2);
    rep.assert_le("estimate<=upper", f.c_chi2_estimate, f.c_chi2_upper, 1e-8);
    if (std::isfinite(f.d_chi2)) {
        rep.assert_le("upper<=d_chi2", f.c_chi2_upper, f.d_chi2, 1e-8);
        if (std::isfinite(f.delta_h2))
            rep.assert_le("delta_h2<=d_chi2+1", f.delta_h2, f.d_chi2 + 1.0, 1e-8);
    }
    return rep.emit(st, out);
}

int cmd_definetti(const CliState& st, const std::string& components_path, int k,
                  std::ostream& out) {
    const Config cfg = st.config();
    const Json input = load_json_file(components_path);
    const ComponentList c = parse_component_list(input);
    Report rep("definetti", st, Json{{"components", input}, {"k", k}});
    const auto d = definetti_bound_and_exact(c, k, cfg);
    rep.results()["exact"] = num_or_inf(d.exact);
    rep.results()["bound"] = num_or_inf(d.bound);
    const double cells = std::pow(static_cast<double>(c.alphabet_size()), k);
    if (cells <= static_cast<double>(cfg.caps.bruteforce_cells)) {
        const double brute = definetti_marginal_chi2_bruteforce(c, k, cfg);
        rep.results()["bruteforce"] = num_or_inf(brute);
        rep.assert_close("series-vs-bruteforce", d.exact, brute, 1e-7 * (1.0 + brute));
    }
    rep.assert_le("exact<=bound", d.exact, d.bound, 1e-8 * (1.0 + d.bound));
    return rep.emit(st, out);
}

int cmd_two_mixtures(const CliState& st, const std::string& components_path, std::ostream& out) {
    const Config cfg = st.config();
    const Json input = load_json_file(components_path);
    const ComponentList all = parse_component_list(input);
    if (all.n() < 3)
        throw std::invalid_argument(
            "two-mixtures needs >= 3 components: p1, q1, then the shared list");
    std::vector<FiniteDistribution> shared(all.components().begin() + 2, all.components().end());
    Report rep("two-mixtures", st, input);
    const auto res =
        two_mixtures_check(ComponentList(std::move(shared)), all.component(0), all.component(1),
                           cfg);
    rep.results()["tv2"] = num_or_inf(res.tv2);
    rep.results()["middle"] = num_or_inf(res.middle);
    rep.results()["weighted_series"] = num_or_inf(res.weighted_series);
    rep.results()["bound"] = num_or_inf(res.bound);
    rep.assert_le("tv2<=middle", res.tv2, res.middle, 1e-8 * (1.0 + res.middle));
    rep.assert_le("middle<=weighted-series", res.middle, res.weighted_series,
                  1e-8 * (1.0 + res.weighted_series));
    rep.assert_le("weighted-series<=bound", res.weighted_series, res.bound,
                  1e-8 * (1.0 + res.bound));
    return rep.emit(st, out);
}

int cmd_mutual_info(const CliState& st, const std::string& components_path, std::ostream& out) {
    const Config cfg = st.config();
    const Json input = load_json_file(components_path);
    const ComponentList c = parse_component_list(input);
    Report rep("mutual-info", st, input);
    const auto res = mutual_info_gap(c, cfg);
    rep.results()["gap"] = num_or_inf(res.gap);
    rep.results()["ub"] = num_or_inf(res.ub);
    rep.results()["note"] =
        "random-theta capacity form omitted: it needs KL covering numbers of the convex hull";
    rep.assert_le("gap>=0", 0.0, res.gap, 1e-10);
    rep.assert_le("gap<=ub", res.gap, res.ub, 1e-8 * (1.0 + std::abs(res.ub)));
    return rep.emit(st, out);
}

int cmd_worst_case(const CliState& st, double c_target, double delta, std::ostream& out) {
    const Config cfg = st.config();
    Report rep("worst-case", st, Json{{"c_target", c_target}, {"delta", delta}});
    const auto wc = worst_case_matrix(c_target, delta, cfg);
    rep.results()["matrix"] = matrix_to_json(wc.a);
    rep.results()["m"] = wc.m;
    rep.results()["block"] = wc.block;
    const auto fam = worst_case_family(c_target, delta);
    Json famj = Json::array();
    for (const auto& d : fam) famj.push_back(d.probs());
    rep.results()["family"] = std::move(famj);
    const ComponentList cl(fam);
    if (fam.size() >= 2) {
        rep.assert_close("family-delta=1/delta", max_pair_h2_singularity(cl), 1.0 / delta,
                         1e-8 / delta);
    }
    rep.assert_le("family-capacity<=m-1", instance_capacity(cl),
                  static_cast<double>(fam.size()) - 1.0, 1e-10);
    if (wc.a.rows() <= 16) rep.results()["permanent"] = permanent_ryser(wc.a, cfg);
    return rep.emit(st, out);
}

int cmd_toy(const CliState& st, double mu, int n, std::ostream& out) {
    const Config cfg = st.config();
    Report rep("toy gaussian", st, Json{{"mu", mu}, {"n", n}});
    const auto res = toy_chi2(n, mu, cfg);
    rep.results()["mu"] = res.mu;
    rep.results()["n"] = res.n;
    rep.results()["f"] = res.f;
    rep.results()["g"] = res.g;
    rep.results()["chi2_series"] = num_or_inf(res.chi2_series);
    rep.results()["geometric_cap"] = num_or_inf(res.geometric_cap);
    rep.assert_le("f<=1-exp(-mu^2)", res.f, -std::expm1(-mu * mu), 1e-10);
    rep.assert_le("chi2<=f^2/(1-f)", res.chi2_series, res.geometric_cap, 1e-8);
    if (n == 2 && mu <= 5.0)
        rep.assert_close("series-vs-quadrature", res.chi2_series, toy_chi2_oracle_n2(mu, cfg),
                         1e-8);
    return rep.emit(st, out);
}

int cmd_demo_moments(const CliState& st, double mu, int ell, const std::string& sweep,
                     std::ostream& out) {
    const Config cfg = st.config();
    (void)cfg;
    int lo = 16, hi = 4096;
    if (!sweep.empty()) {
        const auto colon = sweep.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("--n-sweep expects the form LO:HI");
        lo = std::stoi(sweep.substr(0, colon));
        hi = std::stoi(sweep.substr(colon + 1));
    }
    Report rep("demo moments", st,
               Json{{"mu", mu}, {"ell", ell}, {"n_lo", lo}, {"n_hi", hi}});
    Json rows = Json::array();
    for (int n = lo; n <= hi; n *= 2)
        rows.push_back(Json{{"n", n}, {"term", num_or_inf(moments_blowup_term(n, mu, ell))}});
    rep.results()["terms"] = std::move(rows);
    const double slope = moments_blowup_slope(mu, ell, lo, hi);
    rep.results()["fitted_log_slope"] = slope;
    rep.assert_close("slope=ell", slope, static_cast<double>(ell), 0.05);
    return rep.emit(st, out);
}

int cmd_demo_cumulants(const CliState& st, int l_max, double mu, int n, std::ostream& out) {
    Report rep("demo cumulants", st, Json{{"l_max", l_max}, {"mu", mu}, {"n", n}});
    const auto div = cumulant_divergence(l_max, mu, n);
    Json bs = Json::array();
    for (const auto& b : div.b) bs.push_back(b.str());
    rep.results()["b"] = std::move(bs);
    rep.results()["log10_terms"] = div.log10_terms;
    rep.results()["log10_partial_sums"] = div.log10_partial_sums;
    const long expected[] = {1, 2, 16, 272, 7936};
    for (int i = 0; i < 5 && i < static_cast<int>(div.b.size()); ++i)
        rep.assert_close("b" + std::to_string(2 * i + 1),
                         div.b[static_cast<std::size_t>(i)] == expected[i] ? 0.0 : 1.0, 0.0, 0.0);
    rep.assert_le("partial-sums-diverge(log10>6)", 6.0,
                  div.log10_partial_sums.empty() ? 0.0 : div.log10_partial_sums.back());
    return rep.emit(st, out);
}

int cmd_verify_all(const CliState& st, std::ostream& out) {
    const Config cfg = st.config();
    VerifyOptions o = budget_options(st.budget, st.seed);
    o.threads = st.threads;
    Report rep("verify-all", st, Json{{"seed", st.seed}, {"budget", st.budget}});
    rep.results()["budget"] = st.budget;
    for (const auto& c : run_all_checks(o, cfg)) rep.add_check(c);
    return rep.emit(st, out);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact divergences between permutation mixtures and their i.i.d. counterparts"};
    app.require_subcommand(1);
    app.fallthrough();

    CliState st;
    if (const char* env = std::getenv("PERMIX_BUDGET")) st.budget = env;
    app.add_option("--seed", st.seed, "master seed echoed into every report");
    app.add_option("--out", st.out_path, "write the report to this file instead of stdout");
    app.add_option("--format", st.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--threads", st.threads, "worker threads for sweeps (deterministic merge)");
    app.add_flag("--timing", st.timing, "include wall time in the report (breaks byte-identity)");
    app.add_option("--validation-tol", st.tol_validation, "structural invariant tolerance");
    app.add_option("--comparison-tol", st.tol_comparison, "cross-route comparison tolerance");

    std::string components_path, family_path, method = "interpolation", sweep;
    int k = 1, n_max = 20, trials = 10000, restarts = 32, toy_n = 100, l_max = 30, ell = 1,
        cum_n = 10;
    double mu = 1.0, c_target = 2.0, delta = 0.5, cum_mu = 1.0;

    std::string div_kind = "chi2";
    auto* divergence_cmd = app.add_subcommand("divergence", "exact chi^2 by both routes");
    divergence_cmd->fallthrough();
    divergence_cmd->add_option("--components", components_path)->required();
    divergence_cmd->add_option("--kind", div_kind, "pairwise divergence to tabulate")
        ->check(CLI::IsMember({"chi2", "hellinger2", "tv", "kl", "lecam"}));

    auto* bounds_cmd = app.add_subcommand("bounds", "divergence bound evaluation");
    bounds_cmd->fallthrough();
    auto* bounds_eval = bounds_cmd->add_subcommand("evaluate", "evaluate all bounds");
    bounds_eval->fallthrough();
    bounds_eval->add_option("--components", components_path)->required();
    bounds_eval->add_option("--family", family_path);
    UserBoundInputs user_bounds;
    bounds_eval->add_option("--capacity", user_bounds.capacity,
                            "override the capacity (provenance becomes user-supplied)");
    bounds_eval->add_option("--delta-h2", user_bounds.delta_h2, "override the H^2 singularity");
    bounds_eval->add_option("--d-chi2", user_bounds.d_chi2, "override the chi^2 diameter");

    auto* series_cmd = app.add_subcommand("series", "degree-graded divergence decomposition");
    series_cmd->fallthrough();
    series_cmd->add_option("--components", components_path)->required();
    series_cmd->add_option("--method", method)
        ->check(CLI::IsMember({"interpolation", "direct"}));

    auto* esp_cmd = app.add_subcommand("esp", "elementary symmetric polynomial bounds");
    esp_cmd->fallthrough();
    auto* esp_verify = esp_cmd->add_subcommand("verify", "sweep the centered ESP bounds");
    esp_verify->fallthrough();
    esp_verify->add_option("--n-max", n_max);
    esp_verify->add_option("--trials", trials);

    auto* capacity_cmd = app.add_subcommand("capacity", "family functionals");
    capacity_cmd->fallthrough();
    capacity_cmd->add_option("--family", family_path)->required();
    capacity_cmd->add_option("--restarts", restarts);

    auto* definetti_cmd = app.add_subcommand("definetti", "k-marginal closeness");
    definetti_cmd->fallthrough();
    definetti_cmd->add_option("--components", components_path)->required();
    definetti_cmd->add_option("--k", k)->required();

    auto* two_cmd = app.add_subcommand("two-mixtures", "mixtures differing in one component");
    two_cmd->fallthrough();
    two_cmd->add_option("--components", components_path)->required();

    auto* mi_cmd = app.add_subcommand("mutual-info", "permutation vs i.i.d. prior information");
    mi_cmd->fallthrough();
    mi_cmd->add_option("--components", components_path)->required();

    auto* wc_cmd = app.add_subcommand("worst-case", "extremal matrix and family constructions");
    wc_cmd->fallthrough();
    wc_cmd->add_option("--c-target", c_target);
    wc_cmd->add_option("--delta", delta);

    auto* toy_cmd = app.add_subcommand("toy", "balanced Gaussian location model");
    toy_cmd->fallthrough();
    auto* toy_gauss = toy_cmd->add_subcommand("gaussian", "series evaluation");
    toy_gauss->fallthrough();
    toy_gauss->add_option("--mu", mu);
    toy_gauss->add_option("--n", toy_n);

    auto* demo_cmd = app.add_subcommand("demo", "failure demonstrations of older methods");
    demo_cmd->fallthrough();
    auto* demo_moments = demo_cmd->add_subcommand("moments", "moment-term growth in n");
    demo_moments->fallthrough();
    demo_moments->add_option("--mu", cum_mu);
    demo_moments->add_option("--ell", ell);
    demo_moments->add_option("--n-sweep", sweep, "dyadic range LO:HI");
    auto* demo_cumulants = demo_cmd->add_subcommand("cumulants", "cumulant-sum divergence");
    demo_cumulants->fallthrough();
    demo_cumulants->add_option("--l-max", l_max);
    demo_cumulants->add_option("--mu", cum_mu);
    demo_cumulants->add_option("--n", cum_n);

    auto* verify_cmd = app.add_subcommand("verify-all", "run every module verification sweep");
    verify_cmd->fallthrough();
    verify_cmd->add_option("--budget", st.budget, "small|medium|large")
        ->check(CLI::IsMember({"small", "medium", "large"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream os;
        const int code = app.exit(e, os, os);
        (code == 0 ? out : err) << os.str();
        return code == 0 ? 0 : 2;
    }

    try {
        if (divergence_cmd->parsed()) return cmd_divergence(st, components_path, div_kind, out);
        if (bounds_cmd->parsed() && bounds_eval->parsed())
            return cmd_bounds(st, components_path, family_path, user_bounds, out);
        if (series_cmd->parsed()) return cmd_series(st, components_path, method, out);
        if (esp_cmd->parsed() && esp_verify->parsed()) return cmd_esp_verify(st, n_max, trials, out);
        if (capacity_cmd->parsed()) return cmd_capacity(st, family_path, restarts, out);
        if (definetti_cmd->parsed()) return cmd_definetti(st, components_path, k, out);
        if (two_cmd->parsed()) return cmd_two_mixtures(st, components_path, out);
        if (mi_cmd->parsed()) return cmd_mutual_info(st, components_path, out);
        if (wc_cmd->parsed()) return cmd_worst_case(st, c_target, delta, out);
        if (toy_cmd->parsed() && toy_gauss->parsed()) return cmd_toy(st, mu, toy_n, out);
        if (demo_cmd->parsed() && demo_moments->parsed())
            return cmd_demo_moments(st, cum_mu, ell, sweep, out);
        if (demo_cmd->parsed() && demo_cumulants->parsed())
            return cmd_demo_cumulants(st, l_max, cum_mu, cum_n, out);
        if (verify_cmd->parsed()) return cmd_verify_all(st, out);
        err << "missing subcommand\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        // a mathematical assertion inside the library failed
        err << "assertion failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace permix
