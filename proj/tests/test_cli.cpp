#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "permix/cli.hpp"
#include "permix/json_io.hpp"
#include "permix/numeric.hpp"

using namespace permix;

namespace {

int run(std::initializer_list<const char*> args, std::string& out, std::string& err) {
    std::vector<const char*> argv{"permix"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream os, es;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), os, es);
    out = os.str();
    err = es.str();
    return code;
}

struct TempJson {
    std::string path;
    explicit TempJson(const Json& j, const std::string& name) {
        path = std::string("/tmp/permix_test_") + name + ".json";
        std::ofstream f(path);
        f << j.dump();
    }
    ~TempJson() { std::remove(path.c_str()); }
};

Json golden_components() {
    return Json{{"alphabet_size", 2},
                {"components", Json::array({Json::array({0.8, 0.2}), Json::array({0.2, 0.8})})}};
}

}  // namespace

TEST_CASE("json round trips") {
    const auto c = parse_component_list(golden_components());
    CHECK(c.n() == 2);
    const auto back = component_list_to_json(c);
    CHECK(back.at("alphabet_size") == 2);
    CHECK(parse_num_or_inf(num_or_inf(kInf)) == kInf);
    CHECK(num_or_inf(kInf).get<std::string>() == "inf");
}

TEST_CASE("divergence command") {
    TempJson f(golden_components(), "divergence");
    std::string out, err;
    const int code = run({"divergence", "--components", f.path.c_str()}, out, err);
    CHECK(code == 0);
    const Json rep = Json::parse(out);
    CHECK(rep.at("pass").get<bool>());
    CHECK(rep.at("results").at("exact_chi2_permanent").get<double>() ==
          doctest::Approx(0.1296).epsilon(1e-10));
}

TEST_CASE("esp verify command") {
    std::string out, err;
    const int code = run({"esp", "verify", "--n-max", "2", "--trials", "50", "--seed", "3"},
                         out, err);
    CHECK(code == 0);
    const Json rep = Json::parse(out);
    CHECK(rep.at("results").at("max_ratio_real").get<double>() ==
          doctest::Approx(0.31622776601683794).epsilon(1e-12));
    CHECK(rep.at("results").at("violations").empty());
}

TEST_CASE("usage errors exit with 2") {
    std::string out, err;
    CHECK(run({"divergence"}, out, err) == 2);                       // missing --components
    CHECK(run({"divergence", "--components", "/nope.json"}, out, err) == 2);
    CHECK(run({"frobnicate"}, out, err) == 2);
}

TEST_CASE("byte-identical reports for a fixed seed") {
    std::string a, b, err;
    CHECK(run({"verify-all", "--seed", "9", "--budget", "small"}, a, err) == 0);
    CHECK(run({"verify-all", "--seed", "9", "--budget", "small"}, b, err) == 0);
    CHECK(a == b);
    CHECK(!a.empty());
}

TEST_CASE("csv format emits rows") {
    TempJson f(golden_components(), "csv");
    std::string out, err;
    const int code = run({"divergence", "--components", f.path.c_str(), "--format", "csv"},
                         out, err);
    CHECK(code == 0);
    CHECK(out.rfind("kind,name,lhs,rhs,margin,pass", 0) == 0);
}

TEST_CASE("capacity command with a family file") {
    TempJson f(Json{{"variant", "bernoulli"}, {"eps", 0.25}}, "family");
    std::string out, err;
    const int code = run({"capacity", "--family", f.path.c_str(), "--restarts", "4"}, out, err);
    CHECK(code == 0);
    const Json rep = Json::parse(out);
    CHECK(rep.at("results").at("c_chi2_upper").get<double>() == doctest::Approx(0.5));
}

TEST_CASE("toy and demo commands") {
    std::string out, err;
    CHECK(run({"toy", "gaussian", "--mu", "1.0", "--n", "100"}, out, err) == 0);
    CHECK(run({"demo", "moments", "--mu", "1.0", "--ell", "1", "--n-sweep", "16:4096"}, out,
              err) == 0);
    CHECK(run({"demo", "cumulants", "--l-max", "12"}, out, err) == 0);
    const Json rep = Json::parse(out);
    CHECK(rep.at("results").at("b")[4].get<std::string>() == "7936");
}

TEST_CASE("matrix json round trip") {
    Eigen::MatrixXd m(2, 2);
    m << 0.68, 0.32, 0.32, 0.68;
    const Json j = matrix_to_json(m);
    bool is_complex = true;
    const Eigen::MatrixXcd back = parse_matrix(j, &is_complex);
    CHECK_FALSE(is_complex);
    CHECK(back(0, 0).real() == doctest::Approx(0.68));
    CHECK(back(1, 0).imag() == 0.0);

    Json cj = j;
    cj["complex"] = true;
    cj["imag_rows"] = Json::array({Json::array({0.1, 0.0}), Json::array({0.0, -0.1})});
    const Eigen::MatrixXcd cm = parse_matrix(cj, &is_complex);
    CHECK(is_complex);
    CHECK(cm(0, 0).imag() == doctest::Approx(0.1));

    Json bad = j;
    bad["rows"] = Json::array({Json::array({1.0})});
    CHECK_THROWS_AS((void)parse_matrix(bad), std::invalid_argument);
}

TEST_CASE("budget env variable is the default") {
    setenv("PERMIX_BUDGET", "small", 1);
    std::string out, err;
    CHECK(run({"verify-all", "--seed", "4"}, out, err) == 0);
    CHECK(Json::parse(out).at("results").at("budget").get<std::string>() == "small");
    unsetenv("PERMIX_BUDGET");
}

TEST_CASE("remaining subcommands smoke") {
    TempJson comps(golden_components(), "smoke_c");
    TempJson four(Json{{"alphabet_size", 2},
                       {"components", Json::array({Json::array({0.8, 0.2}),
                                                   Json::array({0.2, 0.8}),
                                                   Json::array({0.5, 0.5}),
                                                   Json::array({0.5, 0.5})})}},
                  "smoke_four");
    TempJson fam(Json{{"variant", "explicit"},
                      {"alphabet_size", 2},
                      {"components", Json::array({Json::array({0.75, 0.25}),
                                                  Json::array({0.25, 0.75})})}},
                 "smoke_fam");
    std::string out, err;
    CHECK(run({"bounds", "evaluate", "--components", comps.path.c_str(), "--family",
               fam.path.c_str()}, out, err) == 0);
    CHECK(Json::parse(out).at("results").at("provenance").get<std::string>() == "family");
    CHECK(run({"definetti", "--components", comps.path.c_str(), "--k", "2"}, out, err) == 0);
    CHECK(run({"two-mixtures", "--components", four.path.c_str()}, out, err) == 0);
    CHECK(run({"mutual-info", "--components", comps.path.c_str()}, out, err) == 0);
    CHECK(run({"worst-case", "--c-target", "2", "--delta", "0.5"}, out, err) == 0);
    const Json wc = Json::parse(out);
    CHECK(wc.at("results").at("matrix").at("n").get<int>() == 4);
    CHECK(run({"series", "--components", comps.path.c_str(), "--method", "direct"},
              out, err) == 0);
}

TEST_CASE("user-supplied bound inputs and failing assertions exit 1") {
    TempJson comps(golden_components(), "user_bounds");
    std::string out, err;
    CHECK(run({"bounds", "evaluate", "--components", comps.path.c_str(), "--capacity", "0.36",
               "--delta-h2", "1.5625", "--d-chi2", "2.25"}, out, err) == 0);
    CHECK(Json::parse(out).at("results").at("provenance").get<std::string>() ==
          "user-supplied");
    // an impossible user capacity makes the sandwich fail: exit code 1
    CHECK(run({"bounds", "evaluate", "--components", comps.path.c_str(), "--capacity", "0.001",
               "--delta-h2", "1.0001", "--d-chi2", "0.001"}, out, err) == 1);
    CHECK_FALSE(Json::parse(out).at("pass").get<bool>());
}

TEST_CASE("--out writes the report to a file") {
    TempJson comps(golden_components(), "outfile");
    const std::string path = "/tmp/permix_test_report.json";
    std::string out, err;
    CHECK(run({"divergence", "--components", comps.path.c_str(), "--out", path.c_str()},
              out, err) == 0);
    CHECK(out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    Json j;
    f >> j;
    CHECK(j.at("pass").get<bool>());
    std::remove(path.c_str());
}

TEST_CASE("reports are identical across thread counts") {
    std::string serial, threaded, err;
    CHECK(run({"esp", "verify", "--n-max", "24", "--trials", "500", "--seed", "6"}, serial,
              err) == 0);
    CHECK(run({"esp", "verify", "--n-max", "24", "--trials", "500", "--seed", "6", "--threads",
               "4"}, threaded, err) == 0);
    CHECK(serial == threaded);
}

TEST_CASE("family json round trips") {
    for (const Json j : {Json{{"variant", "bernoulli"}, {"eps", 0.3}},
                         Json{{"variant", "gaussian"}, {"mu_max", 2.0},
                              {"support", Json::array({-1.0, 1.0})}},
                         Json{{"variant", "poisson"}, {"m_max", 1.5},
                              {"truncation_mass", 1e-12}},
                         Json{{"variant", "explicit"}, {"alphabet_size", 2},
                              {"components", Json::array({Json::array({0.5, 0.5})})}}}) {
        const FamilySpec spec = parse_family_spec(j);
        const Json back = family_spec_to_json(spec);
        CHECK(back.at("variant") == j.at("variant"));
        CHECK_NOTHROW((void)parse_family_spec(back));
    }
    CHECK_THROWS_AS((void)parse_family_spec(Json{{"variant", "cauchy"}}),
                    std::invalid_argument);
}
