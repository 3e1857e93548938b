#include "permix/json_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "permix/numeric.hpp"

namespace permix {

Json num_or_inf(double v) {
    if (std::isnan(v)) throw std::logic_error("report value is NaN");
    if (v == kInf) return Json("inf");
    if (v == -kInf) return Json("-inf");
    return Json(v);
}

double parse_num_or_inf(const Json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        throw std::invalid_argument("expected a number or 'inf', got '" + s + "'");
    }
    return j.get<double>();
}

ComponentList parse_component_list(const Json& j) {
    if (!j.contains("alphabet_size") || !j.contains("components"))
        throw std::invalid_argument("component list JSON needs alphabet_size and components");
    const int k = j.at("alphabet_size").get<int>();
    std::vector<FiniteDistribution> comps;
    for (const auto& row : j.at("components")) {
        auto probs = row.get<std::vector<double>>();
        if (static_cast<int>(probs.size()) != k)
            throw std::invalid_argument("component row length does not match alphabet_size");
        comps.emplace_back(std::move(probs));
    }
    return ComponentList(std::move(comps));
}

Json component_list_to_json(const ComponentList& c) {
    Json j;
    j["alphabet_size"] = c.alphabet_size();
    Json rows = Json::array();
    for (const auto& d : c.components()) rows.push_back(d.probs());
    j["components"] = std::move(rows);
    return j;
}

FamilySpec parse_family_spec(const Json& j) {
    const auto variant = j.at("variant").get<std::string>();
    if (variant == "explicit") {
        ExplicitFinite ex;
        const int k = j.at("alphabet_size").get<int>();
        for (const auto& row : j.at("components")) {
            auto probs = row.get<std::vector<double>>();
            if (static_cast<int>(probs.size()) != k)
                throw std::invalid_argument("family row length does not match alphabet_size");
            ex.components.emplace_back(std::move(probs));
        }
        if (ex.components.empty()) throw std::invalid_argument("explicit family is empty");
        return ex;
    }
    if (variant == "gaussian") {
        GaussianLocation g;
        g.mu_max = j.at("mu_max").get<double>();
        if (j.contains("support")) g.support = j.at("support").get<std::vector<double>>();
        return g;
    }
    if (variant == "bernoulli") {
        BernoulliInterval b;
        b.eps = j.at("eps").get<double>();
        return b;
    }
    if (variant == "poisson") {
        PoissonInterval p;
        p.m_max = j.at("m_max").get<double>();
        if (j.contains("truncation_mass"))
            p.truncation_mass = j.at("truncation_mass").get<double>();
        return p;
    }
    throw std::invalid_argument("unknown family variant: " + variant);
}

Json family_spec_to_json(const FamilySpec& spec) {
    Json j;
    if (const auto* ex = std::get_if<ExplicitFinite>(&spec)) {
        j["variant"] = "explicit";
        j["alphabet_size"] = ex->components.front().alphabet_size();
        Json rows = Json::array();
        for (const auto& d : ex->components) rows.push_back(d.probs());
        j["components"] = std::move(rows);
    } else if (const auto* g = std::get_if<GaussianLocation>(&spec)) {
        j["variant"] = "gaussian";
        j["mu_max"] = g->mu_max;
        if (g->support) j["support"] = *g->support;
    } else if (const auto* b = std::get_if<BernoulliInterval>(&spec)) {
        j["variant"] = "bernoulli";
        j["eps"] = b->eps;
    } else {
        const auto& p = std::get<PoissonInterval>(spec);
        j["variant"] = "poisson";
        j["m_max"] = p.m_max;
        j["truncation_mass"] = p.truncation_mass;
    }
    return j;
}

Eigen::MatrixXcd parse_matrix(const Json& j, bool* is_complex) {
    const int n = j.at("n").get<int>();
    const auto rows = j.at("rows").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(rows.size()) != n)
        throw std::invalid_argument("matrix JSON: row count does not match n");
    const bool cplx = j.value("complex", false);
    if (is_complex) *is_complex = cplx;
    Eigen::MatrixXcd m(n, n);
    std::vector<std::vector<double>> imag;
    if (cplx) {
        imag = j.at("imag_rows").get<std::vector<std::vector<double>>>();
        if (static_cast<int>(imag.size()) != n)
            throw std::invalid_argument("matrix JSON: imag_rows count does not match n");
    }
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
            throw std::invalid_argument("matrix JSON: ragged rows");
        for (int col = 0; col < n; ++col)
            m(i, col) = {rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)],
                         cplx ? imag[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)]
                              : 0.0};
    }
    return m;
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
    Json j;
    j["n"] = static_cast<int>(m.rows());
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["complex"] = false;
    return j;
}

Json series_to_json(const SeriesDecomposition& sd) {
    Json j;
    j["s"] = sd.s;
    j["r"] = sd.r;
    if (sd.t) j["t"] = *sd.t;
    j["chi2"] = sd.chi2();
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    Json j;
    in >> j;
    return j;
}

}  // namespace permix
