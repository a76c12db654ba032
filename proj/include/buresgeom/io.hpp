#pragma once

#include <cstdio>
#include <fstream>
#include <string>

#include "barycenter.hpp"
#include "fidelity.hpp"
#include "json.hpp"
#include "matrix.hpp"
#include "suite.hpp"

namespace buresgeom {

// 17 significant digits: round-trip exact for IEEE doubles.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Matrix schema: {"d": n, "re": [[...]], "im": [[...]]}; row-major, im optional.
inline Matrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("d") || !j.contains("re"))
        throw std::invalid_argument("matrix JSON: expected object with \"d\" and \"re\"");
    const auto d = j.at("d").get<Eigen::Index>();
    if (d < 1) throw DimensionError("matrix JSON: d must be >= 1");
    const auto read_part = [&](const char* key) {
        const auto& rows = j.at(key);
        if (static_cast<Eigen::Index>(rows.size()) != d)
            throw DimensionError(std::string("matrix JSON: \"") + key + "\" must have d rows");
        Eigen::MatrixXd part(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            const auto& row = rows.at(static_cast<size_t>(i));
            if (static_cast<Eigen::Index>(row.size()) != d)
                throw DimensionError(std::string("matrix JSON: \"") + key +
                                     "\" row length mismatch");
            for (Eigen::Index k = 0; k < d; ++k)
                part(i, k) = row.at(static_cast<size_t>(k)).get<double>();
        }
        return part;
    };
    const Eigen::MatrixXd re = read_part("re");
    Eigen::MatrixXd im = Eigen::MatrixXd::Zero(d, d);
    if (j.contains("im")) im = read_part("im");
    return re.cast<Cplx>() + Cplx(0.0, 1.0) * im.cast<Cplx>();
}

inline nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json j;
    j["d"] = m.rows();
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    bool has_im = false;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json rrow = nlohmann::json::array(), irow = nlohmann::json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            rrow.push_back(m(i, k).real());
            irow.push_back(m(i, k).imag());
            if (m(i, k).imag() != 0.0) has_im = true;
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    j["re"] = std::move(re);
    if (has_im) j["im"] = std::move(im);
    return j;
}

inline nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    return nlohmann::json::parse(in);
}

inline Matrix load_matrix(const std::string& path) {
    return matrix_from_json(load_json(path));
}

// Ensemble schema: {"weights": [...], "states": [<matrix JSON>...]}
inline StateEnsemble ensemble_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("weights") || !j.contains("states"))
        throw std::invalid_argument(
            "ensemble JSON: expected object with \"weights\" and \"states\"");
    StateEnsemble e;
    const auto& weights = j.at("weights");
    e.weights = RealVector(static_cast<Eigen::Index>(weights.size()));
    for (Eigen::Index i = 0; i < e.weights.size(); ++i)
        e.weights[i] = weights.at(static_cast<size_t>(i)).get<double>();
    for (const auto& s : j.at("states")) e.states.push_back(matrix_from_json(s));
    e.validate();
    return e;
}

inline nlohmann::json complex_to_json(Cplx z) {
    return {{"re", z.real()}, {"im", z.imag()}};
}

inline nlohmann::json suite_report_to_json(const SuiteReport& report) {
    nlohmann::json j;
    j["config"] = {{"dims", report.config.dims},
                   {"trials", report.config.trials},
                   {"seed", report.config.seed},
                   {"tol", report.config.tol},
                   {"imag_tol", report.config.imag_tol},
                   {"cond_cap", report.config.cond_cap}};
    j["checks"] = nlohmann::json::array();
    for (const auto& c : report.checks) {
        nlohmann::json jc = {{"name", c.name},        {"trials", c.trials},
                             {"max_residual", c.max_residual}, {"tolerance", c.tolerance},
                             {"asserted", c.asserted}, {"verdict", c.pass ? "pass" : "fail"}};
        if (!c.note.empty()) jc["note"] = c.note;
        j["checks"].push_back(std::move(jc));
    }
    const FigureWitnesses w = figure_witnesses();
    j["witnesses"] = {{"commuting", {{"p", matrix_to_json(w.commuting_p)},
                                     {"q", matrix_to_json(w.commuting_q)},
                                     {"base", matrix_to_json(w.commuting_base)}}},
                      {"negative", {{"p", matrix_to_json(w.negative_p)},
                                    {"q", matrix_to_json(w.negative_q)},
                                    {"base", matrix_to_json(w.negative_base)}}}};
    j["all_pass"] = report.all_pass();
    return j;
}

}  // namespace buresgeom
