#pragma once

#include <fstream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "subldpc/code.hpp"
#include "subldpc/errors.hpp"

namespace subldpc {

/// Canonical code-file JSON: keys sorted, coefficient matrices row-major as
/// integer arrays in [0, q). Writing the same code twice yields identical
/// bytes, which is the interchange contract between construct and simulate.
inline nlohmann::json code_to_json(const ParityCheckCode& code) {
    nlohmann::json j;
    j["q"] = code.q;
    j["m"] = code.m;
    j["n_checks"] = code.n_checks;
    j["n_vars"] = code.n_vars;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : code.rows) {
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& e : row) {
            nlohmann::json coeff = nlohmann::json::array();
            for (std::size_t r = 0; r < e.coeff.rows(); ++r) {
                coeff.push_back(e.coeff.row(r));
            }
            entries.push_back(nlohmann::json::array({e.var, coeff}));
        }
        rows.push_back(std::move(entries));
    }
    j["rows"] = std::move(rows);
    j["meta"] = {{"dl", code.meta.dl},
                 {"dr", code.meta.dr},
                 {"L", code.meta.L},
                 {"M", code.meta.M},
                 {"seed", code.meta.seed}};
    return j;
}

inline void write_code(std::ostream& os, const ParityCheckCode& code) {
    os << code_to_json(code).dump() << '\n';
}

inline void write_code(const std::string& path, const ParityCheckCode& code) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_code(os, code);
}

inline ParityCheckCode code_from_json(const nlohmann::json& j) {
    ParityCheckCode code;
    code.q = j.at("q").get<std::uint32_t>();
    code.m = j.at("m").get<std::size_t>();
    code.n_checks = j.at("n_checks").get<std::size_t>();
    code.n_vars = j.at("n_vars").get<std::size_t>();
    for (const auto& row : j.at("rows")) {
        std::vector<CheckEntry> entries;
        for (const auto& e : row) {
            const std::size_t var = e.at(0).get<std::size_t>();
            const auto& rows_json = e.at(1);
            std::vector<Vec> coeff_rows;
            for (const auto& r : rows_json) coeff_rows.push_back(r.get<Vec>());
            entries.push_back(
                CheckEntry{var, Matrix::from_rows(coeff_rows, code.m, code.q)});
        }
        code.rows.push_back(std::move(entries));
    }
    const auto& meta = j.at("meta");
    code.meta.dl = meta.at("dl").get<unsigned>();
    code.meta.dr = meta.at("dr").get<unsigned>();
    code.meta.L = meta.at("L").get<unsigned>();
    code.meta.M = meta.at("M").get<std::size_t>();
    code.meta.seed = meta.at("seed").get<std::uint64_t>();
    validate_code(code);
    return code;
}

inline ParityCheckCode read_code(std::istream& is) {
    nlohmann::json j;
    is >> j;
    return code_from_json(j);
}

inline ParityCheckCode read_code(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path + " for reading");
    return read_code(is);
}

}  // namespace subldpc
