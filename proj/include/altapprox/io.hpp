#ifndef ALTAPPROX_IO_HPP
#define ALTAPPROX_IO_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "altapprox/operators.hpp"
#include "altapprox/quadrature.hpp"

namespace altapprox {

class SampleTableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline constexpr int kExpansionSchemaVersion = 1;

inline BasisTag basis_from_string(const std::string& s) {
    if (s == "A_with_constant") return BasisTag::a_with_constant;
    if (s == "B_with_constant") return BasisTag::b_with_constant;
    if (s == "structured") return BasisTag::structured;
    throw std::invalid_argument("unknown basis tag: " + s);
}

inline Provenance provenance_from_string(const std::string& s) {
    if (s == "spectral") return Provenance::spectral;
    if (s == "weak") return Provenance::weak;
    if (s == "projection") return Provenance::projection;
    if (s == "discrete_w") return Provenance::discrete_w;
    if (s == "discrete_what") return Provenance::discrete_what;
    throw std::invalid_argument("unknown provenance tag: " + s);
}

/// Canonical JSON form of an Expansion. Doubles go through "%.17g" text
/// so that save/load round-trips bit-for-bit.
inline nlohmann::ordered_json expansion_to_json(const Expansion& e,
                                                const std::string& operator_name,
                                                double quad_tol) {
    nlohmann::ordered_json j;
    j["schema_version"] = kExpansionSchemaVersion;
    j["n"] = e.n;
    j["basis"] = to_string(e.basis);
    j["constant"] = format_g17(e.constant);
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    for (double c : e.coeffs) coeffs.push_back(format_g17(c));
    j["coeffs"] = std::move(coeffs);
    j["provenance"] = to_string(e.provenance);
    j["generator"] = {{"operator", operator_name}, {"quad_tol", format_g17(quad_tol)}};
    if (!e.note.empty()) j["generator"]["note"] = e.note;
    return j;
}

inline Expansion expansion_from_json(const nlohmann::json& j) {
    if (!j.contains("schema_version") ||
        j.at("schema_version").get<int>() != kExpansionSchemaVersion)
        throw std::invalid_argument("expansion file: unsupported schema version");
    Expansion e;
    e.n = j.at("n").get<int>();
    e.basis = basis_from_string(j.at("basis").get<std::string>());
    e.constant = std::stod(j.at("constant").get<std::string>());
    for (const auto& c : j.at("coeffs"))
        e.coeffs.push_back(std::stod(c.get<std::string>()));
    if (static_cast<int>(e.coeffs.size()) != e.n)
        throw std::invalid_argument("expansion file: coefficient count != n");
    e.provenance = provenance_from_string(j.at("provenance").get<std::string>());
    if (j.contains("generator") && j.at("generator").contains("note"))
        e.note = j.at("generator").at("note").get<std::string>();
    return e;
}

inline void save_expansion(const std::string& path, const Expansion& e,
                           const std::string& operator_name, double quad_tol) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << expansion_to_json(e, operator_name, quad_tol).dump(2) << "\n";
}

inline Expansion load_expansion(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    nlohmann::json j;
    in >> j;
    return expansion_from_json(j);
}

/// Tabulated samples (x, f(x)) with strictly increasing x; the discrete
/// operators require x = 0, x = 1 and every Gauss node of the order.
struct SampleTable {
    std::vector<double> x;
    std::vector<double> f;

    double value_at(double xq, double tol = 1e-12) const {
        for (std::size_t i = 0; i < x.size(); ++i)
            if (std::abs(x[i] - xq) <= tol) return f[i];
        throw SampleTableError("sample table: missing abscissa " + format_g17(xq));
    }
};

inline SampleTable load_sample_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SampleTableError("cannot open sample table: " + path);
    std::string line;
    if (!std::getline(in, line)) throw SampleTableError("sample table: empty file");
    // tolerate trailing CR from Windows-style files
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line != "x,f")
        throw SampleTableError("sample table: expected header \"x,f\", got \"" + line + "\"");
    SampleTable t;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string xs, fs;
        if (!std::getline(row, xs, ',') || !std::getline(row, fs))
            throw SampleTableError("sample table: malformed row at line " +
                                   std::to_string(lineno));
        const double xv = std::stod(xs);
        const double fv = std::stod(fs);
        if (!t.x.empty() && xv <= t.x.back())
            throw SampleTableError(
                "sample table: abscissas must be strictly increasing (line " +
                std::to_string(lineno) + ")");
        t.x.push_back(xv);
        t.f.push_back(fv);
    }
    return t;
}

/// Check the table covers {0, 1} and all Gauss nodes; returns the list
/// of missing abscissas (empty = ok).
inline std::vector<double> missing_abscissas(const SampleTable& t,
                                             const QuadratureRule& rule,
                                             double tol = 1e-12) {
    std::vector<double> required = {0.0};
    required.insert(required.end(), rule.nodes.begin(), rule.nodes.end());
    required.push_back(1.0);
    std::vector<double> missing;
    for (double r : required) {
        bool found = false;
        for (double xv : t.x)
            if (std::abs(xv - r) <= tol) {
                found = true;
                break;
            }
        if (!found) missing.push_back(r);
    }
    return missing;
}

/// FuncSpec over a sample table: evaluation is only defined at the
/// tabulated abscissas, which is all the discrete operators need.
inline FuncSpec func_from_samples(const SampleTable& t) {
    FuncSpec f;
    f.eval = [t](double x) { return t.value_at(x); };
    f.f_at_0 = t.value_at(0.0);
    f.f_at_1 = t.value_at(1.0);
    return f;
}

/// CSV emission: header row, then full-precision rows.
inline void write_csv(std::ostream& out, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns) {
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << "\n";
    if (columns.empty()) return;
    const std::size_t rows = columns[0].size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << (c ? "," : "") << format_g17(columns[c][r]);
        out << "\n";
    }
}

}  // namespace altapprox

#endif
