#ifndef VIBENC_IO_HPP
#define VIBENC_IO_HPP

// Serialization: JSON round-trips for the polynomial types, the plain-text
// Pauli listing format, CSV emitters for sweeps and eigenvector weights, and
// full-precision matrix dumps.  All emitters are deterministic — fixed term
// order, fixed formatting — so byte-identical reruns are a testable
// property, and all parsers reject malformed input with config_error.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vibenc/core.hpp"
#include "vibenc/dense.hpp"
#include "vibenc/ladder.hpp"
#include "vibenc/pauli.hpp"
#include "vibenc/spectral.hpp"

namespace vibenc {

namespace detail {

inline std::string format_double(double v, const char* spec_fmt) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec_fmt, v);
    return std::string(buf);
}

inline std::string fixed(double v, int decimals) {
    char fmt[16];
    std::snprintf(fmt, sizeof(fmt), "%%.%df", decimals);
    return format_double(v, fmt);
}

inline std::string general(double v, int sig = 10) {
    char fmt[16];
    std::snprintf(fmt, sizeof(fmt), "%%.%dg", sig);
    return format_double(v, fmt);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Position/momentum polynomials <-> JSON

inline nlohmann::json xp_poly_to_json(const XPPoly& poly) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : poly.terms()) arr.push_back({{"coeff", t.coeff}, {"word", t.word}});
    return arr;
}

inline XPPoly xp_poly_from_json(const nlohmann::json& j) {
    XPPoly out;
    try {
        detail::require(j.is_array(), "xp polynomial JSON must be an array");
        for (const auto& item : j) {
            detail::require(item.is_object() && item.contains("coeff") && item.contains("word"),
                            "xp polynomial entries need {coeff, word}");
            out.add_term(item.at("coeff").get<double>(), item.at("word").get<std::string>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw config_error(detail::cat("bad xp polynomial JSON: ", e.what()));
    }
    out.collect();
    return out;
}

// ---------------------------------------------------------------------------
// Ladder polynomials <-> JSON

inline nlohmann::json ladder_poly_to_json(const LadderPoly& poly) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : poly.terms())
        arr.push_back({{"coeff_re", t.coeff.real()},
                       {"coeff_im", t.coeff.imag()},
                       {"word", word_to_string(t.word)}});
    return arr;
}

inline LadderPoly ladder_poly_from_json(const nlohmann::json& j) {
    LadderPoly out;
    try {
        detail::require(j.is_array(), "ladder polynomial JSON must be an array");
        for (const auto& item : j) {
            detail::require(item.is_object() && item.contains("coeff_re") &&
                                item.contains("coeff_im") && item.contains("word"),
                            "ladder polynomial entries need {coeff_re, coeff_im, word}");
            complex_t c{item.at("coeff_re").get<double>(), item.at("coeff_im").get<double>()};
            out.add_term(c, word_from_string(item.at("word").get<std::string>()));
        }
    } catch (const nlohmann::json::exception& e) {
        throw config_error(detail::cat("bad ladder polynomial JSON: ", e.what()));
    }
    out.collect(0.0);
    return out;
}

// ---------------------------------------------------------------------------
// Pauli sums: text listing and JSON

// One term per line: "<coeff_re> <coeff_im> <letters>", qubit 1 leftmost.
// The optional scale multiplies every coefficient on the way out (e.g. an
// energy quantum in cm^-1).
inline std::string pauli_to_text(const PauliSum& s, double scale = 1.0, int sig = 10) {
    std::ostringstream out;
    for (const auto& [str, coeff] : s.terms()) {
        out << detail::general(coeff.real() * scale, sig) << ' '
            << detail::general(coeff.imag() * scale, sig) << ' ' << str.letters() << '\n';
    }
    return out.str();
}

inline PauliSum pauli_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    PauliSum out;
    bool first = true;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
        if (trimmed.empty() || trimmed[0] == '#') continue;
        std::istringstream ls(trimmed);
        double re = 0.0, im = 0.0;
        std::string letters;
        if (!(ls >> re >> im >> letters))
            throw config_error(detail::cat("bad Pauli line ", lineno, ": '", line, "'"));
        PauliString p = PauliString::from_letters(letters);
        if (first) {
            out = PauliSum(p.qubits());
            first = false;
        }
        detail::require(p.qubits() == out.qubits(),
                        detail::cat("bad Pauli line ", lineno, ": inconsistent qubit count"));
        out.add_term(p, complex_t{re, im});
    }
    detail::require(!first, "Pauli text contains no terms");
    return out;
}

inline nlohmann::json pauli_to_json(const PauliSum& s, double scale = 1.0) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [str, coeff] : s.terms())
        arr.push_back({{"coeff_re", coeff.real() * scale},
                       {"coeff_im", coeff.imag() * scale},
                       {"letters", str.letters()}});
    return arr;
}

inline PauliSum pauli_from_json(const nlohmann::json& j) {
    try {
        detail::require(j.is_array() && !j.empty(), "Pauli JSON must be a non-empty array");
        PauliSum out;
        bool first = true;
        for (const auto& item : j) {
            PauliString p = PauliString::from_letters(item.at("letters").get<std::string>());
            if (first) {
                out = PauliSum(p.qubits());
                first = false;
            }
            detail::require(p.qubits() == out.qubits(), "Pauli JSON: inconsistent qubit count");
            out.add_term(p, complex_t{item.at("coeff_re").get<double>(),
                                      item.at("coeff_im").get<double>()});
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(detail::cat("bad Pauli JSON: ", e.what()));
    }
}

// ---------------------------------------------------------------------------
// Sweep tables and weights as CSV

// Header is fixed; energy columns beyond the basis size stay empty (a basis
// of size 2 has only two levels).  Decimal separator is always '.'.
inline std::string sweep_to_csv(const SweepTable& table, int decimals = 4) {
    detail::require(decimals >= 0 && decimals <= 17, "sweep_to_csv: bad precision");
    std::ostringstream out;
    out << "M,E0,E1,E2,E3,E4,splitting01\n";
    for (const auto& row : table.rows) {
        out << row.M;
        for (std::size_t i = 0; i < 5; ++i) {
            out << ',';
            if (i < row.energies_cm.size()) out << detail::fixed(row.energies_cm[i], decimals);
        }
        out << ',' << detail::fixed(row.splitting01_cm, decimals) << '\n';
    }
    return out.str();
}

inline nlohmann::json sweep_to_json(const SweepTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r;
        r["M"] = row.M;
        r["energies_cm"] = row.energies_cm;
        r["splitting01"] = row.splitting01_cm;
        rows.push_back(std::move(r));
    }
    nlohmann::json j;
    j["ordering"] = to_string(table.ordering);
    j["origin"] = to_string(table.origin);
    j["reference_M"] = table.reference_M;
    j["rows"] = std::move(rows);
    j["monotonicity_violations"] = table.violations;
    return j;
}

// Rows "n,i,w": eigenstate index, basis index, squared component.  Weights
// are printed at full precision — they feed parity checks, not tables.
inline std::string weights_to_csv(const std::vector<std::vector<double>>& w,
                                  int max_states = -1) {
    std::ostringstream out;
    out << "n,i,w\n";
    std::size_t states = w.size();
    if (max_states >= 0) states = std::min<std::size_t>(states, std::size_t(max_states));
    for (std::size_t n = 0; n < states; ++n)
        for (std::size_t i = 0; i < w[n].size(); ++i)
            out << n << ',' << i << ',' << detail::general(w[n][i], 17) << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Matrix dumps (17 significant digits; row-major)

inline std::string matrix_to_text(const DenseOperator& m, char sep = ' ') {
    std::ostringstream out;
    for (int r = 0; r < m.dim(); ++r) {
        for (int c = 0; c < m.dim(); ++c) {
            if (c) out << sep;
            complex_t v = m(r, c);
            out << detail::general(v.real(), 17);
            if (m.max_abs_imag() > 0.0) out << sep << detail::general(v.imag(), 17);
        }
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Files

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    detail::require(bool(f), detail::cat("cannot open '", path, "' for writing"));
    f << content;
    f.flush();
    detail::require(bool(f), detail::cat("write to '", path, "' failed"));
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    detail::require(bool(f), detail::cat("cannot open '", path, "'"));
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

}  // namespace vibenc

#endif  // VIBENC_IO_HPP
