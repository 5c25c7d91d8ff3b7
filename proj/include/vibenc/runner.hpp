#ifndef VIBENC_RUNNER_HPP
#define VIBENC_RUNNER_HPP

// Configuration-driven front end.  A RunConfig captures everything a CLI
// invocation specifies; it round-trips through JSON without loss, and
// running the same configuration twice yields byte-identical output.  All
// validation failures surface as config_error (exit code 1) and numeric
// breakdowns as numeric_error (exit code 2).

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vibenc/core.hpp"
#include "vibenc/encoding.hpp"
#include "vibenc/io.hpp"
#include "vibenc/ladder.hpp"
#include "vibenc/models.hpp"
#include "vibenc/pauli.hpp"
#include "vibenc/spectral.hpp"

namespace vibenc {

struct RunConfig {
    std::string subcommand;        // encode | spectrum | sweep | norm | weights | census
    std::string model;             // h0 | dwell-left | dwell-center | custom ("" = default)
    std::string poly_path;         // custom model: path to an xp-polynomial JSON file
    double ell = 4.0;              // well separation parameter
    double omega_cm = constants::default_omega_cm;
    std::string M_spec;            // "8" or "a:b" or "a:b:step" ("" = unset)
    int K = 0;                     // qubit count (0 = unset)
    std::string ordering = "normal";    // normal | unordered
    std::string encoding = "binary";    // binary | unary
    std::string origin;            // left | barrier ("" = unset)
    std::string unit = "cm-1";     // cm-1 | dimensionless
    std::string out;               // output file ("" = stdout)
    std::string format;            // csv | json | text ("" = subcommand default)
    int precision = 4;             // decimals for fixed-point table output
};

inline nlohmann::json run_config_to_json(const RunConfig& c) {
    return nlohmann::json{{"subcommand", c.subcommand},
                          {"model", c.model},
                          {"poly_path", c.poly_path},
                          {"ell", c.ell},
                          {"omega_cm", c.omega_cm},
                          {"M", c.M_spec},
                          {"K", c.K},
                          {"ordering", c.ordering},
                          {"encoding", c.encoding},
                          {"origin", c.origin},
                          {"unit", c.unit},
                          {"out", c.out},
                          {"format", c.format},
                          {"precision", c.precision}};
}

inline RunConfig run_config_from_json(const nlohmann::json& j) {
    RunConfig c;
    try {
        detail::require(j.is_object(), "run configuration must be a JSON object");
        c.subcommand = j.value("subcommand", c.subcommand);
        c.model = j.value("model", c.model);
        c.poly_path = j.value("poly_path", c.poly_path);
        c.ell = j.value("ell", c.ell);
        c.omega_cm = j.value("omega_cm", c.omega_cm);
        c.M_spec = j.value("M", c.M_spec);
        c.K = j.value("K", c.K);
        c.ordering = j.value("ordering", c.ordering);
        c.encoding = j.value("encoding", c.encoding);
        c.origin = j.value("origin", c.origin);
        c.unit = j.value("unit", c.unit);
        c.out = j.value("out", c.out);
        c.format = j.value("format", c.format);
        c.precision = j.value("precision", c.precision);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(detail::cat("bad run configuration: ", e.what()));
    }
    return c;
}

namespace detail {

inline bool is_power_of_two(int v) { return v >= 1 && (v & (v - 1)) == 0; }

inline int parse_positive_int(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        require(used == s.size() && v >= 1, "");
        return v;
    } catch (...) {
        throw config_error(cat("bad ", what, ": '", s, "' (need a positive integer)"));
    }
}

// "8" -> {8};  "2:128" -> {2,4,...,128};  "2:128:4" -> {2,6,...,126}.
inline std::vector<int> parse_M_values(const std::string& spec_str, int default_step = 2) {
    require(!spec_str.empty(), "basis size is required (--M or --K)");
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : spec_str) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    require(parts.size() <= 3, cat("bad basis range '", spec_str, "' (use a, a:b, or a:b:step)"));
    if (parts.size() == 1) return {parse_positive_int(parts[0], "basis size")};
    int a = parse_positive_int(parts[0], "range start");
    int b = parse_positive_int(parts[1], "range end");
    int step = parts.size() == 3 ? parse_positive_int(parts[2], "range step") : default_step;
    require(b >= a, cat("bad basis range '", spec_str, "': end below start"));
    std::vector<int> out;
    for (long long v = a; v <= b; v += step) out.push_back(int(v));
    return out;
}

inline Ordering parse_ordering(const std::string& s) {
    if (s == "normal") return Ordering::Normal;
    if (s == "unordered") return Ordering::Unordered;
    throw config_error(cat("unknown ordering '", s, "' (expected normal or unordered)"));
}

inline double unit_scale(const RunConfig& cfg) {
    if (cfg.unit == "cm-1") return cfg.omega_cm;
    if (cfg.unit == "dimensionless") return 1.0;
    throw config_error(cat("unknown unit '", cfg.unit, "' (expected cm-1 or dimensionless)"));
}

inline std::string resolve_format(const RunConfig& cfg, const char* default_fmt) {
    std::string f = cfg.format.empty() ? default_fmt : cfg.format;
    require(f == "csv" || f == "json" || f == "text",
            cat("unknown format '", f, "' (expected csv, json, or text)"));
    return f;
}

inline PresetModel resolve_preset(const RunConfig& cfg) {
    std::string name = cfg.model;
    if (!cfg.origin.empty()) {
        require(cfg.origin == "left" || cfg.origin == "barrier",
                cat("unknown origin '", cfg.origin, "' (expected left or barrier)"));
        std::string from_origin = cfg.origin == "left" ? "dwell-left" : "dwell-center";
        if (name.empty())
            name = from_origin;
        else
            require(name == from_origin, cat("--origin ", cfg.origin,
                                             " names the ", from_origin,
                                             " expansion, which conflicts with --model ", name));
    }
    if (name.empty()) name = "h0";
    PresetModel m;
    m.kind = parse_preset_kind(name);
    m.ell = cfg.ell;
    m.omega_cm = unit_scale(cfg);
    require(std::isfinite(cfg.omega_cm) && cfg.omega_cm > 0.0,
            "energy quantum must be positive");
    if (m.kind == PresetKind::Custom) {
        require(!cfg.poly_path.empty(), "custom model needs --poly <json file>");
        m.custom = xp_poly_from_json(nlohmann::json::parse(read_file(cfg.poly_path), nullptr,
                                                           /*allow_exceptions=*/true));
    }
    return m;
}

inline int resolve_single_M(const RunConfig& cfg) {
    if (!cfg.M_spec.empty()) {
        std::vector<int> v = parse_M_values(cfg.M_spec);
        require(v.size() == 1,
                cat("subcommand '", cfg.subcommand, "' takes a single basis size, not a range"));
        return v[0];
    }
    if (cfg.K > 0) {
        require(cfg.K <= 16, "K out of range (1..16)");
        return 1 << cfg.K;
    }
    throw config_error("basis size is required (--M or --K)");
}

}  // namespace detail

// Produce the output body for a configuration.  Warnings (such as basis-size
// rounding) go to `warn`; they never contaminate the output stream, so the
// byte-identical rerun property holds for the data itself.
inline std::string run_to_string(const RunConfig& cfg, std::ostream& warn) {
    const std::string& sub = cfg.subcommand;
    detail::require(sub == "encode" || sub == "spectrum" || sub == "sweep" || sub == "norm" ||
                        sub == "weights" || sub == "census",
                    detail::cat("unknown subcommand '", sub,
                                "' (expected encode, spectrum, sweep, norm, weights, or census)"));
    detail::require(cfg.precision >= 0 && cfg.precision <= 17, "precision out of range (0..17)");

    // --- census needs no model ------------------------------------------
    if (sub == "census") {
        detail::require(cfg.K >= 1, "census needs --K >= 1");
        detail::require(cfg.K <= 30, "census: K out of range (1..30)");
        FlipPatternCensus c = flip_pattern_census(cfg.K);
        std::string fmt = detail::resolve_format(cfg, "text");
        if (fmt == "json") {
            nlohmann::json groups = nlohmann::json::array();
            for (const auto& g : c.groups)
                groups.push_back({{"trailing_ones", g.trailing_ones},
                                  {"projector_count", g.projector_count},
                                  {"string_budget", g.string_budget}});
            nlohmann::json j{{"qubits", c.qubits},
                             {"groups", std::move(groups)},
                             {"total_projectors", c.total_projectors},
                             {"naive_strings", c.naive_strings},
                             {"unique_budget", c.unique_budget},
                             {"redundancy", c.redundancy}};
            return j.dump(2) + "\n";
        }
        if (fmt == "csv") {
            std::ostringstream out;
            out << "trailing_ones,projector_count,string_budget\n";
            for (const auto& g : c.groups)
                out << g.trailing_ones << ',' << g.projector_count << ',' << g.string_budget
                    << '\n';
            return out.str();
        }
        std::ostringstream out;
        out << "qubits " << c.qubits << "\n";
        for (const auto& g : c.groups)
            out << "pattern t=" << g.trailing_ones << ": projectors " << g.projector_count
                << ", string budget " << g.string_budget << "\n";
        out << "total projectors " << c.total_projectors << "\n";
        out << "pattern-blind strings " << c.naive_strings << "\n";
        out << "grouped string budget " << c.unique_budget << "\n";
        out << "redundancy eliminated " << c.redundancy << "\n";
        return out.str();
    }

    PresetModel preset = detail::resolve_preset(cfg);
    ModelSpec model = make_model(preset);
    Ordering ordering = detail::parse_ordering(cfg.ordering);
    const double scale = detail::unit_scale(cfg);
    detail::require(cfg.encoding == "binary" || cfg.encoding == "unary" ||
                        cfg.encoding == "none",
                    detail::cat("unknown encoding '", cfg.encoding,
                                "' (expected binary, unary, or none)"));

    if (sub == "encode") {
        detail::require(cfg.encoding != "none",
                        "encode requires an encoding; choose binary or unary");
        LadderPoly expansion = ladder_from_xp(model.xp_poly);
        if (ordering == Ordering::Normal) expansion = normal_order(expansion);
        Encoding enc;
        if (cfg.encoding == "unary") {
            int M = detail::resolve_single_M(cfg);
            enc = Encoding::unary(M);
        } else if (cfg.encoding == "binary") {
            int K = cfg.K;
            if (K <= 0) {
                int M = detail::resolve_single_M(cfg);
                K = 0;
                while ((1 << K) < M) ++K;
                if ((1 << K) != M)
                    warn << "warning: binary encoding works on full qubit registers; "
                         << "rounding M=" << M << " up to " << (1 << K) << " states (K=" << K
                         << ")\n";
            }
            detail::require(K <= 10, "encode supports K <= 10");
            enc = Encoding::binary(K);
        }
        PauliSum h = encode_hamiltonian(expansion, enc);
        std::string fmt = detail::resolve_format(cfg, "text");
        if (fmt == "json") {
            nlohmann::json j{{"model", to_string(preset.kind)},
                             {"ordering", to_string(ordering)},
                             {"encoding", cfg.encoding},
                             {"qubits", enc.qubits()},
                             {"states", enc.states()},
                             {"unit", cfg.unit},
                             {"one_norm", h.one_norm() * scale},
                             {"terms", pauli_to_json(h, scale)}};
            return j.dump(2) + "\n";
        }
        if (fmt == "csv") {
            std::ostringstream out;
            out << "coeff_re,coeff_im,letters\n";
            for (const auto& [str, coeff] : h.terms())
                out << detail::general(coeff.real() * scale, 10) << ','
                    << detail::general(coeff.imag() * scale, 10) << ',' << str.letters() << '\n';
            return out.str();
        }
        return pauli_to_text(h, scale, 10);
    }

    if (sub == "spectrum" || sub == "weights") {
        int M = detail::resolve_single_M(cfg);
        detail::require(M >= 1 && M <= 2048, "basis size out of range (1..2048)");
        SpectrumReport rep = spectrum(model, M, ordering, /*with_weights=*/sub == "weights");
        std::string fmt = detail::resolve_format(cfg, sub == "weights" ? "csv" : "text");
        if (sub == "weights") {
            int keep = std::min(5, M);
            if (fmt == "json") {
                nlohmann::json rows = nlohmann::json::array();
                for (int n = 0; n < keep; ++n) rows.push_back((*rep.weights)[std::size_t(n)]);
                nlohmann::json j{{"model", to_string(preset.kind)},
                                 {"M", M},
                                 {"ordering", to_string(ordering)},
                                 {"states", keep},
                                 {"weights", std::move(rows)}};
                return j.dump(2) + "\n";
            }
            return weights_to_csv(*rep.weights, keep);  // csv and text coincide
        }
        if (fmt == "json") {
            nlohmann::json j{{"model", to_string(preset.kind)},
                             {"M", M},
                             {"ordering", to_string(ordering)},
                             {"origin", to_string(rep.origin)},
                             {"unit", cfg.unit},
                             {"energies", rep.energies_cm},
                             {"splitting01", rep.splitting01_cm}};
            return j.dump(2) + "\n";
        }
        if (fmt == "csv") {
            std::ostringstream out;
            out << "n,E\n";
            for (std::size_t n = 0; n < rep.energies_cm.size(); ++n)
                out << n << ',' << detail::fixed(rep.energies_cm[n], cfg.precision) << '\n';
            return out.str();
        }
        std::ostringstream out;
        out << "# model=" << to_string(preset.kind) << " M=" << M
            << " ordering=" << to_string(ordering) << " unit=" << cfg.unit << "\n";
        for (std::size_t n = 0; n < rep.energies_cm.size(); ++n)
            out << n << ' ' << detail::fixed(rep.energies_cm[n], cfg.precision) << '\n';
        out << "splitting01 " << detail::fixed(rep.splitting01_cm, cfg.precision) << '\n';
        return out.str();
    }

    if (sub == "sweep") {
        detail::require(!cfg.M_spec.empty(), "sweep needs --M a:b[:step]");
        std::vector<int> Ms = detail::parse_M_values(cfg.M_spec);
        detail::require(Ms.back() <= 2048, "basis size out of range (1..2048)");
        SweepTable table = convergence_sweep(model, ordering, Ms);
        std::string fmt = detail::resolve_format(cfg, "csv");
        if (fmt == "json") {
            nlohmann::json j = sweep_to_json(table);
            j["model"] = to_string(preset.kind);
            j["unit"] = cfg.unit;
            return j.dump(2) + "\n";
        }
        return sweep_to_csv(table, cfg.precision);  // csv and text coincide
    }

    // --- norm: 1-norm scaling over doubling basis sizes -------------------
    detail::require(cfg.encoding == "binary",
                    "norm: the scaling fit is defined for the binary encoding");
    std::string range = cfg.M_spec.empty() ? "4:64" : cfg.M_spec;
    std::vector<std::string> parts;
    {
        std::string cur;
        for (char ch : range) {
            if (ch == ':') {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        parts.push_back(cur);
    }
    detail::require(parts.size() == 2, "norm needs --M a:b with powers of two");
    int a = detail::parse_positive_int(parts[0], "range start");
    int b = detail::parse_positive_int(parts[1], "range end");
    detail::require(detail::is_power_of_two(a) && detail::is_power_of_two(b) && a >= 2 && b >= a,
                    detail::cat("norm range ", range, " must run between powers of two"));
    detail::require(b <= 1024, "norm: basis size out of range (2..1024)");
    std::vector<int> Ms;
    for (int v = a; v <= b; v *= 2) Ms.push_back(v);
    NormScalingReport rep = norm_scaling_report(model, Encoding::Kind::Binary, Ms);
    std::string fmt = detail::resolve_format(cfg, "text");
    if (fmt == "json") {
        nlohmann::json points = nlohmann::json::array();
        for (const auto& [M, lambda] : rep.points)
            points.push_back({{"M", M}, {"lambda", lambda * scale}});
        nlohmann::json j{{"model", to_string(preset.kind)},
                         {"unit", cfg.unit},
                         {"points", std::move(points)},
                         {"alpha", rep.alpha}};
        return j.dump(2) + "\n";
    }
    if (fmt == "csv") {
        std::ostringstream out;
        out << "M,lambda\n";
        for (const auto& [M, lambda] : rep.points)
            out << M << ',' << detail::general(lambda * scale, 10) << '\n';
        out << "alpha," << detail::general(rep.alpha, 10) << '\n';
        return out.str();
    }
    std::ostringstream out;
    for (const auto& [M, lambda] : rep.points)
        out << M << ' ' << detail::general(lambda * scale, 10) << '\n';
    out << "alpha " << detail::general(rep.alpha, 10) << '\n';
    return out.str();
}

// Execute a configuration end to end: body to --out or `out`, diagnostics to
// `err`.  Returns the process exit code (0 ok, 1 configuration, 2 numeric).
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        std::string body = run_to_string(cfg, err);
        if (!cfg.out.empty())
            write_file(cfg.out, body);
        else
            out << body;
        return 0;
    } catch (const config_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const numeric_error& e) {
        err << "numeric error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace vibenc

#endif  // VIBENC_RUNNER_HPP
