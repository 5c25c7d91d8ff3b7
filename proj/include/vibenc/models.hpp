#ifndef VIBENC_MODELS_HPP
#define VIBENC_MODELS_HPP

// Model presets: the harmonic reference oscillator and the two expansions of
// the quartic double well (about the left minimum and about the barrier
// top), parameterized by the dimensionless well separation.  Coefficients
// are constructed in exact rational arithmetic whenever the length parameter
// admits it, so the coordinate-shift identity connecting the two double-well
// forms can be verified without floating-point slack.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "vibenc/core.hpp"
#include "vibenc/ladder.hpp"
#include "vibenc/rational.hpp"

namespace vibenc {

enum class PresetKind { HarmonicH0, DoubleWellLeft, DoubleWellCenter, Custom };

inline std::string to_string(PresetKind k) {
    switch (k) {
        case PresetKind::HarmonicH0: return "h0";
        case PresetKind::DoubleWellLeft: return "dwell-left";
        case PresetKind::DoubleWellCenter: return "dwell-center";
        default: return "custom";
    }
}

inline PresetKind parse_preset_kind(const std::string& name) {
    if (name == "h0") return PresetKind::HarmonicH0;
    if (name == "dwell-left") return PresetKind::DoubleWellLeft;
    if (name == "dwell-center") return PresetKind::DoubleWellCenter;
    if (name == "custom") return PresetKind::Custom;
    throw config_error(detail::cat("unknown model '", name,
                                   "' (expected h0, dwell-left, dwell-center, or custom)"));
}

struct PresetModel {
    PresetKind kind = PresetKind::HarmonicH0;
    double ell = 4.0;                                // dimensionless well separation / 2
    double omega_cm = constants::default_omega_cm;   // energy quantum in cm^-1
    XPPoly custom;                                   // used only for Custom
};

// Dimensionless barrier height of the double well.
inline double barrier_height_dimensionless(double ell) { return ell * ell / 8.0; }

// Distance between the two minima.
inline double well_separation(double ell) { return 2.0 * ell; }

// ---------------------------------------------------------------------------
// Exact-coefficient form: word -> rational coefficient, words over {'x','p'}.

using RationalXP = std::map<std::string, Rational>;

namespace detail {

inline void rational_add(RationalXP& poly, const std::string& word, const Rational& c) {
    auto it = poly.find(word);
    if (it == poly.end()) {
        if (!c.is_zero()) poly.emplace(word, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) poly.erase(it);
}

}  // namespace detail

inline RationalXP harmonic_rational() {
    RationalXP p;
    detail::rational_add(p, "pp", Rational(1, 2));
    detail::rational_add(p, "xx", Rational(1, 2));
    return p;
}

// Expansion about the left minimum:  p^2/2 + x^2/2 - x^3/(2 l) + x^4/(8 l^2).
inline RationalXP left_well_rational(const Rational& l) {
    detail::require(!l.is_zero() && l.num() > 0, "left_well_rational: need l > 0");
    RationalXP p;
    detail::rational_add(p, "pp", Rational(1, 2));
    detail::rational_add(p, "xx", Rational(1, 2));
    detail::rational_add(p, "xxx", Rational(-1, 2) / l);
    detail::rational_add(p, "xxxx", Rational(1, 8) / (l * l));
    return p;
}

// Expansion about the barrier top:  p^2/2 + l^2/8 - x^2/4 + x^4/(8 l^2).
inline RationalXP center_well_rational(const Rational& l) {
    detail::require(!l.is_zero() && l.num() > 0, "center_well_rational: need l > 0");
    RationalXP p;
    detail::rational_add(p, "pp", Rational(1, 2));
    detail::rational_add(p, "", (l * l) / Rational(8));
    detail::rational_add(p, "xx", Rational(-1, 4));
    detail::rational_add(p, "xxxx", Rational(1, 8) / (l * l));
    return p;
}

// Substitute x -> x + shift.  Every 'x' in a word independently becomes
// either 'x' (kept) or the scalar shift (dropped); summing over the 2^n
// choices is the binomial expansion, exact in rationals.  Positions of 'p'
// are untouched and relative symbol order is preserved.
inline RationalXP shift_in_x(const RationalXP& poly, const Rational& shift) {
    RationalXP out;
    for (const auto& [word, coeff] : poly) {
        std::vector<int> xpos;
        for (std::size_t i = 0; i < word.size(); ++i)
            if (word[i] == 'x') xpos.push_back(static_cast<int>(i));
        const int nx = static_cast<int>(xpos.size());
        detail::require(nx <= 20, "shift_in_x: word has too many x factors");
        for (int mask = 0; mask < (1 << nx); ++mask) {
            Rational c = coeff;
            std::vector<bool> dropped(word.size(), false);
            for (int j = 0; j < nx; ++j) {
                if (mask & (1 << j)) {
                    dropped[std::size_t(xpos[std::size_t(j)])] = true;
                    c = c * shift;
                }
            }
            std::string w;
            for (std::size_t i = 0; i < word.size(); ++i)
                if (!dropped[i]) w += word[i];
            detail::rational_add(out, w, c);
        }
    }
    return out;
}

inline bool rational_xp_equal(const RationalXP& a, const RationalXP& b) {
    RationalXP diff = a;
    for (const auto& [word, coeff] : b) detail::rational_add(diff, word, -coeff);
    return diff.empty();
}

// Shifting the left-minimum expansion by +l must reproduce the barrier-top
// expansion exactly — the two presets are one polynomial in two coordinate
// frames.  Checked term by term in rational arithmetic.
inline bool preset_shift_identity_holds(double ell) {
    Rational l = Rational::from_double_exact(ell);
    detail::require(l.num() > 0, "preset_shift_identity_holds: need ell > 0");
    RationalXP shifted = shift_in_x(left_well_rational(l), l);
    return rational_xp_equal(shifted, center_well_rational(l));
}

// ---------------------------------------------------------------------------
// Preset -> polynomial / model

namespace detail {

inline XPPoly xp_from_rational(const RationalXP& r) {
    XPPoly out;
    for (const auto& [word, coeff] : r) out.add_term(coeff.to_double(), word);
    out.collect();
    return out;
}

}  // namespace detail

inline XPPoly build_preset(const PresetModel& m) {
    if (m.kind == PresetKind::Custom) {
        detail::require(!m.custom.terms().empty(),
                        "build_preset: custom model requires a polynomial");
        return m.custom;
    }
    if (m.kind == PresetKind::HarmonicH0) return detail::xp_from_rational(harmonic_rational());
    detail::require(std::isfinite(m.ell) && m.ell > 0.0,
                    "build_preset: double-well presets require a positive length parameter");
    try {
        Rational l = Rational::from_double_exact(m.ell);
        RationalXP r = (m.kind == PresetKind::DoubleWellLeft) ? left_well_rational(l)
                                                              : center_well_rational(l);
        return detail::xp_from_rational(r);
    } catch (const config_error&) {
        // The exact rational form of this length parameter overflows 64 bits;
        // fall back to plain floating-point coefficients.
        const double l = m.ell;
        XPPoly out;
        out.add_term(0.5, "pp");
        if (m.kind == PresetKind::DoubleWellLeft) {
            out.add_term(0.5, "xx");
            out.add_term(-0.5 / l, "xxx");
            out.add_term(0.125 / (l * l), "xxxx");
        } else {
            out.add_term(barrier_height_dimensionless(l), "");
            out.add_term(-0.25, "xx");
            out.add_term(0.125 / (l * l), "xxxx");
        }
        out.collect();
        return out;
    }
}

inline ModelSpec make_model(const PresetModel& m) {
    detail::require(std::isfinite(m.omega_cm) && m.omega_cm > 0.0,
                    "make_model: energy scale must be positive");
    ModelSpec spec;
    spec.xp_poly = build_preset(m);
    spec.length_param = m.ell;
    spec.energy_scale_cm = m.omega_cm;
    switch (m.kind) {
        case PresetKind::DoubleWellLeft: spec.origin = OriginLabel::Left; break;
        case PresetKind::DoubleWellCenter: spec.origin = OriginLabel::Barrier; break;
        default: spec.origin = OriginLabel::Custom; break;
    }
    spec.validate();
    return spec;
}

}  // namespace vibenc

#endif  // VIBENC_MODELS_HPP
