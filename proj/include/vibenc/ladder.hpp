#ifndef VIBENC_LADDER_HPP
#define VIBENC_LADDER_HPP

// Symbolic algebra of bosonic ladder-operator polynomials: construction from
// position/momentum polynomials, Wick normal ordering by commutator
// rewriting, Hermitian conjugation, and vacuum expectation values.
//
// Words are stored as explicit symbol sequences rather than exponent pairs,
// so deliberately non-normal-ordered forms survive verbatim; that is the
// whole point of the ordered-versus-unordered comparison downstream.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vibenc/core.hpp"

namespace vibenc {

// ---------------------------------------------------------------------------
// Ladder words

enum class LadderOp : std::uint8_t {
    Annihilate,  // b
    Create,      // b†
};

// A word is an ordered product of ladder symbols, leftmost factor first.
using LadderWord = std::vector<LadderOp>;

inline int degree(const LadderWord& w) { return static_cast<int>(w.size()); }

// Serialized form used as map key and in JSON: "b" for the annihilator,
// "b+" for the creator, concatenated left to right (e.g. "b+b+b").
inline std::string word_to_string(const LadderWord& w) {
    std::string s;
    for (LadderOp op : w) s += (op == LadderOp::Create) ? "b+" : "b";
    return s;
}

inline LadderWord word_from_string(const std::string& s) {
    LadderWord w;
    for (std::size_t i = 0; i < s.size(); ++i) {
        detail::require(s[i] == 'b', detail::cat("bad ladder word '", s, "'"));
        if (i + 1 < s.size() && s[i + 1] == '+') {
            w.push_back(LadderOp::Create);
            ++i;
        } else {
            w.push_back(LadderOp::Annihilate);
        }
    }
    return w;
}

// Number of (annihilator, creator) pairs that bubble sort would still have to
// swap to push every creator left of every annihilator.  Zero exactly for
// normal-ordered words; each bb† -> b†b rewrite lowers it by one, which is
// the termination argument for normal_order below.
inline long long inversion_count(const LadderWord& w) {
    long long annihilators_seen = 0, inversions = 0;
    for (LadderOp op : w) {
        if (op == LadderOp::Annihilate) {
            ++annihilators_seen;
        } else {
            inversions += annihilators_seen;
        }
    }
    return inversions;
}

inline bool is_normal_ordered_word(const LadderWord& w) {
    return inversion_count(w) == 0;
}

// ---------------------------------------------------------------------------
// Position/momentum polynomials (user-facing model input)

struct XPTerm {
    double coeff = 0.0;
    std::string word;  // characters over {'x','p'}, leftmost factor first
};

class XPPoly {
  public:
    XPPoly() = default;
    explicit XPPoly(std::vector<XPTerm> terms, int max_degree = kDefaultMaxDegree)
        : max_degree_(max_degree) {
        for (const auto& t : terms) add_term(t.coeff, t.word);
        collect();
    }

    static constexpr int kDefaultMaxDegree = 8;

    void add_term(double coeff, const std::string& word) {
        detail::require(std::isfinite(coeff), "XPPoly: non-finite coefficient");
        for (char c : word)
            detail::require(c == 'x' || c == 'p',
                            detail::cat("XPPoly: bad symbol '", c, "' in word"));
        detail::require(static_cast<int>(word.size()) <= max_degree_,
                        detail::cat("XPPoly: degree ", word.size(),
                                    " exceeds configured maximum ", max_degree_));
        terms_.push_back({coeff, word});
    }

    // Merge identical words and drop exact zeros.
    void collect() {
        std::map<std::string, double> acc;
        for (const auto& t : terms_) acc[t.word] += t.coeff;
        terms_.clear();
        for (const auto& [w, c] : acc)
            if (c != 0.0) terms_.push_back({c, w});
    }

    const std::vector<XPTerm>& terms() const { return terms_; }
    int max_degree() const { return max_degree_; }

    int degree() const {
        int d = 0;
        for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.word.size()));
        return d;
    }

    // Self-adjointness of x and p makes an XPPoly Hermitian exactly when each
    // word carries the same coefficient as its reverse.
    bool is_hermitian() const {
        std::map<std::string, double> acc;
        for (const auto& t : terms_) acc[t.word] += t.coeff;
        for (const auto& [w, c] : acc) {
            std::string r(w.rbegin(), w.rend());
            auto it = acc.find(r);
            double cr = (it == acc.end()) ? 0.0 : it->second;
            if (std::abs(c - cr) > 1e-14 * std::max(1.0, std::abs(c))) return false;
        }
        return true;
    }

  private:
    std::vector<XPTerm> terms_;
    int max_degree_ = kDefaultMaxDegree;
};

// ---------------------------------------------------------------------------
// Ladder polynomials

struct LadderTerm {
    complex_t coeff{0.0, 0.0};
    LadderWord word;
};

class LadderPoly {
  public:
    LadderPoly() = default;
    explicit LadderPoly(std::vector<LadderTerm> terms) : terms_(std::move(terms)) {
        collect();
    }

    void add_term(complex_t coeff, LadderWord word) {
        terms_.push_back({coeff, std::move(word)});
    }

    // Merge identical words; drop coefficients below the collection tolerance.
    void collect(double tol = constants::ladder_collect_tol) {
        std::map<std::string, std::pair<complex_t, LadderWord>> acc;
        for (auto& t : terms_) {
            std::string key = word_to_string(t.word);
            auto it = acc.find(key);
            if (it == acc.end())
                acc.emplace(key, std::make_pair(t.coeff, std::move(t.word)));
            else
                it->second.first += t.coeff;
        }
        terms_.clear();
        for (auto& [key, cw] : acc)
            if (std::abs(cw.first) >= tol) terms_.push_back({cw.first, std::move(cw.second)});
    }

    const std::vector<LadderTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    complex_t coefficient(const LadderWord& w) const {
        std::string key = word_to_string(w);
        for (const auto& t : terms_)
            if (word_to_string(t.word) == key) return t.coeff;
        return {0.0, 0.0};
    }

    int degree() const {
        int d = 0;
        for (const auto& t : terms_) d = std::max(d, vibenc::degree(t.word));
        return d;
    }

    bool is_normal_ordered() const {
        return std::all_of(terms_.begin(), terms_.end(),
                           [](const LadderTerm& t) { return is_normal_ordered_word(t.word); });
    }

    double max_imag() const {
        double m = 0.0;
        for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff.imag()));
        return m;
    }

  private:
    std::vector<LadderTerm> terms_;
};

// Coefficients conjugated, words reversed with b <-> b†.  Involution.
inline LadderPoly hermitian_conjugate(const LadderPoly& p) {
    LadderPoly out;
    for (const auto& t : p.terms()) {
        LadderWord w(t.word.rbegin(), t.word.rend());
        for (LadderOp& op : w)
            op = (op == LadderOp::Create) ? LadderOp::Annihilate : LadderOp::Create;
        out.add_term(std::conj(t.coeff), std::move(w));
    }
    out.collect();
    return out;
}

inline bool is_hermitian(const LadderPoly& p, double tol = 1e-12) {
    LadderPoly diff = hermitian_conjugate(p);
    for (const auto& t : p.terms()) diff.add_term(-t.coeff, t.word);
    diff.collect(0.0);
    for (const auto& t : diff.terms())
        if (std::abs(t.coeff) > tol) return false;
    return true;
}

// ---------------------------------------------------------------------------
// x/p -> ladder substitution

// Replaces x by (b + b†)/√2 and p by (b − b†)/(i√2) = i(b† − b)/√2, expanding
// products distributively while PRESERVING factor order (no commutation is
// applied here).  Hermitian inputs must map to conjugation-symmetric
// expansions (coefficient of each word equal to the conjugate of its reversed
// conjugate word); that is asserted.  Words with an odd number of p factors
// legitimately carry imaginary coefficients.
inline LadderPoly ladder_from_xp(const XPPoly& poly) {
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    struct Atom {
        complex_t c;
        LadderOp op;
    };
    LadderPoly out;
    for (const auto& term : poly.terms()) {
        // Expand the word one symbol at a time: partial holds (coeff, word)
        // pairs for the prefix processed so far.
        std::vector<std::pair<complex_t, LadderWord>> partial{{complex_t{term.coeff, 0.0}, {}}};
        for (char sym : term.word) {
            Atom a0, a1;
            if (sym == 'x') {
                a0 = {complex_t{inv_sqrt2, 0.0}, LadderOp::Annihilate};
                a1 = {complex_t{inv_sqrt2, 0.0}, LadderOp::Create};
            } else {  // 'p'
                a0 = {complex_t{0.0, -inv_sqrt2}, LadderOp::Annihilate};
                a1 = {complex_t{0.0, inv_sqrt2}, LadderOp::Create};
            }
            std::vector<std::pair<complex_t, LadderWord>> next;
            next.reserve(partial.size() * 2);
            for (const auto& [c, w] : partial) {
                for (const Atom& a : {a0, a1}) {
                    LadderWord nw = w;
                    nw.push_back(a.op);
                    next.emplace_back(c * a.c, std::move(nw));
                }
            }
            partial = std::move(next);
        }
        for (auto& [c, w] : partial) out.add_term(c, std::move(w));
    }
    out.collect();
    if (poly.is_hermitian()) {
        detail::check_numeric(
            is_hermitian(out),
            "ladder_from_xp: Hermitian input produced an asymmetric expansion");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Wick normal ordering

namespace detail {

// One rewrite step: find the leftmost (b, b†) adjacency.  Returns false if the
// word is already normal ordered; otherwise emits the swapped word (one fewer
// inversion) and the contracted word (two symbols shorter).
inline bool rewrite_once(const LadderWord& w, LadderWord& swapped, LadderWord& contracted) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] == LadderOp::Annihilate && w[i + 1] == LadderOp::Create) {
            swapped = w;
            std::swap(swapped[i], swapped[i + 1]);
            contracted.clear();
            contracted.insert(contracted.end(), w.begin(), w.begin() + i);
            contracted.insert(contracted.end(), w.begin() + i + 2, w.end());
            return true;
        }
    }
    return false;
}

}  // namespace detail

// Rewrites bb† -> b†b + 1 to a fixed point, so every resulting word has all
// creators before all annihilators.  Equal to the input as an operator on the
// untruncated space.  Terminates because each swap strictly lowers the
// inversion count and each contraction shortens the word.
inline LadderPoly normal_order(const LadderPoly& poly) {
    std::map<std::string, std::pair<complex_t, LadderWord>> done;
    std::vector<LadderTerm> work(poly.terms().begin(), poly.terms().end());
    while (!work.empty()) {
        LadderTerm t = std::move(work.back());
        work.pop_back();
        LadderWord swapped, contracted;
        if (!detail::rewrite_once(t.word, swapped, contracted)) {
            auto key = word_to_string(t.word);
            auto it = done.find(key);
            if (it == done.end())
                done.emplace(key, std::make_pair(t.coeff, std::move(t.word)));
            else
                it->second.first += t.coeff;
            continue;
        }
        work.push_back({t.coeff, std::move(swapped)});
        work.push_back({t.coeff, std::move(contracted)});
    }
    LadderPoly out;
    for (auto& [key, cw] : done) out.add_term(cw.first, std::move(cw.second));
    out.collect();
    return out;
}

// Identity-word coefficient of the normal-ordered form; equals <0|poly|0>.
inline double vacuum_expectation(const LadderPoly& poly) {
    LadderPoly no = normal_order(poly);
    complex_t c = no.coefficient({});
    return c.real();
}

// ---------------------------------------------------------------------------
// Model description shared by the engine layers

enum class OriginLabel { Left, Barrier, Custom };

inline std::string to_string(OriginLabel o) {
    switch (o) {
        case OriginLabel::Left: return "left";
        case OriginLabel::Barrier: return "barrier";
        default: return "custom";
    }
}

struct ModelSpec {
    XPPoly xp_poly;
    double length_param = 4.0;   // dimensionless well-separation parameter
    double energy_scale_cm = constants::default_omega_cm;  // cm^-1 per unit
    OriginLabel origin = OriginLabel::Custom;

    void validate() const {
        detail::require(length_param > 0.0, "ModelSpec: length parameter must be positive");
        detail::require(energy_scale_cm > 0.0, "ModelSpec: energy scale must be positive");
    }
};

}  // namespace vibenc

#endif  // VIBENC_LADDER_HPP
