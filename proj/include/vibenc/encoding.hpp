#ifndef VIBENC_ENCODING_HPP
#define VIBENC_ENCODING_HPP

// Boson-to-qubit encodings.
//
// Unary (one-hot): occupation n is the basis state with qubit n+1 set; the
// creator is a sum of M-1 neighbor transitions sigma^-_{r+1} sigma^+_r with
// sqrt(r) weights.  Operator products are only meaningful after projection
// back onto the one-hot subspace, and every check here does exactly that.
//
// Binary (compact): occupation n is the K-bit binary string of n with qubit 1
// as the least significant bit.  The creator is built recursively: the
// transition dyads |i><i-1| for i below the half register keep the top qubit
// at |0>, the single carry transition flips the whole register, and the
// dyads above the half keep the top qubit at |1>.  Expanding the dyads into
// Pauli letters and collecting leaves at most K*2^K distinct strings,
// because all transitions that flip the same trailing-ones block share one
// bit-flip pattern (see flip_pattern_census).

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vibenc/core.hpp"
#include "vibenc/dense.hpp"
#include "vibenc/ladder.hpp"
#include "vibenc/pauli.hpp"

namespace vibenc {

struct Encoding {
    enum class Kind { Unary, Binary };
    Kind kind = Kind::Binary;
    int param = 1;  // Unary: M basis states; Binary: K qubits

    static Encoding unary(int M) {
        detail::require(M >= 1, "Encoding: unary size must be at least 1");
        return {Kind::Unary, M};
    }
    static Encoding binary(int K) {
        detail::require(K >= 1, "Encoding: binary qubit count must be at least 1");
        return {Kind::Binary, K};
    }

    int qubits() const { return param; }
    int states() const { return kind == Kind::Unary ? param : (1 << param); }
};

namespace detail {

// Per-qubit factor of a transition dyad |i><i-1|.
enum class DyadFactor : std::uint8_t {
    SigmaMinus,  // bit goes 0 -> 1
    SigmaPlus,   // bit goes 1 -> 0
    KeepZero,    // |0><0|
    KeepOne,     // |1><1|
};

// Factor list (index = qubit-1) for |i><i-1| on K qubits, derived directly
// from the two bit patterns.
inline std::vector<DyadFactor> transition_pattern(std::uint32_t to, std::uint32_t from, int K) {
    std::vector<DyadFactor> f(K);
    for (int j = 0; j < K; ++j) {
        bool bt = (to >> j) & 1u, bf = (from >> j) & 1u;
        f[j] = bt ? (bf ? DyadFactor::KeepOne : DyadFactor::SigmaMinus)
                  : (bf ? DyadFactor::SigmaPlus : DyadFactor::KeepZero);
    }
    return f;
}

// Recursive construction of the first-neighbor dyad list {|i><i-1|} for a
// K-qubit register: entries below the carry reuse the (K-1)-qubit list with
// the top qubit held at |0>, the carry flips every qubit, and entries above
// reuse the list with the top qubit held at |1>.
inline std::vector<std::vector<DyadFactor>> neighbor_dyads(int K) {
    require(K >= 1, "neighbor_dyads: qubit count must be at least 1");
    if (K == 1) return {{DyadFactor::SigmaMinus}};
    auto prev = neighbor_dyads(K - 1);
    std::vector<std::vector<DyadFactor>> out;
    out.reserve((std::size_t(1) << K) - 1);
    for (const auto& p : prev) {  // i = 1 .. 2^{K-1}-1
        auto f = p;
        f.push_back(DyadFactor::KeepZero);
        out.push_back(std::move(f));
    }
    {  // carry: |2^{K-1}><2^{K-1}-1| lowers qubits 1..K-1 and raises qubit K
        std::vector<DyadFactor> f(std::size_t(K), DyadFactor::SigmaPlus);
        f[std::size_t(K) - 1] = DyadFactor::SigmaMinus;
        out.push_back(std::move(f));
    }
    for (const auto& p : prev) {  // i = 2^{K-1}+1 .. 2^K-1
        auto f = p;
        f.push_back(DyadFactor::KeepOne);
        out.push_back(std::move(f));
    }
    return out;
}

// Expand a dyad factor list into Pauli strings by multiplying the per-qubit
// two-term sums.
inline PauliSum expand_dyad(const std::vector<DyadFactor>& factors) {
    const int K = static_cast<int>(factors.size());
    PauliSum acc = PauliSum::identity(K);
    for (int q = 1; q <= K; ++q) {
        PauliSum f(K);
        switch (factors[std::size_t(q) - 1]) {
            case DyadFactor::SigmaMinus: f = PauliSum::sigma_minus(q, K); break;
            case DyadFactor::SigmaPlus: f = PauliSum::sigma_plus(q, K); break;
            case DyadFactor::KeepZero: f = PauliSum::proj_zero(q, K); break;
            case DyadFactor::KeepOne: f = PauliSum::proj_one(q, K); break;
        }
        acc = vibenc::multiply(acc, f);
    }
    return acc;
}

}  // namespace detail

// Creation operator in the unary (one-hot) encoding: sum over r of
// sqrt(r) sigma^-_{r+1} sigma^+_r on M qubits.  Valid on the one-hot
// subspace only.
inline PauliSum unary_creation(int M) {
    detail::require(M >= 2, "unary_creation: needs at least two basis states for a transition");
    PauliSum out(M);
    for (int r = 1; r <= M - 1; ++r) {
        PauliSum t = multiply(PauliSum::sigma_minus(r + 1, M), PauliSum::sigma_plus(r, M));
        t *= complex_t{std::sqrt(double(r)), 0.0};
        out += t;
    }
    out.collect();
    return out;
}

// Projection of a 2^M-dimensional unary-register matrix onto the M one-hot
// states (occupation n at register index 1<<n).  The oracle used by every
// unary-encoding check.
inline DenseOperator one_hot_restriction(const DenseOperator& big, int M) {
    detail::require(big.dim() == (1 << M), "one_hot_restriction: dimension mismatch");
    DenseOperator out(M);
    for (int r = 0; r < M; ++r)
        for (int c = 0; c < M; ++c) out(r, c) = big(1 << r, 1 << c);
    return out;
}

// Creation operator in the binary encoding: sum of sqrt(i) |i><i-1| dyads,
// expanded to Pauli strings and collected.  to_matrix of the result equals
// ladder_matrix(2^K).
inline PauliSum binary_creation(int K) {
    detail::require(K >= 1, "binary_creation: qubit count must be at least 1");
    auto dyads = detail::neighbor_dyads(K);
    PauliSum out(K);
    for (std::size_t i = 1; i < dyads.size() + 1; ++i) {
        PauliSum d = detail::expand_dyad(dyads[i - 1]);
        d *= complex_t{std::sqrt(double(i)), 0.0};
        out += d;
    }
    out.collect();
    return out;
}

// Same dyad structure with every weight equal to one: the matrix is a bare
// first-subdiagonal of ones, and its powers walk the register upward without
// any factorial growth; (d†)^{2^K} collapses to the empty sum.
inline PauliSum binary_d_operator(int K) {
    detail::require(K >= 1, "binary_d_operator: qubit count must be at least 1");
    auto dyads = detail::neighbor_dyads(K);
    PauliSum out(K);
    for (const auto& d : dyads) out += detail::expand_dyad(d);
    out.collect();
    return out;
}

// Elementary transition |k><h|.
//
// Binary route 1 (bit patterns): per-qubit dyad factors read straight off the
// two bit strings.  Binary route 2 (ladder): (b†)^k |0><0| (b)^h with each
// power divided by sqrt(step) as it is applied, so the factorial
// normalization never materializes as a large intermediate.  Both routes are
// computed and must agree; the bit-pattern result is returned.
inline PauliSum transition_operator(int k, int h, const Encoding& enc) {
    const int M = enc.states();
    detail::require(k >= 0 && k < M && h >= 0 && h < M,
                    detail::cat("transition_operator: indices (", k, ",", h,
                                ") out of range for ", M, " states"));
    if (enc.kind == Encoding::Kind::Unary) {
        // One-hot dyad: |1_k><1_h| with every other qubit held at |0>.
        const int Q = enc.qubits();
        PauliSum acc = PauliSum::identity(Q);
        for (int q = 1; q <= Q; ++q) {
            PauliSum f(Q);
            if (q == k + 1 && q == h + 1)
                f = PauliSum::proj_one(q, Q);
            else if (q == k + 1)
                f = PauliSum::sigma_minus(q, Q);
            else if (q == h + 1)
                f = PauliSum::sigma_plus(q, Q);
            else
                f = PauliSum::proj_zero(q, Q);
            acc = multiply(acc, f);
        }
        return acc;
    }

    const int K = enc.qubits();
    // Route 1: bit-pattern product.
    PauliSum pattern = detail::expand_dyad(
        detail::transition_pattern(std::uint32_t(k), std::uint32_t(h), K));

    // Route 2: normalized ladder powers around the vacuum projector.
    PauliSum vac = PauliSum::identity(K);
    for (int q = 1; q <= K; ++q) vac = multiply(vac, PauliSum::proj_zero(q, K));
    PauliSum bdag = binary_creation(K);
    PauliSum b = bdag.adjoint();
    PauliSum ladder = vac;
    for (int step = 1; step <= k; ++step) {
        ladder = multiply(bdag, ladder);
        ladder *= complex_t{1.0 / std::sqrt(double(step)), 0.0};
    }
    for (int step = 1; step <= h; ++step) {
        ladder = multiply(ladder, b);
        ladder *= complex_t{1.0 / std::sqrt(double(step)), 0.0};
    }

    double gap = pattern.max_abs_diff(ladder);
    detail::check_numeric(gap <= 1e-10,
                          detail::cat("transition_operator: construction routes disagree by ", gap));
    return pattern;
}

// |k><0| built from the unit-weight register walker: (d†)^k applied to the
// vacuum projector.  No square-root normalization is needed because every
// d† step carries weight one; the structure check multiplies back with the
// adjoint and must recover the vacuum projector.
inline PauliSum a_dagger_binary(int k, int K) {
    const int M = 1 << K;
    detail::require(k >= 0 && k < M,
                    detail::cat("a_dagger_binary: index ", k, " out of range for ", M, " states"));
    PauliSum vac = PauliSum::identity(K);
    for (int q = 1; q <= K; ++q) vac = multiply(vac, PauliSum::proj_zero(q, K));
    PauliSum ddag = binary_d_operator(K);
    PauliSum acc = vac;
    for (int step = 0; step < k; ++step) acc = multiply(ddag, acc);
    // Structure check: a a† = |0><0| exactly (within collection tolerance).
    PauliSum back = multiply(acc.adjoint(), acc);
    double gap = back.max_abs_diff(vac);
    detail::check_numeric(gap <= 1e-10,
                          detail::cat("a_dagger_binary: annihilator check off by ", gap));
    return acc;
}

// Substitute each ladder symbol in each word by the encoding's creation sum
// (or its adjoint), multiply the factors left to right in the Pauli algebra,
// and accumulate with the word coefficients.  For the binary encoding the
// reconstruction equals the truncated-factor assembly at M = 2^K — including
// for non-normal-ordered input, whose boundary artifact the encoding
// reproduces faithfully.
inline PauliSum encode_hamiltonian(const LadderPoly& poly, const Encoding& enc) {
    const int Q = enc.qubits();
    PauliSum creation =
        enc.kind == Encoding::Kind::Binary ? binary_creation(Q) : unary_creation(Q);
    PauliSum annihilation = creation.adjoint();
    PauliSum out(Q);
    for (const auto& term : poly.terms()) {
        PauliSum acc = PauliSum::identity(Q, term.coeff);
        for (LadderOp op : term.word)
            acc = multiply(acc, op == LadderOp::Create ? creation : annihilation);
        out += acc;
    }
    out.collect();
    if (is_hermitian(poly)) {
        double imag = out.max_abs_imag();
        detail::check_numeric(imag < 1e-10,
                              detail::cat("encode_hamiltonian: Hermitian input produced imaginary "
                                          "coefficient residue ", imag));
    }
    return out;
}

// Census of the first-neighbor jump projectors |i><i-1| on K qubits, grouped
// by the length of the trailing block of ones in i-1 (equivalently the number
// of lowered qubits in the carry chain).  Group t covers 2^{K-1-t} jumps, all
// sharing one bit-flip pattern of t+1 flipped qubits, so each group costs at
// most 2^K distinct Pauli strings: K*2^K in total versus (2^K - 1) * 2^K for
// pattern-blind expansion.
struct CensusGroup {
    int trailing_ones = 0;     // pattern id: qubits 1..trailing_ones+1 flip
    int projector_count = 0;   // jumps sharing the pattern
    long long string_budget = 0;  // distinct strings the pattern can produce
};

struct FlipPatternCensus {
    int qubits = 0;
    std::vector<CensusGroup> groups;
    long long total_projectors = 0;  // 2^K - 1
    long long naive_strings = 0;     // (2^K - 1) * 2^K
    long long unique_budget = 0;     // K * 2^K
    long long redundancy = 0;        // naive - budget = M^2 - (K+1) M
};

inline FlipPatternCensus flip_pattern_census(int K) {
    detail::require(K >= 1, "flip_pattern_census: qubit count must be at least 1");
    FlipPatternCensus c;
    c.qubits = K;
    const long long M = 1LL << K;
    for (int t = 0; t < K; ++t) {
        CensusGroup g;
        g.trailing_ones = t;
        g.projector_count = int(1LL << (K - 1 - t));
        g.string_budget = M;
        c.groups.push_back(g);
    }
    c.total_projectors = M - 1;
    c.naive_strings = (M - 1) * M;
    c.unique_budget = K * M;
    c.redundancy = c.naive_strings - c.unique_budget;
    return c;
}

}  // namespace vibenc

#endif  // VIBENC_ENCODING_HPP
