// Truncated-basis matrix assembly: restricted ladder matrices, the two
// assembly modes and their boundary defect, and the independent x/p power
// oracle.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <vibenc/dense.hpp>
#include <vibenc/ladder.hpp>

using namespace vibenc;

namespace {

LadderWord W(std::initializer_list<int> ops) {
    LadderWord w;
    for (int o : ops) w.push_back(o ? LadderOp::Create : LadderOp::Annihilate);
    return w;
}

XPPoly left_well(double ell) {
    XPPoly p;
    p.add_term(0.5, "pp");
    p.add_term(0.5, "xx");
    p.add_term(-0.5 / ell, "xxx");
    p.add_term(0.125 / (ell * ell), "xxxx");
    return p;
}

// A normal-ordered word with c creators followed by a annihilators.
LadderWord ordered_word(int c, int a) {
    LadderWord w;
    for (int i = 0; i < c; ++i) w.push_back(LadderOp::Create);
    for (int i = 0; i < a; ++i) w.push_back(LadderOp::Annihilate);
    return w;
}

}  // namespace

TEST_CASE("ladder_matrix basics") {
    DenseOperator b2 = ladder_matrix(2);
    REQUIRE(b2(0, 0) == complex_t{0.0, 0.0});
    REQUIRE(b2(0, 1) == complex_t{0.0, 0.0});
    REQUIRE(b2(1, 0).real() == Catch::Approx(1.0));
    REQUIRE(b2(1, 1) == complex_t{0.0, 0.0});

    DenseOperator b4 = ladder_matrix(4);
    REQUIRE(b4(1, 0).real() == Catch::Approx(1.0));
    REQUIRE(b4(2, 1).real() == Catch::Approx(std::sqrt(2.0)));
    REQUIRE(b4(3, 2).real() == Catch::Approx(std::sqrt(3.0)));
    REQUIRE(b4(0, 3) == complex_t{0.0, 0.0});

    DenseOperator b1 = ladder_matrix(1);
    REQUIRE(b1.dim() == 1);
    REQUIRE(b1(0, 0) == complex_t{0.0, 0.0});

    REQUIRE_THROWS_AS(ladder_matrix(0), config_error);
}

TEST_CASE("word_matrix: number operator in the two modes") {
    // (b†, b) is normal ordered: both modes give diag(0, 1, 2, 3).
    for (auto mode : {AssemblyMode::TruncatedFactors, AssemblyMode::ExactProjection}) {
        DenseOperator n = word_matrix(W({1, 0}), 4, mode);
        for (int i = 0; i < 4; ++i)
            REQUIRE(n(i, i).real() == Catch::Approx(double(i)).margin(1e-12));
    }

    // (b, b†) is not: truncated factors give diag(1, 2, 3, 0) — the top level
    // leaks — while exact projection gives diag(1, 2, 3, 4).
    DenseOperator tf = word_matrix(W({0, 1}), 4, AssemblyMode::TruncatedFactors);
    DenseOperator ep = word_matrix(W({0, 1}), 4, AssemblyMode::ExactProjection);
    for (int i = 0; i < 3; ++i) {
        REQUIRE(tf(i, i).real() == Catch::Approx(double(i + 1)).margin(1e-12));
        REQUIRE(ep(i, i).real() == Catch::Approx(double(i + 1)).margin(1e-12));
    }
    REQUIRE(tf(3, 3).real() == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(ep(3, 3).real() == Catch::Approx(4.0).margin(1e-12));
}

TEST_CASE("normal-ordered words are truncation-safe") {
    // Deterministic cases: every (b†)^c (b)^a with c+a <= 6.
    for (int M : {2, 4, 8, 16}) {
        for (int c = 0; c <= 3; ++c) {
            for (int a = 0; a <= 3; ++a) {
                LadderWord w = ordered_word(c, a);
                DenseOperator tf = word_matrix(w, M, AssemblyMode::TruncatedFactors);
                DenseOperator ep = word_matrix(w, M, AssemblyMode::ExactProjection);
                INFO("M=" << M << " word=" << word_to_string(w));
                REQUIRE(tf.max_abs_diff(ep) < 1e-12 * std::max(1.0, ep.max_abs()));
            }
        }
    }

    // Random normal-ordered polynomials assemble identically in both modes.
    std::mt19937 rng(31415);
    std::uniform_int_distribution<int> nc(0, 3), na(0, 3);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        LadderPoly p;
        for (int t = 0; t < 5; ++t)
            p.add_term({coeff(rng), coeff(rng)}, ordered_word(nc(rng), na(rng)));
        DenseOperator tf = assemble(p, 12, AssemblyMode::TruncatedFactors);
        DenseOperator ep = assemble(p, 12, AssemblyMode::ExactProjection);
        REQUIRE(tf.max_abs_diff(ep) < 1e-12 * std::max(1.0, ep.max_abs()));
    }
}

TEST_CASE("the (b, b+) word differs between modes by exactly M in the corner") {
    for (int M : {1, 2, 4, 8, 16, 32}) {
        DenseOperator tf = word_matrix(W({0, 1}), M, AssemblyMode::TruncatedFactors);
        DenseOperator ep = word_matrix(W({0, 1}), M, AssemblyMode::ExactProjection);
        DenseOperator diff = tf - ep;
        REQUIRE(diff(M - 1, M - 1).real() == Catch::Approx(double(-M)).margin(1e-12));
        diff(M - 1, M - 1) = 0.0;
        REQUIRE(diff.max_abs() < 1e-12);
    }
}

TEST_CASE("commutator defect: -M at the top corner only") {
    DenseOperator d4 = commutator_defect(4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            double expect = (r == 3 && c == 3) ? -4.0 : 0.0;
            REQUIRE(d4(r, c).real() == Catch::Approx(expect).margin(1e-12));
            REQUIRE(d4(r, c).imag() == Catch::Approx(0.0).margin(1e-15));
        }

    DenseOperator d1 = commutator_defect(1);
    REQUIRE(d1.dim() == 1);
    REQUIRE(d1(0, 0).real() == Catch::Approx(-1.0).margin(1e-15));

    for (int M = 1; M <= 32; ++M) {
        DenseOperator d = commutator_defect(M);
        REQUIRE(d(M - 1, M - 1).real() == Catch::Approx(double(-M)).margin(1e-12));
        d(M - 1, M - 1) = 0.0;
        REQUIRE(d.max_abs() < 1e-12);
    }
}

TEST_CASE("commutator defect agrees with its ladder-only form") {
    // -M (b†)^(M-1) (b)^(M-1) / (M-1)! equals the direct commutator defect.
    for (int M = 1; M <= 32; ++M) {
        DenseOperator direct = commutator_defect(M);
        DenseOperator ladder = commutator_defect_ladder_form(M);
        INFO("M=" << M);
        REQUIRE(direct.max_abs_diff(ladder) < 1e-10 * std::max(1.0, double(M)));
    }
}

TEST_CASE("truncated harmonic forms at M=4") {
    // Ordered form b†b + 1/2: diag(0.5, 1.5, 2.5, 3.5) in either mode.
    LadderPoly ordered;
    ordered.add_term({1.0, 0.0}, W({1, 0}));
    ordered.add_term({0.5, 0.0}, LadderWord{});
    DenseOperator ho = assemble(ordered, 4, AssemblyMode::ExactProjection);
    for (int i = 0; i < 4; ++i)
        REQUIRE(ho(i, i).real() == Catch::Approx(i + 0.5).margin(1e-12));

    // Symmetric form (b†b + bb†)/2 under truncated factors bends the top
    // diagonal entry down to 1.5.
    LadderPoly sym;
    sym.add_term({0.5, 0.0}, W({1, 0}));
    sym.add_term({0.5, 0.0}, W({0, 1}));
    DenseOperator hs = assemble(sym, 4, AssemblyMode::TruncatedFactors);
    const double expect[4] = {0.5, 1.5, 2.5, 1.5};
    for (int i = 0; i < 4; ++i)
        REQUIRE(hs(i, i).real() == Catch::Approx(expect[i]).margin(1e-12));
}

TEST_CASE("xp power oracle: quoted entries") {
    DenseOperator x1 = xp_power_oracle('x', 1, 3);
    REQUIRE(x1(0, 1).real() == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-14));
    REQUIRE(x1(1, 2).real() == Catch::Approx(1.0).margin(1e-14));
    REQUIRE(x1(1, 0).real() == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-14));

    for (char s : {'x', 'p'}) {
        DenseOperator sq = xp_power_oracle(s, 2, 2);
        INFO("symbol " << s);
        REQUIRE(sq(0, 0).real() == Catch::Approx(0.5).margin(1e-14));
        REQUIRE(sq(1, 1).real() == Catch::Approx(1.5).margin(1e-14));
        REQUIRE(std::abs(sq(0, 1)) < 1e-14);
        REQUIRE(std::abs(sq(1, 0)) < 1e-14);
    }

    REQUIRE_THROWS_AS(xp_power_oracle('q', 1, 4), config_error);
    REQUIRE_THROWS_AS(xp_power_oracle('x', -1, 4), config_error);
}

TEST_CASE("xp power oracle cross-checks the symbolic expansion path") {
    // x^n and p^n assembled through ladder_from_xp + exact projection must
    // match the oracle, which never touches the symbolic expansion.
    for (char s : {'x', 'p'}) {
        for (int n = 0; n <= 4; ++n) {
            for (int M : {1, 2, 3, 5, 8, 16}) {
                XPPoly mono;
                mono.add_term(1.0, std::string(std::size_t(n), s));
                DenseOperator via_expansion =
                    assemble(ladder_from_xp(mono), M, AssemblyMode::ExactProjection);
                DenseOperator oracle = xp_power_oracle(s, n, M);
                INFO("symbol " << s << " power " << n << " M " << M);
                REQUIRE(via_expansion.max_abs_diff(oracle) <
                        1e-10 * std::max(1.0, oracle.max_abs()));
            }
        }
    }
}

TEST_CASE("assembled polynomials are Hermitian when the input is") {
    DenseOperator h =
        assemble(ladder_from_xp(left_well(4.0)), 16, AssemblyMode::TruncatedFactors);
    REQUIRE(h.hermiticity_defect() < 1e-12 * std::max(1.0, h.max_abs()));
    REQUIRE(h.max_abs_imag() < 1e-12);
}

TEST_CASE("normal ordering turns truncated factors into the exact projection") {
    // The central safety property: for a normal-ordered polynomial the
    // truncated-factor matrix equals P_M H P_M.  Applied to the full
    // double-well Hamiltonian at small M.
    LadderPoly raw = ladder_from_xp(left_well(4.0));
    LadderPoly no = normal_order(raw);
    for (int M : {1, 2, 4, 8}) {
        DenseOperator tf_ordered = assemble(no, M, AssemblyMode::TruncatedFactors);
        DenseOperator ep_raw = assemble(raw, M, AssemblyMode::ExactProjection);
        INFO("M=" << M);
        REQUIRE(tf_ordered.max_abs_diff(ep_raw) < 1e-12 * std::max(1.0, ep_raw.max_abs()));

        // And the unordered truncated assembly genuinely differs (M > 1).
        if (M >= 2) {
            DenseOperator tf_raw = assemble(raw, M, AssemblyMode::TruncatedFactors);
            REQUIRE(tf_raw.max_abs_diff(ep_raw) > 1e-3);
        }
    }
}

TEST_CASE("exact projection block-consistency") {
    // Evaluating in a yet-larger basis and cutting back reproduces the
    // exact projection: the enlargement margin in word_matrix is sufficient.
    std::mt19937 rng(271828);
    std::uniform_int_distribution<int> bit(0, 1), len(0, 5);
    for (int trial = 0; trial < 30; ++trial) {
        LadderWord w;
        int n = len(rng);
        for (int i = 0; i < n; ++i)
            w.push_back(bit(rng) ? LadderOp::Create : LadderOp::Annihilate);
        const int M = 6;
        DenseOperator ep = word_matrix(w, M, AssemblyMode::ExactProjection);
        DenseOperator big = word_matrix(w, M + 12, AssemblyMode::ExactProjection);
        REQUIRE(ep.max_abs_diff(big.top_left_block(M)) < 1e-12 * std::max(1.0, big.max_abs()));
    }
}
