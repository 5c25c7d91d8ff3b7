// Spectral layer: the Jacobi eigensolver, spectrum reports, convergence
// sweeps with the variational monotonicity contract, eigenvector weights,
// and the encoded one-norm scaling fit.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

#include <vibenc/models.hpp>
#include <vibenc/spectral.hpp>

using namespace vibenc;

namespace {

ModelSpec harmonic(double omega_cm = 2000.0) {
    PresetModel m;
    m.kind = PresetKind::HarmonicH0;
    m.omega_cm = omega_cm;
    return make_model(m);
}

ModelSpec double_well(PresetKind kind, double ell = 4.0, double omega_cm = 2000.0) {
    PresetModel m;
    m.kind = kind;
    m.ell = ell;
    m.omega_cm = omega_cm;
    return make_model(m);
}

}  // namespace

TEST_CASE("eig: one-by-one") {
    DenseOperator c(1);
    c(0, 0) = -3.25;
    EigResult e = eig(c);
    REQUIRE(e.values.size() == 1);
    REQUIRE(e.values[0] == Catch::Approx(-3.25).margin(1e-14));
    REQUIRE(std::abs(e.vectors(0, 0) - complex_t{1.0, 0.0}) < 1e-14);
}

TEST_CASE("eig: known 2x2 real and complex pairs") {
    DenseOperator r(2);
    r(0, 0) = 2.0; r(0, 1) = 1.0;
    r(1, 0) = 1.0; r(1, 1) = 2.0;
    EigResult er = eig(r);
    REQUIRE(er.values[0] == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(er.values[1] == Catch::Approx(3.0).margin(1e-12));
    // Ground state (1, -1)/sqrt(2) up to phase; the convention makes the
    // largest-magnitude component positive real.
    REQUIRE(std::abs(std::abs(er.vectors(0, 0)) - 1.0 / std::sqrt(2.0)) < 1e-12);
    REQUIRE(er.vectors(0, 0).real() * er.vectors(1, 0).real() < 0.0);

    DenseOperator h(2);
    h(0, 0) = 1.0; h(0, 1) = complex_t{0.0, 1.0};
    h(1, 0) = complex_t{0.0, -1.0}; h(1, 1) = 1.0;
    EigResult eh = eig(h);
    REQUIRE(eh.values[0] == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(eh.values[1] == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("eig: residual contract on the double-well Hamiltonian") {
    ModelSpec left = double_well(PresetKind::DoubleWellLeft);
    DenseOperator h = model_matrix(left, 24, Ordering::Normal);
    EigResult e = eig(h);
    REQUIRE(std::is_sorted(e.values.begin(), e.values.end()));
    // H v = lambda v columnwise.
    const int n = h.dim();
    for (int j = 0; j < n; ++j) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            complex_t hv{};
            for (int k = 0; k < n; ++k) hv += h(i, k) * e.vectors(k, j);
            worst = std::max(worst, std::abs(hv - e.values[std::size_t(j)] * e.vectors(i, j)));
        }
        REQUIRE(worst < 1e-9 * std::max(1.0, h.max_abs() * n));
    }
}

TEST_CASE("eig rejects non-Hermitian input") {
    DenseOperator bad(2);
    bad(0, 1) = 1.0;  // missing conjugate partner
    REQUIRE_THROWS_AS(eig(bad), config_error);
}

TEST_CASE("eig: quoted truncated harmonic examples") {
    // Ordered form: exact projection diag(0.5 .. 3.5).
    ModelSpec h0 = harmonic();
    DenseOperator ordered = model_matrix(h0, 4, Ordering::Normal);
    EigResult eo = eig(ordered);
    for (int i = 0; i < 4; ++i)
        REQUIRE(eo.values[std::size_t(i)] == Catch::Approx(i + 0.5).margin(1e-12));

    // Symmetric unordered form (b†b + bb†)/2 bends the top eigenvalue down:
    // (0.5, 1.5, 1.5, 2.5).
    DenseOperator sym = model_matrix(h0, 4, Ordering::Unordered);
    EigResult es = eig(sym);
    const double expect[4] = {0.5, 1.5, 1.5, 2.5};
    for (int i = 0; i < 4; ++i)
        REQUIRE(es.values[std::size_t(i)] == Catch::Approx(expect[i]).margin(1e-12));
}

TEST_CASE("spectrum: harmonic levels are exact at every basis size") {
    ModelSpec h0 = harmonic(2000.0);
    for (int M : {1, 2, 3, 8, 33}) {
        SpectrumReport rep = spectrum(h0, M, Ordering::Normal);
        REQUIRE(rep.M == M);
        REQUIRE(rep.energies_cm.size() == std::size_t(M));
        for (int n = 0; n < M; ++n)
            REQUIRE(rep.energies_cm[std::size_t(n)] ==
                    Catch::Approx((n + 0.5) * 2000.0).margin(1e-8));
        if (M >= 2) REQUIRE(rep.splitting01_cm == Catch::Approx(2000.0).margin(1e-8));
    }
}

TEST_CASE("spectrum weights: harmonic eigenstates are basis states") {
    ModelSpec h0 = harmonic();
    SpectrumReport rep = spectrum(h0, 6, Ordering::Normal, true);
    REQUIRE(rep.weights.has_value());
    const auto& w = *rep.weights;
    for (std::size_t n = 0; n < 6; ++n) {
        double sum = 0.0;
        for (std::size_t i = 0; i < 6; ++i) {
            sum += w[n][i];
            double expect = (n == i) ? 1.0 : 0.0;
            REQUIRE(w[n][i] == Catch::Approx(expect).margin(1e-10));
        }
        REQUIRE(sum == Catch::Approx(1.0).margin(1e-10));
    }
}

TEST_CASE("weights rows always sum to one") {
    ModelSpec left = double_well(PresetKind::DoubleWellLeft);
    SpectrumReport rep = spectrum(left, 32, Ordering::Normal, true);
    for (const auto& row : *rep.weights) {
        double sum = 0.0;
        for (double v : row) {
            REQUIRE(v >= 0.0);
            sum += v;
        }
        REQUIRE(sum == Catch::Approx(1.0).margin(1e-10));
    }
}

TEST_CASE("centered double-well eigenstates have definite parity") {
    // At the barrier-centered origin the Hamiltonian commutes with parity,
    // so each low eigenstate lives entirely on one parity class.
    ModelSpec center = double_well(PresetKind::DoubleWellCenter);
    SpectrumReport rep = spectrum(center, 32, Ordering::Normal, true);
    const auto& w = *rep.weights;
    for (std::size_t n = 0; n < 4; ++n) {
        double even = 0.0, odd = 0.0;
        for (std::size_t i = 0; i < w[n].size(); ++i) ((i % 2 == 0) ? even : odd) += w[n][i];
        INFO("state " << n);
        REQUIRE(std::min(even, odd) < 1e-14);
    }
}

TEST_CASE("convergence sweep: harmonic table is flat") {
    ModelSpec h0 = harmonic(2000.0);
    SweepTable t = convergence_sweep(h0, Ordering::Normal, {2, 4, 8, 16});
    REQUIRE(t.rows.size() == 4);
    REQUIRE(t.reference_M == 16);
    REQUIRE(t.violations.empty());
    for (const auto& row : t.rows) {
        REQUIRE(row.energies_cm[0] == Catch::Approx(1000.0).margin(1e-8));
        REQUIRE(row.energies_cm.size() == std::size_t(std::min(5, row.M)));
    }
}

TEST_CASE("convergence sweep: ordered double well is variationally monotone") {
    ModelSpec left = double_well(PresetKind::DoubleWellLeft);
    SweepTable t = convergence_sweep(left, Ordering::Normal, {2, 4, 8, 16, 32, 48, 64});
    REQUIRE(t.violations.empty());
    for (std::size_t i = 1; i < t.rows.size(); ++i)
        REQUIRE(t.rows[i].energies_cm[0] <= t.rows[i - 1].energies_cm[0] + 1e-9);
}

TEST_CASE("convergence sweep: unordered assembly records monotonicity violations") {
    ModelSpec left = double_well(PresetKind::DoubleWellLeft);
    SweepTable t =
        convergence_sweep(left, Ordering::Unordered, {2, 4, 8, 16, 32, 48, 50, 52, 64});
    REQUIRE(!t.violations.empty());
    // The dip-and-recover pattern at mid sizes is a violation by definition:
    // E0(50) < E0(48) and E0(52) > E0(50).
    auto row = [&](int M) {
        for (const auto& r : t.rows)
            if (r.M == M) return r.energies_cm[0];
        FAIL("row not found");
        return 0.0;
    };
    REQUIRE(row(50) < row(48));
    REQUIRE(std::find(t.violations.begin(), t.violations.end(), 52) != t.violations.end());
}

TEST_CASE("convergence sweep input validation") {
    ModelSpec h0 = harmonic();
    REQUIRE_THROWS_AS(convergence_sweep(h0, Ordering::Normal, {}), config_error);
    REQUIRE_THROWS_AS(convergence_sweep(h0, Ordering::Normal, {8, 4}), config_error);
    REQUIRE_THROWS_AS(convergence_sweep(h0, Ordering::Normal, {4, 4, 8}), config_error);
}

TEST_CASE("norm scaling: validation") {
    ModelSpec left = double_well(PresetKind::DoubleWellLeft);
    REQUIRE_THROWS_AS(norm_scaling_report(left, Encoding::Kind::Binary, {4, 8}), config_error);
    REQUIRE_THROWS_AS(norm_scaling_report(left, Encoding::Kind::Binary, {4, 6, 8}),
                      config_error);
    REQUIRE_THROWS_AS(norm_scaling_report(left, Encoding::Kind::Unary, {4, 8, 16}),
                      config_error);
}

TEST_CASE("norm scaling: harmonic one-norm grows linearly") {
    // Ordered harmonic encoded on K qubits has one-norm M - 1/2 exactly, so
    // the fitted exponent sits just above one and tightens toward it.
    ModelSpec h0 = harmonic();
    NormScalingReport rep =
        norm_scaling_report(h0, Encoding::Kind::Binary, {4, 8, 16, 32, 64, 128, 256});
    REQUIRE(rep.points.size() == 7);
    for (const auto& [M, lambda] : rep.points)
        REQUIRE(lambda == Catch::Approx(M - 0.5).margin(1e-9));
    REQUIRE(rep.alpha == Catch::Approx(1.0).margin(0.1));
}

TEST_CASE("norm scaling: constant polynomial has zero exponent") {
    PresetModel m;
    m.kind = PresetKind::Custom;
    m.custom.add_term(2.5, "");
    ModelSpec flat = make_model(m);
    double alpha = norm_scaling_fit(flat, Encoding::Kind::Binary, {4, 8, 16});
    REQUIRE(alpha == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("norm scaling: quartic double wells grow superlinearly") {
    ModelSpec left = double_well(PresetKind::DoubleWellLeft);
    ModelSpec center = double_well(PresetKind::DoubleWellCenter);
    std::vector<int> sizes = {4, 8, 16, 32, 64};
    double a_left = norm_scaling_fit(left, Encoding::Kind::Binary, sizes);
    double a_center = norm_scaling_fit(center, Encoding::Kind::Binary, sizes);
    REQUIRE(a_left > a_center);
    REQUIRE(a_center > 1.0);
    REQUIRE(a_left == Catch::Approx(1.7621).margin(5e-4));
    REQUIRE(a_center == Catch::Approx(1.2338).margin(5e-4));
}

TEST_CASE("encoded one-norm in energy units") {
    ModelSpec h0 = harmonic(2000.0);
    // lambda(M=2) = 1.5 dimensionless -> 3000 in energy units.
    REQUIRE(encoded_one_norm_cm(h0, 1) == Catch::Approx(3000.0).margin(1e-9));
}
