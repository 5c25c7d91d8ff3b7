// End-to-end smoke: every header compiles together and the main pipeline
// (model -> ladder expansion -> matrix -> spectrum -> encoding -> CLI
// runner) produces sane output.

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include <vibenc/vibenc.hpp>

using namespace vibenc;

TEST_CASE("harmonic reference end to end") {
    PresetModel preset;
    preset.kind = PresetKind::HarmonicH0;
    ModelSpec model = make_model(preset);

    SpectrumReport rep = spectrum(model, 8, Ordering::Normal);
    REQUIRE(rep.energies_cm.size() == 8);
    // Equally spaced levels at (n + 1/2) * 2000 cm^-1.
    for (int n = 0; n < 8; ++n)
        REQUIRE(rep.energies_cm[std::size_t(n)] == Catch::Approx((n + 0.5) * 2000.0).margin(1e-8));
}

TEST_CASE("runner round trip") {
    RunConfig cfg;
    cfg.subcommand = "spectrum";
    cfg.model = "h0";
    cfg.M_spec = "4";

    std::ostringstream warn1, warn2;
    std::string once = run_to_string(cfg, warn1);
    RunConfig back = run_config_from_json(run_config_to_json(cfg));
    std::string twice = run_to_string(back, warn2);
    REQUIRE(once == twice);
    REQUIRE(!once.empty());
}

TEST_CASE("binary encoding smoke") {
    PauliSum b_dag = binary_creation(2);
    DenseOperator mat = to_matrix(b_dag);
    DenseOperator ladder = ladder_matrix(4);
    REQUIRE(mat.max_abs_diff(ladder) < 1e-12);
}
