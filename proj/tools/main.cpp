// Command-line interface: model spectra, convergence sweeps, qubit-operator
// export, 1-norm scaling fits, eigenvector weights, and the flip-pattern
// census.  All real work lives in the headers; this file only maps flags
// onto a RunConfig.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <vibenc/vibenc.hpp>

namespace {

void add_model_flags(CLI::App* sub, vibenc::RunConfig& cfg) {
    sub->add_option("--model", cfg.model,
                    "Model preset: h0, dwell-left, dwell-center, or custom");
    sub->add_option("--poly", cfg.poly_path,
                    "Custom model: JSON file with [{\"coeff\":c,\"word\":\"xxp\"}, ...]");
    sub->add_option("--l", cfg.ell, "Well separation parameter (default 4)");
    sub->add_option("--omega", cfg.omega_cm,
                    "Energy quantum in cm^-1 (default 2000)");
    sub->add_option("--origin", cfg.origin,
                    "Double-well expansion point: left or barrier");
}

void add_output_flags(CLI::App* sub, vibenc::RunConfig& cfg) {
    sub->add_option("--unit", cfg.unit, "Energy unit: cm-1 (default) or dimensionless");
    sub->add_option("--out", cfg.out, "Write output to this file instead of stdout");
    sub->add_option("--format", cfg.format, "Output format: csv, json, or text");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Bosonic-mode truncation and qubit encoding toolkit.\n"
        "Builds anharmonic-oscillator Hamiltonians from position/momentum\n"
        "polynomials, controls truncation artifacts via operator ordering,\n"
        "and maps the result onto qubit registers."};
    app.require_subcommand(1);

    vibenc::RunConfig cfg;

    CLI::App* encode = app.add_subcommand(
        "encode", "Export the model Hamiltonian as a weighted Pauli-string sum");
    add_model_flags(encode, cfg);
    encode->add_option("--M", cfg.M_spec, "Number of retained basis states");
    encode->add_option("--K", cfg.K, "Qubit count (binary encoding: M = 2^K)");
    encode->add_option("--ordering", cfg.ordering, "normal (default) or unordered");
    encode->add_option("--encoding", cfg.encoding, "binary (default) or unary");
    add_output_flags(encode, cfg);

    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "Eigenvalues of the truncated model at one basis size");
    add_model_flags(spectrum, cfg);
    spectrum->add_option("--M", cfg.M_spec, "Number of retained basis states");
    spectrum->add_option("--K", cfg.K, "Basis size as a power of two: M = 2^K");
    spectrum->add_option("--ordering", cfg.ordering, "normal (default) or unordered");
    spectrum->add_option("--precision", cfg.precision, "Decimals in table output (default 4)");
    add_output_flags(spectrum, cfg);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Low-lying levels across a range of basis sizes");
    add_model_flags(sweep, cfg);
    auto* sweep_m = sweep->add_option("--M", cfg.M_spec, "Basis-size range a:b[:step] (step 2)");
    sweep->add_option("--M-range", cfg.M_spec, "Alias for --M")->excludes(sweep_m);
    sweep->add_option("--ordering", cfg.ordering, "normal (default) or unordered");
    sweep->add_option("--precision", cfg.precision, "Decimals in table output (default 4)");
    add_output_flags(sweep, cfg);

    CLI::App* norm = app.add_subcommand(
        "norm", "Pauli 1-norm of the encoded Hamiltonian across doubling basis sizes");
    add_model_flags(norm, cfg);
    auto* norm_m =
        norm->add_option("--M", cfg.M_spec, "Power-of-two range a:b (default 4:64)");
    norm->add_option("--M-range", cfg.M_spec, "Alias for --M")->excludes(norm_m);
    norm->add_option("--encoding", cfg.encoding, "binary (the fit is binary-only)");
    add_output_flags(norm, cfg);

    CLI::App* weights = app.add_subcommand(
        "weights", "Squared eigenvector components of the low-lying states");
    add_model_flags(weights, cfg);
    weights->add_option("--M", cfg.M_spec, "Number of retained basis states");
    weights->add_option("--K", cfg.K, "Basis size as a power of two: M = 2^K");
    weights->add_option("--ordering", cfg.ordering, "normal (default) or unordered");
    add_output_flags(weights, cfg);

    CLI::App* census = app.add_subcommand(
        "census", "Bit-flip pattern groups behind the encoding's string budget");
    census->add_option("--K", cfg.K, "Qubit count");
    add_output_flags(census, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // help/version exit cleanly; bad flags are config errors
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    return vibenc::run(cfg, std::cout, std::cerr);
}
