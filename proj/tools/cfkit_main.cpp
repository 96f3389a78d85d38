// cfkit command-line tool: exact continued-fraction expansion, growth
// diagnostics, digit-insertion constructions, and closed-form dimension
// values, with machine-readable JSON/CSV output.

#include "cfkit/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"exact continued-fraction toolkit"};
    app.require_subcommand(1);
    cfkit::run_config cfg;

    auto* expand = app.add_subcommand("expand", "expand a rational or decimal into partial quotients");
    expand->add_option("--value", cfg.value, "input: p/q or a decimal string")->required();
    expand->add_option("--precision", cfg.precision,
                       "decimal digits of uncertainty (omit to treat the input as exact)");
    expand->add_option("--max-terms", cfg.max_terms, "cap on emitted digits");
    expand->add_option("--out", cfg.out, "output file (default: stdout)");

    auto* diagnose = app.add_subcommand("diagnose", "ratio/levy/tau traces of a word");
    diagnose->add_option("--word", cfg.word, "comma-separated partial quotients");
    diagnose->add_option("--word-file", cfg.word_file, "file holding the word");
    diagnose->add_option("--trace", cfg.traces, "ratio | levy | tau | all");
    diagnose->add_option("--format", cfg.format, "json | csv");
    diagnose->add_option("--out", cfg.out, "output directory (default: stdout)");

    auto* construct = app.add_subcommand("construct", "build an insertion schedule and word");
    construct->add_option("--alpha", cfg.alpha, "seed family parameter (rational, >= 0)")->required();
    construct->add_option("--beta", cfg.beta, "target ratio limsup (rational, > 0)")->required();
    construct->add_option("--jmax", cfg.j_max, "number of insertion levels")->required();
    construct->add_option("--mode", cfg.mode, "exact | logspace");
    construct->add_option("--selector", cfg.sel, "min | max | seeded-random");
    construct->add_option("--seed", cfg.rng_seed, "rng seed for seeded-random");
    construct->add_option("--n1", cfg.n1, "first level size (alpha = 0 only)");
    construct->add_option("--budget", cfg.budget, "decimal-digit budget for exact mode");
    construct->add_option("--trailing", cfg.trailing, "seed digits appended after the last block");
    construct->add_option("--out", cfg.out, "output directory")->required();

    auto* dimension = app.add_subcommand("dimension", "closed-form Hausdorff dimension");
    dimension->add_option("--alpha", cfg.alpha, "rational or 'inf'")->required();
    dimension->add_option("--beta", cfg.beta, "rational >= 0")->required();
    dimension->add_option("--out", cfg.out, "output file (default: stdout)");

    auto* verdict = app.add_subcommand("verdict", "zero/infinite Hausdorff measure verdict");
    verdict->add_option("--gamma", cfg.gamma, "power-family exponent, Psi(t) = t^gamma")->required();
    verdict->add_option("--s", cfg.s, "dimension parameter in [0,1)")->required();
    verdict->add_option("--out", cfg.out, "output file (default: stdout)");

    auto* jarnik = app.add_subcommand("jarnik", "bounded-digit dimension bracket");
    jarnik->add_option("--m", cfg.m, "digit bound, m >= 8")->required();
    jarnik->add_option("--out", cfg.out, "output file (default: stdout)");

    auto* verify = app.add_subcommand("verify", "run the randomized property suites");
    verify->add_option("--seed", cfg.rng_seed, "rng seed");
    verify->add_option("--words", cfg.verify_words, "random words per suite");
    verify->add_option("--deletions", cfg.verify_deletions, "random deletion-ratio checks");

    CLI11_PARSE(app, argc, argv);

    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (expand->parsed()) return cfkit::run_expand(cfg, std::cout, std::cerr);
    if (diagnose->parsed()) return cfkit::run_diagnose(cfg, std::cout, std::cerr);
    if (construct->parsed()) return cfkit::run_construct(cfg, std::cout, std::cerr);
    if (dimension->parsed()) return cfkit::run_dimension(cfg, std::cout, std::cerr);
    if (verdict->parsed()) return cfkit::run_verdict(cfg, std::cout, std::cerr);
    if (jarnik->parsed()) return cfkit::run_jarnik(cfg, std::cout, std::cerr);
    if (verify->parsed()) return cfkit::run_verify(cfg, std::cout, std::cerr);
    return cfkit::kExitInvalid;
}
