#pragma once

// Batch front-end logic behind the command-line tool. Every run is a pure
// function of its run_config; outputs embed the config and a schema version
// so a run can be reproduced byte-for-byte from any output file.

#include "cfkit/io.hpp"

#include <iosfwd>
#include <string>

namespace cfkit {

// Exit codes: 0 success, 2 invalid input or domain error, 3 budget exceeded.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitBudget = 3;

struct run_config {
    std::string subcommand;

    // expand
    std::string value;
    long precision = -1;  // decimal digits of uncertainty; -1 treats input as exact
    long max_terms = 64;

    // diagnose
    std::string word;       // inline comma-separated digits
    std::string word_file;  // or a file holding them
    std::string traces = "all";  // ratio | levy | tau | all
    std::string format = "json";  // json | csv (trace files)

    // construct
    std::string alpha = "1";
    std::string beta = "3/2";
    int j_max = 3;
    std::string mode = "exact";  // exact | logspace
    std::string sel = "min";     // min | max | seeded-random (seed and c/e digits)
    uint64_t rng_seed = 0;
    std::string n1;              // alpha = 0 size knob (decimal integer)
    long budget = 100000;
    long trailing = 1;

    // dimension / verdict / jarnik
    double gamma = 2.0;
    double s = 0.5;
    long m = 8;

    // verify
    long verify_words = 10000;
    long verify_deletions = 1000;

    std::string out;  // output file (expand) or directory (diagnose/construct)

    json to_json() const;
};

int run_expand(const run_config& cfg, std::ostream& out, std::ostream& err);
int run_diagnose(const run_config& cfg, std::ostream& out, std::ostream& err);
int run_construct(const run_config& cfg, std::ostream& out, std::ostream& err);
int run_dimension(const run_config& cfg, std::ostream& out, std::ostream& err);
int run_verdict(const run_config& cfg, std::ostream& out, std::ostream& err);
int run_jarnik(const run_config& cfg, std::ostream& out, std::ostream& err);
int run_verify(const run_config& cfg, std::ostream& out, std::ostream& err);

}  // namespace cfkit
