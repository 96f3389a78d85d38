#pragma once

// The digit-insertion construction: seed families F(alpha) and F(0), the
// level parameters (n_j, c_j, e_j, r_j, m_j), and the splice map that turns a
// seed word into a word whose Dirichlet ratio peaks at the insertion blocks.
//
// Level j inserts the pair (c_j, e_j) right after seed digit a_{r_j}, where
// r_j is the smallest representable r with q_{r+2(j-1)} of the progressively
// built word >= n_j. At early levels that threshold can already be satisfied
// by the previous insertions; r_j is then clamped to r_{j-1}+1 and the level
// is flagged `threshold_pre_satisfied`.

#include "cfkit/core.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cfkit {

// Positive root of t^2 - beta t - 1. Carries the exact rational root when
// beta makes the discriminant a rational square.
struct lambda_value {
    bigrat beta;
    std::optional<bigrat> exact;
    double approx;
};

lambda_value lambda_of(const bigrat& beta);  // beta > 0

enum class seed_family { f_alpha, f_zero };
enum class selector { min, max, seeded_random };

const char* selector_name(selector s);
selector selector_from(const std::string& name);

struct construction_params {
    bigrat alpha;  // >= 0; family is f_zero iff alpha == 0
    bigrat beta;   // > 0
    lambda_value lambda;
    seed_family family;
    bigint n0;  // floor(2^alpha) + 1; unused in f_zero mode
    bigint n1;  // f_alpha: from the closed formula; f_zero: caller-supplied size knob
};

// alpha = 0 selects F(0) mode, where n1 is the `n1_knob` (the paper-side
// formula divides by alpha and has no meaning there). alpha must be a
// nonnegative rational with machine-size numerator/denominator; alpha
// infinite is not supported (no construction exists on this route).
construction_params make_params(const bigrat& alpha, const bigrat& beta,
                                const bigint& n1_knob = bigint(1000000),
                                long digit_budget = 100000);

struct digit_range {
    bigint lo, hi;
    bigint count() const { return hi - lo + 1; }
};

// Admissible digit range at seed position i >= 1:
// F(alpha): [floor((N0+i)^(1/alpha))+1, 2 floor((N0+i)^(1/alpha))],
// F(0):     [floor(e^i)+1, floor(2 e^i)].
digit_range seed_range(const construction_params& p, long i);

// Deterministic digit choice inside a range; `seeded_random` draws are a pure
// function of (rng_seed, tag, index), so lazily extended seeds are reproducible.
bigint pick_digit(const digit_range& r, selector sel, uint64_t rng_seed,
                  const char* tag, long index);

struct seed_policy {
    selector sel = selector::min;
    uint64_t rng_seed = 0;
};

struct seed_word {
    cf_word word;
    seed_family family;
    seed_policy policy;
    uint64_t fingerprint;
};

seed_word make_seed(const construction_params& p, seed_policy policy, long length);
bigint seed_digit(const construction_params& p, seed_policy policy, long i);

enum class schedule_mode { exact, logspace };

struct schedule_level {
    int j = 0;
    // Exact values (empty in logspace mode); floor_c = floor(n_j^(lambda-1)),
    // floor_e = floor(n_j^(lambda^2-lambda)) bound the c/e ranges.
    bigint n, c, e, floor_c, floor_e;
    // Natural logs, carried in both modes.
    double log_n = 0, log_c = 0, log_e = 0, log_floor_c = 0, log_floor_e = 0;
    long r = 0, m = 0;  // m = r + 2(j-1)
    bool threshold_pre_satisfied = false;
    // q of the progressive word around the block.
    double log_q_m_minus1 = 0, log_q_m = 0, log_q_m1 = 0, log_q_m2 = 0;
    // Seed digits flanking the block and the max off-block ratio over the
    // seed stretch feeding this level (n in [m_{j-1}+3, m_j - 1]).
    double log_a_r = 0, log_a_next = 0;
    double off_block_max = 0;
    // Cumulative log of the admissible-range counts through m_j and m_j+1
    // (level-set cardinality in log space).
    double log_count_m = 0, log_count_m1 = 0;
};

struct schedule {
    construction_params params;
    schedule_mode mode = schedule_mode::exact;
    seed_policy seed;
    selector digit_sel = selector::min;
    long digit_budget = 100000;
    std::vector<schedule_level> levels;
    uint64_t fingerprint = 0;
};

// Builds levels 1..j_max over the progressively built word. In exact mode
// every quantity is an exact integer and the decimal-digit budget applies to
// n_j; logspace mode carries natural logs (q via the recursion
// log q_n = log a_n + log q_{n-1} + log1p(exp(log q_{n-2} - log a_n - log q_{n-1}))),
// with relative error per step below 1e-9.
schedule build_schedule(const construction_params& p, seed_policy seed, int j_max,
                        schedule_mode mode, selector digit_sel,
                        long digit_budget = 100000);

// Splices (c_j, e_j) after seed digit a_{r_j} for every level, then appends
// `trailing` more seed digits. Exact-mode schedules only; the seed must carry
// the fingerprint the schedule was built against.
cf_word insert(const seed_word& seed, const schedule& sched, long trailing = 1);

uint64_t construction_fingerprint(const construction_params& p, seed_policy seed,
                                  selector digit_sel);

// Per-level diagnostics: the three block ratios log(b_n b_{n+1})/log q_n at
// n = m_j, m_j+1, m_j+2, the off-block maximum, and the convergence-exponent
// contribution c_j^-(alpha+eps) + e_j^-(alpha+eps) at eps = 0.1.
struct level_diag {
    int j;
    double ratio_m, ratio_m1, ratio_m2;
    double off_block_max;
    double tau_term;
    bool threshold_pre_satisfied;
};

struct membership_report_t {
    std::vector<level_diag> levels;
    double eps = 0.1;
    double tau_partial_sum = 0;
    // Limits the block ratios approach: lambda-1, (lambda^2-1)/lambda = beta, 1-1/lambda.
    double target_m, target_m1, target_m2;
};

// From the logs stored in the schedule (works in both modes).
membership_report_t membership_report(const schedule& sched);

// Independent recomputation from an exact constructed word: re-runs the p/q
// recursion over the word digits and rebuilds every ratio from scratch.
membership_report_t membership_report(const cf_word& constructed, const schedule& sched);

}  // namespace cfkit
