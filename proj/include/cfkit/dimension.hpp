#pragma once

// Measure apparatus over restricted-digit words: per-position admissible
// ranges (level specs), the uniform measure on same-length words, exact
// fundamental-interval lengths and gap bounds, local-dimension probes, and
// the closed-form dimension values.

#include "cfkit/construct.hpp"

#include <vector>

namespace cfkit {

// Theorem-level closed form: 2/(beta+2) when alpha is infinite,
// 2/(beta+2+sqrt(beta^2+4)) otherwise. Continuous at beta = 0 (values 1 and 1/2).
double dimension_formula(bool alpha_infinite, double beta);

// Closed-form bracket for the dimension of the bounded-digit set
// {x : a_n(x) <= m}: [1 - 1/(m log 2), 1 - 1/(8 m log m)], m >= 8.
std::pair<double, double> jarnik_bounds(long m);

enum class measure_verdict { zero, infinite };
const char* verdict_name(measure_verdict v);

// Hausdorff-measure dichotomy for the power family Psi(t) = t^gamma at
// exponent s in [0,1): the series sum t^(1-(2+gamma)s) converges iff
// s > 2/(2+gamma); the boundary case diverges (harmonic).
measure_verdict hausdorff_verdict(double gamma, double s);

enum class position_class { generic, block_c, block_e };
const char* position_class_name(position_class c);  // "generic", "m_j", "m_j_plus_1"

// Admissible digit range per position. Synthetic specs take a list of range
// counts M and give position k the range [M+1, 2M]; construction specs take
// seed ranges at seed positions and the c/e ranges at block positions.
struct level_spec {
    std::vector<digit_range> ranges;
    std::vector<position_class> classes;

    long size() const { return static_cast<long>(ranges.size()); }
    const digit_range& at(long k) const;            // 1-based
    position_class class_at(long k) const;

    static level_spec synthetic(const std::vector<long>& counts);
    // Exact-mode schedules only; covers positions 1..depth.
    static level_spec from_schedule(const schedule& sched, long depth);
};

// Number of admissible words of length n: the product of range counts.
bigint level_count(const level_spec& spec, long n);
double log_level_count(const level_spec& spec, long n);

// Uniform mass 1/level_count(n) of the fundamental interval of an admissible
// prefix. Errors name the first violating position.
bigrat mass(const cf_word& prefix, const level_spec& spec);

// |J_n| = M / ((lo q_n + q_{n-1}) ((hi+1) q_n + q_{n-1})) with [lo, hi] the
// next position's range and M its count: the telescoped sum of the child
// cylinder lengths.
bigrat fundamental_length(const cf_word& prefix, const level_spec& spec);

// The displayed gap bound 1/((hi q_n + q_{n-1}) q_n). A lower bound for the
// distance to any other fundamental interval of the same order.
bigrat gap(const cf_word& prefix, const level_spec& spec);

// Exact distances from the endpoints of J_n to the endpoints of the
// enclosing cylinder I_n, by endpoint arithmetic.
struct gap_parts {
    bigrat left, right;
};
gap_parts gap_components(const cf_word& prefix, const level_spec& spec);

struct measure_probe {
    long n;
    position_class cls;
    double log_mu, log_len;
    double holder;  // log mu / log |J|
};

// Exact probes at the given depths of an admissible word.
std::vector<measure_probe> local_dim_probe(const cf_word& word, const level_spec& spec,
                                           const std::vector<long>& depths);

// Log-space probes straight off a schedule, at block depths m_j / m_j + 1.
std::vector<measure_probe> local_dim_probe(const schedule& sched,
                                           const std::vector<long>& depths);

}  // namespace cfkit
