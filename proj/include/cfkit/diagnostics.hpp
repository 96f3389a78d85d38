#pragma once

// Pointwise diagnostics along a word: the sorted-quantile estimator for the
// convergence exponent of the partial quotients, the Dirichlet ratio
// log(a_n a_{n+1}) / log q_n with its running supremum, the Levy quotient
// log q_n / n, and the psi -> Psi transform with its hit-set report.

#include "cfkit/core.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace cfkit {

struct exponent_estimate {
    double value;  // infinity() when the median of the window is <= 2
    size_t window_lo, window_hi;  // 1-based range of the sorted tail that was scanned
    std::string method = "sorted-quantile";
    // Corroborating partial sums sum a_n^-s at s = value -/+ 0.1 (absent for +inf).
    std::vector<std::pair<double, double>> partial_sums;

    bool is_infinite() const { return std::isinf(value); }
};

// Sorted-quantile rule on words of length >= 100: sort the digits ascending
// into b_1 <= ... <= b_N; if b_ceil(N/2) <= 2 the sum diverges for every s,
// so the estimate is +inf; otherwise take max of log n / log b_n over the
// upper half-window. Invariant under permutations of the digits.
exponent_estimate tau_estimate(const cf_word& word);

struct ratio_trace {
    struct entry {
        long n;
        double ratio;        // log(a_n a_{n+1}) / log q_n
        double running_sup;  // nondecreasing
    };
    std::vector<entry> entries;  // n = 2..N-1
};

ratio_trace dirichlet_ratio_trace(const cf_word& word);  // length >= 3

// (n, log q_n / n) for n = 1..N.
std::vector<std::pair<long, double>> levy_trace(const cf_word& word);

// psi(q) = c * q^-gamma, the power family.
struct approximation_rate {
    double c;
    double gamma;
};

// Psi(q) = q psi(q) / (1 - q psi(q)); domain error when q psi(q) >= 1.
double psi_to_Psi(const approximation_rate& rate, const bigint& q);

// A pointwise Psi for hit-set reports. Exactly one representation is active:
// a constant rational (compared exactly) or scale * Psi derived from a power
// rate (compared in log space at double precision; an index hits when
// log(a_n a_{n+1}) >= log Psi(q_n) - 1e-9 * max(1, |log Psi(q_n)|)).
struct psi_function {
    std::optional<bigrat> constant;
    std::optional<approximation_rate> rate;
    double scale = 1.0;

    static psi_function constant_of(bigrat v);
    static psi_function from_rate(approximation_rate r, double scale = 1.0);
};

// All n in [1, N-1] with a_n a_{n+1} >= Psi(q_n).
std::vector<long> g_psi_hits(const cf_word& word, const psi_function& psi);  // length >= 3

}  // namespace cfkit
