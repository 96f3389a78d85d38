#pragma once

// Continued-fraction kernel: finite words of partial quotients, exact
// convergents via the p/q recursion, cylinder intervals with parity-correct
// endpoints, and the classical growth/deletion inequalities.

#include "cfkit/numeric.hpp"

#include <climits>
#include <utility>
#include <vector>

namespace cfkit {

// A finite word of partial quotients a_1..a_n, every digit >= 1. The empty
// word is the root cylinder [0,1).
struct cf_word {
    std::vector<bigint> digits;

    cf_word() = default;
    explicit cf_word(std::vector<bigint> d) : digits(std::move(d)) { validate(); }

    size_t size() const { return digits.size(); }
    bool empty() const { return digits.empty(); }
    const bigint& at(size_t k) const { return digits.at(k - 1); }  // 1-based

    void push(bigint a);
    void validate() const;  // throws std::invalid_argument on a digit < 1

    cf_word prefix(size_t n) const;

    // "2,3" <-> [2,3]
    static cf_word parse(const std::string& s);
    std::string str() const;
};

struct convergent {
    bigint p;
    bigint q;
    long index;  // n >= 1
};

// Running state of the recursion p_n = a_n p_{n-1} + p_{n-2},
// q_n = a_n q_{n-1} + q_{n-2}, seeded with p_{-1}=1, p_0=0, q_{-1}=0, q_0=1.
struct convergent_state {
    bigint p_prev{1}, p{0};
    bigint q_prev{0}, q{1};
    long length = 0;
    void push(const bigint& a);
};

// (p_k, q_k) for k = 1..n. Errors on the empty word.
std::vector<convergent> convergents(const cf_word& word);

// q_n of the word (1 for the empty word) and the pair (q_n, q_{n-1}).
bigint q_of(const cf_word& word);
std::pair<bigint, bigint> q_pair(const cf_word& word);

// p_n/q_n evaluated bottom-up as a nested fraction; the independent oracle
// for the recursion. Errors on the empty word.
bigrat evaluate(const cf_word& word);

struct expansion {
    cf_word word;
    long trusted;  // digits valid for every number consistent with the input
};

// Canonical Euclidean expansion of an exact rational in (0,1); the last
// digit is >= 2, so expand_real(evaluate(w)) == w for canonical words.
expansion expand_real(const bigrat& value, long max_terms = LONG_MAX);

// Decimal input with k stated digits of precision: the true number lies in
// [center - 10^-k, center + 10^-k]. Digits are emitted only while that whole
// interval sits inside one cylinder.
expansion expand_decimal(const bigrat& center, long precision_digits, long max_terms = LONG_MAX);

// Certified common expansion of every x in [lo, hi] (clamped to [0,1]).
expansion expand_interval(bigrat lo, bigrat hi, long max_terms = LONG_MAX);

// Cylinder of the word per the parity convention: even order gives
// [p/q, (p+p')/(q+q')), odd order the mirror image with the right end closed.
struct basic_interval {
    bigrat left, right;
    bool closed_left, closed_right;
    long order;
    bigrat length() const { return right - left; }
};

basic_interval basic_interval_of(const cf_word& word);

// q_n >= 2^((n-1)/2) and prod a_k <= q_n <= prod (a_k+1), per prefix,
// all compared exactly.
struct growth_row {
    long n;
    bigint q;
    bool pow2_ok, lower_ok, upper_ok;
};
struct growth_report {
    std::vector<growth_row> rows;
    bool all_hold = true;
};
growth_report check_growth_bounds(const cf_word& word);

// Ratio q_n(word) / q_{n-1}(word with position k deleted) together with the
// bracket [(a_k+1)/2, a_k+1] it must land in.
struct deletion_ratio_result {
    bigrat ratio, lower, upper;
    bool within;
};
deletion_ratio_result deletion_ratio(const cf_word& word, size_t k);  // k is 1-based

}  // namespace cfkit
