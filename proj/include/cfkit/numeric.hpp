#pragma once

// Exact arithmetic helpers shared by every module: GMP integer/rational
// aliases, certified logarithms of huge integers, exact integer roots,
// and floor(base^x) for rational and algebraic-irrational exponents.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace cfkit {

using bigint = mpz_class;
using bigrat = mpq_class;

// Exact mode ran past the configured decimal-digit budget. `level` names the
// construction level that blew it (0 when not level-specific).
struct budget_error : std::runtime_error {
    int level;
    explicit budget_error(const std::string& msg, int lvl = 0)
        : std::runtime_error(msg), level(lvl) {}
};

// floor(base^x) could not be certified at the maximum working precision.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// num/den with the canonical form enforced.
bigrat make_rat(const bigint& num, const bigint& den);

// Natural log of a positive integer, from the bit length and the leading
// 53 bits. Relative error stays below 1e-12 even for 10^5-digit inputs.
double log_of(const bigint& n);
double log_of(const bigrat& q);  // q > 0

// floor(q) for a nonnegative rational.
bigint floor_rat(const bigrat& q);

// Decimal digit count (may overestimate by one; used for budget checks).
size_t decimal_digits(const bigint& n);

bigint ipow(const bigint& base, unsigned long e);
bigint iroot(const bigint& n, unsigned long k);  // floor(n^(1/k)), n >= 0

// floor(base^(num/den)) for base >= 1, exact: floor((base^num)^(1/den)).
bigint floor_pow(const bigint& base, unsigned long num, unsigned long den);

// floor(coeff * e^n) with coeff >= 1, certified by directed rounding.
bigint floor_exp(const bigint& coeff, unsigned long n);

// floor(base^x) where x = lambda - 1 (k = 1) or lambda^2 - lambda (k = 2)
// and lambda is the positive root of t^2 - beta t - 1 for rational beta > 0.
// Only needed when lambda is irrational; certified by directed rounding and
// throws precision_error if the floor cannot be pinned down.
bigint floor_pow_lambda(const bigint& base, const bigrat& beta, int k);

// log(e^a + e^b) without leaving log space.
double log_sum(double a, double b);

// Parse "p/q", an integer, or a decimal string like "0.41421" into an
// exact rational. Throws std::invalid_argument on malformed input.
bigrat parse_rational(const std::string& s);
std::string rational_str(const bigrat& q);

// FNV-1a, used for schedule/seed fingerprints.
uint64_t fnv1a64(const std::string& s, uint64_t h = 1469598103934665603ULL);
uint64_t fnv1a64_mix(uint64_t h, uint64_t v);

}  // namespace cfkit
