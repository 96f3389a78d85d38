#include "cfkit/numeric.hpp"

#include <mpfr.h>

#include <cctype>
#include <cmath>
#include <cstring>

namespace cfkit {

bigrat make_rat(const bigint& num, const bigint& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    bigrat q(num, den);
    q.canonicalize();
    return q;
}

double log_of(const bigint& n) {
    if (n <= 0) throw std::domain_error("log_of: argument must be positive");
    long e2 = 0;
    double d = mpz_get_d_2exp(&e2, n.get_mpz_t());
    return std::log(d) + static_cast<double>(e2) * M_LN2;
}

double log_of(const bigrat& q) {
    if (q <= 0) throw std::domain_error("log_of: argument must be positive");
    return log_of(bigint(q.get_num())) - log_of(bigint(q.get_den()));
}

bigint floor_rat(const bigrat& q) {
    bigint r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

size_t decimal_digits(const bigint& n) {
    return mpz_sizeinbase(n.get_mpz_t(), 10);
}

bigint ipow(const bigint& base, unsigned long e) {
    // Refuse results beyond ~2^31 bits; callers enforce their own budgets
    // but this guards against runaway allocations.
    double bits = static_cast<double>(e) * mpz_sizeinbase(base.get_mpz_t(), 2);
    if (bits > 2.0e9) throw budget_error("ipow: result would exceed 2^31 bits");
    bigint r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

bigint iroot(const bigint& n, unsigned long k) {
    if (n < 0) throw std::domain_error("iroot: negative radicand");
    if (k == 0) throw std::domain_error("iroot: zero index");
    bigint r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

bigint floor_pow(const bigint& base, unsigned long num, unsigned long den) {
    if (base < 1) throw std::domain_error("floor_pow: base must be >= 1");
    if (den == 1) return ipow(base, num);
    return iroot(ipow(base, num), den);
}

namespace {

struct mpfr_val {
    mpfr_t v;
    explicit mpfr_val(mpfr_prec_t prec) { mpfr_init2(v, prec); }
    ~mpfr_val() { mpfr_clear(v); }
    mpfr_val(const mpfr_val&) = delete;
    mpfr_val& operator=(const mpfr_val&) = delete;
};

// floor of a positive mpfr value computed twice with directed rounding.
// Returns the common floor, or nullopt when the two directions disagree.
template <typename Compute>
std::optional<bigint> certified_floor(mpfr_prec_t prec, Compute&& compute) {
    mpfr_val lo(prec), hi(prec);
    compute(lo.v, MPFR_RNDD);
    compute(hi.v, MPFR_RNDU);
    bigint flo, fhi;
    mpfr_get_z(flo.get_mpz_t(), lo.v, MPFR_RNDD);
    mpfr_get_z(fhi.get_mpz_t(), hi.v, MPFR_RNDD);
    if (flo == fhi) return flo;
    return std::nullopt;
}

}  // namespace

bigint floor_exp(const bigint& coeff, unsigned long n) {
    if (coeff < 1) throw std::domain_error("floor_exp: coeff must be >= 1");
    double bits_needed = 1.4427 * static_cast<double>(n) +
                         mpz_sizeinbase(coeff.get_mpz_t(), 2) + 64;
    if (bits_needed > 2.0e9) throw budget_error("floor_exp: result too large");
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits_needed);
    for (int attempt = 0; attempt < 4; ++attempt) {
        auto r = certified_floor(prec, [&](mpfr_ptr out, mpfr_rnd_t rnd) {
            mpfr_set_ui(out, n, rnd);
            mpfr_exp(out, out, rnd);
            mpfr_mul_z(out, out, coeff.get_mpz_t(), rnd);
        });
        if (r) return *r;
        prec *= 2;
    }
    throw precision_error("floor_exp: could not certify floor(coeff * e^n)");
}

bigint floor_pow_lambda(const bigint& base, const bigrat& beta, int k) {
    if (base < 2) throw std::domain_error("floor_pow_lambda: base must be >= 2");
    if (beta <= 0) throw std::domain_error("floor_pow_lambda: beta must be positive");
    if (k != 1 && k != 2) throw std::invalid_argument("floor_pow_lambda: k must be 1 or 2");
    // lambda^2 - lambda = (beta-1) lambda + 1 collapses to exactly 1 at
    // beta = 1; directed rounding can never certify an exact integer power.
    if (k == 2 && beta == 1) return base;

    double b = bigrat(beta).get_d();
    double lambda = (b + std::sqrt(b * b + 4.0)) / 2.0;
    double x = (k == 1) ? lambda - 1.0 : lambda * lambda - lambda;
    double base_bits = static_cast<double>(mpz_sizeinbase(base.get_mpz_t(), 2));
    double bits_needed = x * base_bits + base_bits + 128;
    if (bits_needed > 2.0e9) throw budget_error("floor_pow_lambda: result too large");

    mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits_needed);
    for (int attempt = 0; attempt < 4; ++attempt) {
        auto r = certified_floor(prec, [&](mpfr_ptr out, mpfr_rnd_t rnd) {
            // lambda = (beta + sqrt(beta^2 + 4)) / 2, all directed the same way:
            // every intermediate is positive and the map is monotone in each.
            mpfr_val lam(prec), t(prec);
            mpfr_set_q(t.v, beta.get_mpq_t(), rnd);
            mpfr_sqr(lam.v, t.v, rnd);
            mpfr_add_ui(lam.v, lam.v, 4, rnd);
            mpfr_sqrt(lam.v, lam.v, rnd);
            mpfr_add(lam.v, lam.v, t.v, rnd);
            mpfr_div_ui(lam.v, lam.v, 2, rnd);
            if (k == 1) {
                mpfr_sub_ui(lam.v, lam.v, 1, rnd);  // lambda > 1, stays positive
            } else {
                mpfr_val lm1(prec);
                mpfr_sub_ui(lm1.v, lam.v, 1, rnd);
                mpfr_mul(lam.v, lam.v, lm1.v, rnd);
            }
            mpfr_set_z(t.v, base.get_mpz_t(), rnd);
            mpfr_pow(out, t.v, lam.v, rnd);
        });
        if (r) return *r;
        prec *= 2;
    }
    throw precision_error("floor_pow_lambda: could not certify the floor");
}

double log_sum(double a, double b) {
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

bigrat parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty input");
    const auto bad = [&] { throw std::invalid_argument("parse_rational: malformed '" + s + "'"); };
    size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) bad();

    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos && dot != std::string::npos) bad();

    for (size_t i = start; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])) && s[i] != '/' && s[i] != '.') bad();

    if (slash != std::string::npos) {
        bigrat q;
        if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0) bad();
        if (q.get_den() == 0) bad();
        q.canonicalize();
        return q;
    }
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t frac_len = s.size() - dot - 1;
        if (digits == "-" || digits == "+" || digits.empty()) bad();
        bigint num(digits, 10);  // explicit base: leading zeros are not octal
        bigint den = ipow(bigint(10), frac_len);
        return make_rat(num, den);
    }
    return bigrat(bigint(s, 10));
}

std::string rational_str(const bigrat& q) {
    return q.get_str();
}

uint64_t fnv1a64(const std::string& s, uint64_t h) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

uint64_t fnv1a64_mix(uint64_t h, uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace cfkit
