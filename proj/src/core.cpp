#include "cfkit/core.hpp"

#include <cctype>
#include <sstream>

namespace cfkit {

void cf_word::push(bigint a) {
    if (a < 1) throw std::invalid_argument("cf_word: partial quotients must be >= 1");
    digits.push_back(std::move(a));
}

void cf_word::validate() const {
    for (const bigint& a : digits)
        if (a < 1) throw std::invalid_argument("cf_word: partial quotients must be >= 1");
}

cf_word cf_word::prefix(size_t n) const {
    if (n > digits.size()) throw std::out_of_range("cf_word::prefix: length exceeds word");
    cf_word w;
    w.digits.assign(digits.begin(), digits.begin() + n);
    return w;
}

cf_word cf_word::parse(const std::string& s) {
    cf_word w;
    if (s.empty()) return w;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw std::invalid_argument("cf_word::parse: empty digit in '" + s + "'");
        for (char c : tok)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw std::invalid_argument("cf_word::parse: bad digit '" + tok + "'");
        w.push(bigint(tok, 10));
    }
    return w;
}

std::string cf_word::str() const {
    std::string out;
    for (size_t i = 0; i < digits.size(); ++i) {
        if (i) out += ',';
        out += digits[i].get_str();
    }
    return out;
}

void convergent_state::push(const bigint& a) {
    bigint pn = a * p + p_prev;
    bigint qn = a * q + q_prev;
    p_prev = std::move(p);
    p = std::move(pn);
    q_prev = std::move(q);
    q = std::move(qn);
    ++length;
}

std::vector<convergent> convergents(const cf_word& word) {
    if (word.empty()) throw std::domain_error("empty word has no convergents");
    std::vector<convergent> out;
    out.reserve(word.size());
    convergent_state st;
    for (const bigint& a : word.digits) {
        st.push(a);
        out.push_back({st.p, st.q, st.length});
    }
    return out;
}

bigint q_of(const cf_word& word) {
    convergent_state st;
    for (const bigint& a : word.digits) st.push(a);
    return st.q;
}

std::pair<bigint, bigint> q_pair(const cf_word& word) {
    convergent_state st;
    for (const bigint& a : word.digits) st.push(a);
    return {st.q, st.q_prev};
}

bigrat evaluate(const cf_word& word) {
    if (word.empty()) throw std::domain_error("cannot evaluate the empty word");
    bigrat v(0);
    for (auto it = word.digits.rbegin(); it != word.digits.rend(); ++it) {
        bigrat t = bigrat(*it) + v;
        v = bigrat(1) / t;
    }
    return v;
}

expansion expand_real(const bigrat& value, long max_terms) {
    if (value <= 0 || value >= 1)
        throw std::domain_error("expand_real: value must lie in (0,1)");
    cf_word w;
    bigint num = value.get_num();
    bigint den = value.get_den();
    while (num != 0 && static_cast<long>(w.size()) < max_terms) {
        bigint a, r;
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), den.get_mpz_t(), num.get_mpz_t());
        w.push(std::move(a));
        den = std::move(num);
        num = std::move(r);
    }
    long n = static_cast<long>(w.size());
    return {std::move(w), n};
}

expansion expand_interval(bigrat lo, bigrat hi, long max_terms) {
    if (lo > hi) std::swap(lo, hi);
    if (lo < 0) lo = 0;
    if (hi > 1) hi = 1;
    cf_word w;
    while (static_cast<long>(w.size()) < max_terms) {
        if (lo <= 0 || hi <= 0) break;  // digits are unbounded near 0
        bigrat inv_hi = bigrat(1) / hi;
        bigint d = floor_rat(inv_hi);
        if (d < 1) break;
        // The whole interval must sit in the cylinder (1/(d+1), 1/d].
        if (!(lo > make_rat(1, d + 1) && hi <= make_rat(1, d))) break;
        // Gauss step x -> 1/x - d reverses orientation.
        bigrat nlo = inv_hi - bigrat(d);
        bigrat nhi = bigrat(1) / lo - bigrat(d);
        w.push(std::move(d));
        lo = std::move(nlo);
        hi = std::move(nhi);
    }
    long n = static_cast<long>(w.size());
    return {std::move(w), n};
}

expansion expand_decimal(const bigrat& center, long precision_digits, long max_terms) {
    if (center <= 0 || center >= 1)
        throw std::domain_error("expand_decimal: value must lie in (0,1)");
    if (precision_digits < 1)
        throw std::invalid_argument("expand_decimal: precision must be >= 1 digit");
    bigrat delta = make_rat(1, ipow(bigint(10), precision_digits));
    return expand_interval(center - delta, center + delta, max_terms);
}

basic_interval basic_interval_of(const cf_word& word) {
    if (word.empty()) return {bigrat(0), bigrat(1), true, false, 0};
    convergent_state st;
    for (const bigint& a : word.digits) st.push(a);
    bigrat endpoint = make_rat(st.p, st.q);
    bigrat mediant = make_rat(st.p + st.p_prev, st.q + st.q_prev);
    long n = st.length;
    if (n % 2 == 0) return {endpoint, mediant, true, false, n};
    return {mediant, endpoint, false, true, n};
}

growth_report check_growth_bounds(const cf_word& word) {
    if (word.empty()) throw std::domain_error("check_growth_bounds: empty word");
    growth_report rep;
    convergent_state st;
    bigint prod_lo(1), prod_hi(1), two_pow(1);  // two_pow = 2^(n-1)
    for (const bigint& a : word.digits) {
        st.push(a);
        if (st.length > 1) two_pow <<= 1;
        prod_lo *= a;
        prod_hi *= a + 1;
        // q_n >= 2^((n-1)/2)  <=>  q_n^2 >= 2^(n-1)
        bool p2 = st.q * st.q >= two_pow;
        bool lo = prod_lo <= st.q;
        bool hi = st.q <= prod_hi;
        rep.rows.push_back({st.length, st.q, p2, lo, hi});
        rep.all_hold = rep.all_hold && p2 && lo && hi;
    }
    return rep;
}

deletion_ratio_result deletion_ratio(const cf_word& word, size_t k) {
    if (word.empty()) throw std::domain_error("deletion_ratio: empty word");
    if (k < 1 || k > word.size()) throw std::out_of_range("deletion_ratio: position out of range");
    bigint q_full = q_of(word);
    cf_word without;
    for (size_t i = 0; i < word.size(); ++i)
        if (i != k - 1) without.push(word.digits[i]);
    bigint q_del = q_of(without);  // q_0 = 1 when the word had one digit
    const bigint& a = word.digits[k - 1];
    bigrat ratio = make_rat(q_full, q_del);
    bigrat lower = make_rat(a + 1, 2);
    bigrat upper(a + 1);
    return {ratio, lower, upper, lower <= ratio && ratio <= upper};
}

}  // namespace cfkit
