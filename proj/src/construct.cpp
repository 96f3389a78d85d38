#include "cfkit/construct.hpp"

#include <cmath>
#include <limits>

namespace cfkit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

unsigned long to_ulong(const bigint& v, const char* what) {
    if (v < 0 || !v.fits_ulong_p())
        throw std::invalid_argument(std::string(what) + ": value does not fit a machine word");
    return v.get_ui();
}

// The progressively built word. Exact mode carries the full p/q recursion
// and derives logs from it; logspace mode carries only log q_n, log q_{n-1}.
struct progressive {
    schedule_mode mode;
    convergent_state st;
    double lq = 0.0;        // log q_n   (q_0 = 1)
    double lq_prev = kNegInf;  // log q_{n-1} (q_{-1} = 0)
    long length = 0;

    explicit progressive(schedule_mode m) : mode(m) {}

    void push_log(double log_a) {
        double nlq = (lq_prev == kNegInf) ? log_a + lq : log_sum(log_a + lq, lq_prev);
        lq_prev = lq;
        lq = nlq;
        ++length;
    }

    void push(const bigint& a) {
        if (mode == schedule_mode::exact) {
            st.push(a);
            lq_prev = (st.q_prev == 0) ? kNegInf : log_of(st.q_prev);
            lq = log_of(st.q);
            ++length;
        } else {
            push_log(log_of(a));
        }
    }
};

}  // namespace

lambda_value lambda_of(const bigrat& beta) {
    if (beta <= 0)
        throw std::domain_error("lambda_of: beta must be positive (beta = 0 has no insertion schedule)");
    lambda_value lv;
    lv.beta = beta;
    bigint P = beta.get_num();
    bigint Q = beta.get_den();
    bigint disc = P * P + 4 * Q * Q;
    if (mpz_perfect_square_p(disc.get_mpz_t())) {
        bigint s = sqrt(disc);
        lv.exact = make_rat(P + s, 2 * Q);
        lv.approx = lv.exact->get_d();
    } else {
        double b = beta.get_d();
        lv.approx = (b + std::sqrt(b * b + 4.0)) / 2.0;
    }
    return lv;
}

const char* selector_name(selector s) {
    switch (s) {
        case selector::min: return "min";
        case selector::max: return "max";
        case selector::seeded_random: return "seeded-random";
    }
    return "?";
}

selector selector_from(const std::string& name) {
    if (name == "min") return selector::min;
    if (name == "max") return selector::max;
    if (name == "seeded-random" || name == "random") return selector::seeded_random;
    throw std::invalid_argument("unknown selector '" + name + "'");
}

construction_params make_params(const bigrat& alpha, const bigrat& beta,
                                const bigint& n1_knob, long digit_budget) {
    if (alpha < 0) throw std::domain_error("make_params: alpha must be >= 0");
    if (beta <= 0) throw std::domain_error("make_params: beta must be positive");
    construction_params p;
    p.alpha = alpha;
    p.beta = beta;
    p.lambda = lambda_of(beta);
    if (alpha == 0) {
        p.family = seed_family::f_zero;
        p.n0 = 0;
        if (n1_knob < 2) throw std::invalid_argument("make_params: n1 knob must be >= 2");
        p.n1 = n1_knob;
        return p;
    }
    p.family = seed_family::f_alpha;
    unsigned long A = to_ulong(bigint(alpha.get_num()), "make_params: alpha numerator");
    unsigned long B = to_ulong(bigint(alpha.get_den()), "make_params: alpha denominator");
    // N0 = floor(2^alpha) + 1 = floor((2^A)^(1/B)) + 1, exact.
    p.n0 = floor_pow(bigint(2), A, B) + 1;
    // n1 = max{N0, floor((N0+10)^((2 N0 + 20)/alpha))} + 1; the exponent is
    // the rational (2 N0 + 20) B / A.
    bigint e_num = (2 * p.n0 + 20) * bigint(B);
    double digits_est = e_num.get_d() / static_cast<double>(A) *
                        std::log10(bigint(p.n0 + 10).get_d());
    if (digits_est > static_cast<double>(digit_budget))
        throw budget_error("make_params: n1 would exceed the digit budget", 1);
    bigint t = floor_pow(p.n0 + 10, to_ulong(e_num, "make_params: exponent"), A);
    p.n1 = (t > p.n0 ? t : p.n0) + 1;
    return p;
}

digit_range seed_range(const construction_params& p, long i) {
    if (i < 1) throw std::out_of_range("seed_range: positions start at 1");
    if (p.family == seed_family::f_alpha) {
        unsigned long A = to_ulong(bigint(p.alpha.get_num()), "seed_range: alpha numerator");
        unsigned long B = to_ulong(bigint(p.alpha.get_den()), "seed_range: alpha denominator");
        bigint f = floor_pow(p.n0 + i, B, A);  // floor((N0+i)^(1/alpha))
        return {f + 1, 2 * f};
    }
    bigint f = floor_exp(bigint(1), static_cast<unsigned long>(i));
    bigint h = floor_exp(bigint(2), static_cast<unsigned long>(i));
    return {f + 1, h};
}

bigint pick_digit(const digit_range& r, selector sel, uint64_t rng_seed,
                  const char* tag, long index) {
    if (r.lo > r.hi) throw std::invalid_argument("pick_digit: empty range");
    switch (sel) {
        case selector::min: return r.lo;
        case selector::max: return r.hi;
        case selector::seeded_random: break;
    }
    uint64_t h = fnv1a64(tag, fnv1a64_mix(1469598103934665603ULL, rng_seed));
    h = fnv1a64_mix(h, static_cast<uint64_t>(index));
    // offset = floor(u * count) with u the top 53 bits of the hash.
    bigint u53(static_cast<unsigned long>(h >> 11));
    bigint offset = (r.count() * u53) >> 53;
    return r.lo + offset;
}

bigint seed_digit(const construction_params& p, seed_policy policy, long i) {
    return pick_digit(seed_range(p, i), policy.sel, policy.rng_seed, "seed", i);
}

uint64_t construction_fingerprint(const construction_params& p, seed_policy seed,
                                  selector digit_sel) {
    uint64_t h = fnv1a64("cfkit.construction");
    h = fnv1a64(rational_str(p.alpha), h);
    h = fnv1a64(rational_str(p.beta), h);
    h = fnv1a64(p.family == seed_family::f_alpha ? "F(alpha)" : "F(0)", h);
    h = fnv1a64(p.n1.get_str(), h);
    h = fnv1a64(selector_name(seed.sel), h);
    h = fnv1a64(selector_name(digit_sel), h);
    h = fnv1a64_mix(h, seed.rng_seed);
    return h;
}

seed_word make_seed(const construction_params& p, seed_policy policy, long length) {
    if (length < 1) throw std::invalid_argument("make_seed: length must be >= 1");
    seed_word s;
    s.family = p.family;
    s.policy = policy;
    s.fingerprint = construction_fingerprint(p, policy, policy.sel);
    for (long i = 1; i <= length; ++i) s.word.push(seed_digit(p, policy, i));
    return s;
}

namespace {

// Exponents lambda - 1 and lambda^2 - lambda as exact rationals when lambda
// is rational; floor(n^x) then reduces to an integer root.
bigint floor_lambda_pow(const construction_params& p, const bigint& n, int k) {
    if (p.lambda.exact) {
        bigrat x = (k == 1) ? bigrat(*p.lambda.exact - 1)
                            : bigrat(*p.lambda.exact * *p.lambda.exact - *p.lambda.exact);
        x.canonicalize();
        unsigned long num = to_ulong(bigint(x.get_num()), "lambda exponent numerator");
        unsigned long den = to_ulong(bigint(x.get_den()), "lambda exponent denominator");
        return floor_pow(n, num, den);
    }
    return floor_pow_lambda(n, p.beta, k);
}

double lambda_exponent(const construction_params& p, int k) {
    double lam = p.lambda.approx;
    return (k == 1) ? lam - 1.0 : lam * lam - lam;
}

// log of the digit chosen by the selector inside [floor+1, 2 floor], given
// only log(floor). First-order: the +1 against floor is below 1e-12 relative
// for every floor this construction produces.
double log_pick(double log_floor, selector sel, uint64_t rng_seed, const char* tag, long j) {
    switch (sel) {
        case selector::min: return log_floor;
        case selector::max: return log_floor + M_LN2;
        case selector::seeded_random: break;
    }
    uint64_t h = fnv1a64(tag, fnv1a64_mix(1469598103934665603ULL, rng_seed));
    h = fnv1a64_mix(h, static_cast<uint64_t>(j));
    double u = static_cast<double>(h >> 11) * 0x1p-53;
    return log_floor + std::log1p(u);
}

}  // namespace

schedule build_schedule(const construction_params& p, seed_policy seed, int j_max,
                        schedule_mode mode, selector digit_sel, long digit_budget) {
    if (j_max < 1) throw std::invalid_argument("build_schedule: j_max must be >= 1");

    schedule sched;
    sched.params = p;
    sched.mode = mode;
    sched.seed = seed;
    sched.digit_sel = digit_sel;
    sched.digit_budget = digit_budget;
    sched.fingerprint = construction_fingerprint(p, seed, digit_sel);

    const bool exact = (mode == schedule_mode::exact);
    progressive word(mode);

    bigint n;          // n_j, exact mode
    double log_n = 0;  // both modes
    long i = 0;        // seed index consumed so far
    long r_prev = 0;
    double log_count = 0;     // cumulative log of admissible-range counts
    double prev_digit_log = 0;  // log of the previous word digit (for ratios)

    for (int j = 1; j <= j_max; ++j) {
        schedule_level lv;
        lv.j = j;

        if (j == 1) {
            log_n = log_of(p.n1);
            if (exact) n = p.n1;
        } else {
            log_n *= static_cast<double>(j - 1);  // n_{j} = n_{j-1}^{j-1}
            if (exact) {
                double digits10 = log_n / M_LN10 + 1;
                if (digits10 > static_cast<double>(digit_budget))
                    throw budget_error("digit budget exceeded at level " + std::to_string(j), j);
                n = ipow(n, static_cast<unsigned long>(j - 1));
            }
        }
        lv.log_n = log_n;

        if (exact) {
            lv.n = n;
            lv.floor_c = floor_lambda_pow(p, n, 1);
            lv.floor_e = floor_lambda_pow(p, n, 2);
            lv.c = pick_digit({lv.floor_c + 1, 2 * lv.floor_c}, digit_sel, seed.rng_seed, "c", j);
            lv.e = pick_digit({lv.floor_e + 1, 2 * lv.floor_e}, digit_sel, seed.rng_seed, "e", j);
            lv.log_floor_c = log_of(lv.floor_c);
            lv.log_floor_e = log_of(lv.floor_e);
            lv.log_c = log_of(lv.c);
            lv.log_e = log_of(lv.e);
        } else {
            lv.log_floor_c = lambda_exponent(p, 1) * log_n;
            lv.log_floor_e = lambda_exponent(p, 2) * log_n;
            lv.log_c = log_pick(lv.log_floor_c, digit_sel, seed.rng_seed, "c", j);
            lv.log_e = log_pick(lv.log_floor_e, digit_sel, seed.rng_seed, "e", j);
        }

        // Smallest representable r: at least one fresh seed digit per level.
        lv.threshold_pre_satisfied =
            exact ? (word.st.q >= n) : (word.lq >= log_n);
        // Off-block ratios live at n in [m_{j-1}+3, m_j - 1], where both
        // digits of the pair are seed digits (from n = 2 before block 1).
        const long window_start = (j == 1) ? 2 : (r_prev + 2 * (j - 2) + 3);
        double off_max = 0.0;
        bool have_off = false;
        while (true) {
            ++i;
            bigint a_cur = seed_digit(p, seed, i);
            double q_before = word.lq;  // log q_{n} for n = current length
            word.push(a_cur);
            double digit_log = log_of(a_cur);
            long n_ratio = word.length - 1;
            if (n_ratio >= window_start && q_before > 0) {
                double ratio = (prev_digit_log + digit_log) / q_before;
                off_max = have_off ? std::max(off_max, ratio) : ratio;
                have_off = true;
            }
            prev_digit_log = digit_log;
            log_count += log_of(seed_range(p, i).count());
            if (exact ? (word.st.q >= n) : (word.lq >= log_n)) break;
        }
        lv.off_block_max = have_off ? off_max : 0.0;
        lv.r = i;
        lv.m = lv.r + 2 * (j - 1);
        if (lv.m != word.length)
            throw std::logic_error("build_schedule: position bookkeeping out of sync");
        lv.log_a_r = prev_digit_log;
        lv.log_q_m_minus1 = word.lq_prev;
        lv.log_q_m = word.lq;
        lv.log_count_m = log_count;

        if (exact) word.push(lv.c); else word.push_log(lv.log_c);
        lv.log_q_m1 = word.lq;
        log_count += lv.log_floor_c;
        lv.log_count_m1 = log_count;
        prev_digit_log = lv.log_c;

        if (exact) word.push(lv.e); else word.push_log(lv.log_e);
        lv.log_q_m2 = word.lq;
        log_count += lv.log_floor_e;
        prev_digit_log = lv.log_e;

        lv.log_a_next = log_of(seed_digit(p, seed, i + 1));
        r_prev = lv.r;
        sched.levels.push_back(std::move(lv));
    }
    return sched;
}

cf_word insert(const seed_word& seed, const schedule& sched, long trailing) {
    if (sched.mode != schedule_mode::exact)
        throw std::invalid_argument("insert: requires an exact-mode schedule");
    if (seed.fingerprint != sched.fingerprint ||
        construction_fingerprint(sched.params, seed.policy, sched.digit_sel) != sched.fingerprint)
        throw std::invalid_argument("mismatched seed/schedule fingerprint");
    if (trailing < 0) throw std::invalid_argument("insert: trailing must be >= 0");

    cf_word out;
    long i = 0;
    for (const auto& lv : sched.levels) {
        while (i < lv.r) {
            ++i;
            bigint a = seed_digit(sched.params, seed.policy, i);
            if (i <= static_cast<long>(seed.word.size()) && seed.word.at(i) != a)
                throw std::invalid_argument("mismatched seed/schedule fingerprint");
            out.push(std::move(a));
        }
        out.push(lv.c);
        out.push(lv.e);
    }
    for (long t = 0; t < trailing; ++t) {
        ++i;
        out.push(seed_digit(sched.params, seed.policy, i));
    }
    return out;
}

namespace {

membership_report_t report_targets(const construction_params& p) {
    membership_report_t rep;
    double lam = p.lambda.approx;
    rep.target_m = lam - 1.0;
    rep.target_m1 = (lam * lam - 1.0) / lam;  // = beta
    rep.target_m2 = 1.0 - 1.0 / lam;
    return rep;
}

}  // namespace

membership_report_t membership_report(const schedule& sched) {
    if (sched.levels.size() < 2)
        throw std::invalid_argument("membership_report: schedule depth must be >= 2");
    membership_report_t rep = report_targets(sched.params);
    double alpha = sched.params.alpha.get_d();
    for (const auto& lv : sched.levels) {
        level_diag d;
        d.j = lv.j;
        d.ratio_m = (lv.log_a_r + lv.log_c) / lv.log_q_m;
        d.ratio_m1 = (lv.log_c + lv.log_e) / lv.log_q_m1;
        d.ratio_m2 = (lv.log_e + lv.log_a_next) / lv.log_q_m2;
        d.off_block_max = lv.off_block_max;
        d.tau_term = std::exp(-(alpha + rep.eps) * lv.log_c) +
                     std::exp(-(alpha + rep.eps) * lv.log_e);
        d.threshold_pre_satisfied = lv.threshold_pre_satisfied;
        rep.tau_partial_sum += d.tau_term;
        rep.levels.push_back(d);
    }
    return rep;
}

membership_report_t membership_report(const cf_word& constructed, const schedule& sched) {
    if (sched.mode != schedule_mode::exact)
        throw std::invalid_argument("membership_report: word overload requires exact mode");
    if (sched.levels.size() < 2)
        throw std::invalid_argument("membership_report: schedule depth must be >= 2");
    long need = sched.levels.back().m + 3;
    if (static_cast<long>(constructed.size()) < need)
        throw std::invalid_argument("membership_report: word too short for the schedule");

    membership_report_t rep = report_targets(sched.params);
    double alpha = sched.params.alpha.get_d();

    // One pass over the word, capturing log q_n as we go.
    std::vector<double> lq(constructed.size() + 1, 0.0);
    convergent_state st;
    for (size_t n = 1; n <= constructed.size(); ++n) {
        st.push(constructed.at(n));
        lq[n] = log_of(st.q);
    }
    auto dlog = [&](long n) { return log_of(constructed.at(n)); };

    long prev_m2 = 0;
    for (const auto& lv : sched.levels) {
        level_diag d;
        d.j = lv.j;
        d.ratio_m = (dlog(lv.m) + dlog(lv.m + 1)) / lq[lv.m];
        d.ratio_m1 = (dlog(lv.m + 1) + dlog(lv.m + 2)) / lq[lv.m + 1];
        d.ratio_m2 = (dlog(lv.m + 2) + dlog(lv.m + 3)) / lq[lv.m + 2];
        double off = 0.0;
        bool have = false;
        for (long nn = std::max<long>(prev_m2 + 1, 2); nn < lv.m; ++nn) {
            double ratio = (dlog(nn) + dlog(nn + 1)) / lq[nn];
            off = have ? std::max(off, ratio) : ratio;
            have = true;
        }
        d.off_block_max = off;
        d.tau_term = std::exp(-(alpha + rep.eps) * dlog(lv.m + 1)) +
                     std::exp(-(alpha + rep.eps) * dlog(lv.m + 2));
        d.threshold_pre_satisfied = lv.threshold_pre_satisfied;
        rep.tau_partial_sum += d.tau_term;
        rep.levels.push_back(d);
        prev_m2 = lv.m + 2;
    }
    return rep;
}

}  // namespace cfkit
