#include "cfkit/dimension.hpp"

#include <algorithm>
#include <cmath>

namespace cfkit {

double dimension_formula(bool alpha_infinite, double beta) {
    if (beta < 0 || !std::isfinite(beta))
        throw std::domain_error("dimension_formula: beta must be a finite value >= 0");
    if (alpha_infinite) return 2.0 / (beta + 2.0);
    return 2.0 / (beta + 2.0 + std::sqrt(beta * beta + 4.0));
}

std::pair<double, double> jarnik_bounds(long m) {
    if (m < 8) throw std::domain_error("Jarnik bound requires m >= 8");
    double dm = static_cast<double>(m);
    return {1.0 - 1.0 / (dm * M_LN2), 1.0 - 1.0 / (8.0 * dm * std::log(dm))};
}

const char* verdict_name(measure_verdict v) {
    return v == measure_verdict::zero ? "zero" : "infinite";
}

measure_verdict hausdorff_verdict(double gamma, double s) {
    if (gamma < 0 || !std::isfinite(gamma))
        throw std::domain_error("hausdorff_verdict: gamma must be a finite value >= 0");
    if (!(s >= 0.0 && s < 1.0))
        throw std::domain_error("hausdorff_verdict: s must lie in [0,1)");
    // Series exponent 1-(2+gamma)s < -1 iff s > 2/(2+gamma); equality is the
    // harmonic boundary and diverges.
    return s * (2.0 + gamma) > 2.0 ? measure_verdict::zero : measure_verdict::infinite;
}

const char* position_class_name(position_class c) {
    switch (c) {
        case position_class::generic: return "generic";
        case position_class::block_c: return "m_j";
        case position_class::block_e: return "m_j_plus_1";
    }
    return "?";
}

const digit_range& level_spec::at(long k) const {
    if (k < 1 || k > size()) throw std::out_of_range("level_spec: position out of range");
    return ranges[k - 1];
}

position_class level_spec::class_at(long k) const {
    if (k < 1 || k > size()) throw std::out_of_range("level_spec: position out of range");
    return classes[k - 1];
}

level_spec level_spec::synthetic(const std::vector<long>& counts) {
    level_spec s;
    for (long M : counts) {
        if (M < 1) throw std::invalid_argument("level_spec::synthetic: counts must be >= 1");
        s.ranges.push_back({bigint(M + 1), bigint(2 * M)});
        s.classes.push_back(position_class::generic);
    }
    return s;
}

level_spec level_spec::from_schedule(const schedule& sched, long depth) {
    if (sched.mode != schedule_mode::exact)
        throw std::invalid_argument("level_spec::from_schedule: requires an exact-mode schedule");
    if (depth < 1) throw std::invalid_argument("level_spec::from_schedule: depth must be >= 1");
    long max_depth = sched.levels.empty() ? 0 : sched.levels.back().m + 2;
    if (depth > max_depth)
        throw std::out_of_range("level_spec::from_schedule: depth exceeds the schedule");

    level_spec s;
    long i = 0;  // seed index
    for (const auto& lv : sched.levels) {
        while (i < lv.r && s.size() < depth) {
            ++i;
            s.ranges.push_back(seed_range(sched.params, i));
            s.classes.push_back(position_class::generic);
        }
        if (s.size() < depth) {
            s.ranges.push_back({lv.floor_c + 1, 2 * lv.floor_c});
            s.classes.push_back(position_class::block_c);
        }
        if (s.size() < depth) {
            s.ranges.push_back({lv.floor_e + 1, 2 * lv.floor_e});
            s.classes.push_back(position_class::block_e);
        }
        if (s.size() == depth) return s;
    }
    return s;
}

bigint level_count(const level_spec& spec, long n) {
    if (n < 0 || n > spec.size())
        throw std::out_of_range("level_count: n exceeds the level spec");
    bigint prod(1);
    for (long k = 1; k <= n; ++k) prod *= spec.at(k).count();
    return prod;
}

double log_level_count(const level_spec& spec, long n) {
    if (n < 0 || n > spec.size())
        throw std::out_of_range("level_count: n exceeds the level spec");
    double s = 0;
    for (long k = 1; k <= n; ++k) s += log_of(spec.at(k).count());
    return s;
}

namespace {

void require_admissible(const cf_word& prefix, const level_spec& spec) {
    if (static_cast<long>(prefix.size()) > spec.size())
        throw std::out_of_range("prefix longer than the level spec");
    for (size_t k = 1; k <= prefix.size(); ++k) {
        const auto& r = spec.at(static_cast<long>(k));
        const bigint& d = prefix.at(k);
        if (d < r.lo || d > r.hi)
            throw std::invalid_argument("digit at position " + std::to_string(k) +
                                        " outside the admissible range");
    }
}

const digit_range& next_range(const cf_word& prefix, const level_spec& spec) {
    long n = static_cast<long>(prefix.size());
    if (n + 1 > spec.size()) throw std::out_of_range("level spec exhausted");
    return spec.at(n + 1);
}

}  // namespace

bigrat mass(const cf_word& prefix, const level_spec& spec) {
    require_admissible(prefix, spec);
    return make_rat(bigint(1), level_count(spec, static_cast<long>(prefix.size())));
}

bigrat fundamental_length(const cf_word& prefix, const level_spec& spec) {
    require_admissible(prefix, spec);
    const digit_range& r = next_range(prefix, spec);
    auto [q, q_prev] = q_pair(prefix);
    return make_rat(r.count(), (r.lo * q + q_prev) * ((r.hi + 1) * q + q_prev));
}

bigrat gap(const cf_word& prefix, const level_spec& spec) {
    require_admissible(prefix, spec);
    const digit_range& r = next_range(prefix, spec);
    auto [q, q_prev] = q_pair(prefix);
    return make_rat(bigint(1), (r.hi * q + q_prev) * q);
}

gap_parts gap_components(const cf_word& prefix, const level_spec& spec) {
    require_admissible(prefix, spec);
    const digit_range& r = next_range(prefix, spec);

    basic_interval enclosing = basic_interval_of(prefix);
    // J_n is the union of the child cylinder closures over the admissible
    // digits; consecutive-digit cylinders tile, so its endpoints come from
    // the two extreme children.
    cf_word lo_child = prefix;
    lo_child.push(r.lo);
    cf_word hi_child = prefix;
    hi_child.push(r.hi);
    basic_interval a = basic_interval_of(lo_child);
    basic_interval b = basic_interval_of(hi_child);
    bigrat j_left = a.left < b.left ? a.left : b.left;
    bigrat j_right = a.right > b.right ? a.right : b.right;

    return {j_left - enclosing.left, enclosing.right - j_right};
}

std::vector<measure_probe> local_dim_probe(const cf_word& word, const level_spec& spec,
                                           const std::vector<long>& depths) {
    std::vector<measure_probe> out;
    out.reserve(depths.size());
    for (long n : depths) {
        if (n < 1 || n > static_cast<long>(word.size()))
            throw std::out_of_range("local_dim_probe: depth outside the word");
        cf_word prefix = word.prefix(static_cast<size_t>(n));
        bigrat mu = mass(prefix, spec);
        bigrat len = fundamental_length(prefix, spec);
        double log_mu = log_of(mu);
        double log_len = log_of(len);
        // The probe at depth n is classified by the range type feeding |J_n|,
        // i.e. the next position's class.
        position_class cls = spec.class_at(n + 1);
        out.push_back({n, cls, log_mu, log_len, log_mu / log_len});
    }
    return out;
}

std::vector<measure_probe> local_dim_probe(const schedule& sched,
                                           const std::vector<long>& depths) {
    std::vector<measure_probe> out;
    out.reserve(depths.size());
    for (long n : depths) {
        const schedule_level* lv = nullptr;
        bool at_m = false;
        for (const auto& l : sched.levels) {
            if (l.m == n) { lv = &l; at_m = true; break; }
            if (l.m + 1 == n) { lv = &l; at_m = false; break; }
        }
        if (!lv)
            throw std::invalid_argument(
                "local_dim_probe(schedule): depths must be m_j or m_j+1 for a computed level");
        double log_mu, log_len;
        position_class cls;
        if (at_m) {
            // |J_{m_j}| = floor_c / ((floor_c+1) q_m + q_{m-1}) ((2 floor_c+1) q_m + q_{m-1})
            double fq = lv->log_floor_c + lv->log_q_m;
            double d1 = log_sum(log_sum(fq, lv->log_q_m), lv->log_q_m_minus1);
            double d2 = log_sum(log_sum(fq + M_LN2, lv->log_q_m), lv->log_q_m_minus1);
            log_len = lv->log_floor_c - d1 - d2;
            log_mu = -lv->log_count_m;
            cls = position_class::block_c;
        } else {
            double fq = lv->log_floor_e + lv->log_q_m1;
            double d1 = log_sum(log_sum(fq, lv->log_q_m1), lv->log_q_m);
            double d2 = log_sum(log_sum(fq + M_LN2, lv->log_q_m1), lv->log_q_m);
            log_len = lv->log_floor_e - d1 - d2;
            log_mu = -lv->log_count_m1;
            cls = position_class::block_e;
        }
        out.push_back({n, cls, log_mu, log_len, log_mu / log_len});
    }
    return out;
}

}  // namespace cfkit
