#include "cfkit/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace cfkit {

exponent_estimate tau_estimate(const cf_word& word) {
    const size_t N = word.size();
    if (N < 100) throw std::domain_error("window too short for estimation");

    std::vector<bigint> sorted = word.digits;
    std::sort(sorted.begin(), sorted.end());

    const size_t mid = (N + 1) / 2;  // ceil(N/2), 1-based
    exponent_estimate est;
    est.window_lo = mid;
    est.window_hi = N;
    if (sorted[mid - 1] <= 2) {
        // The digits do not tend to infinity, so sum a_n^-s diverges for all s.
        est.value = std::numeric_limits<double>::infinity();
        return est;
    }
    double best = 0.0;
    for (size_t i = mid; i <= N; ++i) {
        double v = std::log(static_cast<double>(i)) / log_of(sorted[i - 1]);
        if (v > best) best = v;
    }
    est.value = best;
    for (double s : {best - 0.1, best + 0.1}) {
        if (s < 0) s = 0;
        double sum = 0.0;
        for (const bigint& a : word.digits) sum += std::exp(-s * log_of(a));
        est.partial_sums.emplace_back(s, sum);
    }
    return est;
}

ratio_trace dirichlet_ratio_trace(const cf_word& word) {
    if (word.size() < 3) throw std::domain_error("ratio trace requires a word of length >= 3");
    ratio_trace tr;
    tr.entries.reserve(word.size() - 2);
    convergent_state st;
    st.push(word.digits[0]);
    double sup = 0.0;
    for (size_t n = 2; n + 1 <= word.size(); ++n) {
        st.push(word.digits[n - 1]);  // state now holds q_n
        double ratio = (log_of(word.digits[n - 1]) + log_of(word.digits[n])) / log_of(st.q);
        sup = tr.entries.empty() ? ratio : std::max(sup, ratio);
        tr.entries.push_back({static_cast<long>(n), ratio, sup});
    }
    return tr;
}

std::vector<std::pair<long, double>> levy_trace(const cf_word& word) {
    if (word.empty()) throw std::domain_error("levy_trace: empty word");
    std::vector<std::pair<long, double>> out;
    out.reserve(word.size());
    convergent_state st;
    for (const bigint& a : word.digits) {
        st.push(a);
        out.emplace_back(st.length, log_of(st.q) / static_cast<double>(st.length));
    }
    return out;
}

double psi_to_Psi(const approximation_rate& rate, const bigint& q) {
    if (rate.c <= 0) throw std::domain_error("psi_to_Psi: coefficient must be positive");
    if (q < 1) throw std::domain_error("psi_to_Psi: q must be a positive integer");
    double log_t = std::log(rate.c) + (1.0 - rate.gamma) * log_of(q);
    if (log_t >= 0.0) throw std::domain_error("Dirichlet threshold exceeded");
    double t = std::exp(log_t);
    return t / (1.0 - t);
}

psi_function psi_function::constant_of(bigrat v) {
    if (v <= 0) throw std::domain_error("psi_function: constant must be positive");
    psi_function f;
    f.constant = std::move(v);
    return f;
}

psi_function psi_function::from_rate(approximation_rate r, double scale) {
    if (scale <= 0) throw std::domain_error("psi_function: scale must be positive");
    psi_function f;
    f.rate = r;
    f.scale = scale;
    return f;
}

std::vector<long> g_psi_hits(const cf_word& word, const psi_function& psi) {
    if (word.size() < 3) throw std::domain_error("g_psi_hits requires a word of length >= 3");
    std::vector<long> hits;
    convergent_state st;
    for (size_t n = 1; n + 1 <= word.size(); ++n) {
        st.push(word.digits[n - 1]);
        bigint prod = word.digits[n - 1] * word.digits[n];
        bool hit = false;
        if (psi.constant) {
            hit = bigrat(prod) >= *psi.constant;
        } else if (psi.rate) {
            double log_psi = std::log(psi_to_Psi(*psi.rate, st.q)) + std::log(psi.scale);
            double tol = 1e-9 * std::max(1.0, std::fabs(log_psi));
            hit = log_of(prod) >= log_psi - tol;
        } else {
            throw std::invalid_argument("g_psi_hits: psi_function has no representation");
        }
        if (hit) hits.push_back(static_cast<long>(n));
    }
    return hits;
}

}  // namespace cfkit
