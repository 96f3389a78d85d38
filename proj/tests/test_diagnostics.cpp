#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cfkit/diagnostics.hpp"

#include <algorithm>
#include <random>

using namespace cfkit;

namespace {

cf_word word_of(std::initializer_list<long> ds) {
    cf_word w;
    for (long d : ds) w.push(bigint(d));
    return w;
}

cf_word ones(size_t n) {
    cf_word w;
    for (size_t i = 0; i < n; ++i) w.push(bigint(1));
    return w;
}

cf_word ramp(size_t n) {  // a_k = k
    cf_word w;
    for (size_t i = 1; i <= n; ++i) w.push(bigint(i));
    return w;
}

}  // namespace

TEST_CASE("tau estimate: geometric digits give exponent near zero") {
    cf_word w;
    bigint a(1);
    for (int n = 1; n <= 1000; ++n) {
        a <<= 1;  // a_n = 2^n
        w.push(a);
    }
    auto est = tau_estimate(w);
    CHECK_FALSE(est.is_infinite());
    CHECK(est.value <= 0.02);
    REQUIRE(est.partial_sums.size() == 2);
    // The partial sum at s = value + 0.1 should already look summable
    // relative to the one below the estimate.
    CHECK(est.partial_sums[0].second >= est.partial_sums[1].second);
}

TEST_CASE("tau estimate: linear digits give exponent one") {
    auto est = tau_estimate(ramp(10000));
    CHECK(est.value >= 0.95);
    CHECK(est.value <= 1.05);
}

TEST_CASE("tau estimate: bounded digits diverge for every s") {
    auto est = tau_estimate(ones(500));
    CHECK(est.is_infinite());
    CHECK(est.partial_sums.empty());
}

TEST_CASE("tau estimate: window precondition") {
    CHECK_THROWS_WITH_AS(tau_estimate(ones(99)), "window too short for estimation",
                         std::domain_error);
}

TEST_CASE("tau estimate: permutation invariant") {
    std::mt19937_64 rng(99);
    cf_word w = ramp(500);
    auto v1 = tau_estimate(w).value;
    std::shuffle(w.digits.begin(), w.digits.end(), rng);
    CHECK(tau_estimate(w).value == v1);
}

TEST_CASE("ratio trace: worked values") {
    auto tr = dirichlet_ratio_trace(ones(10));
    for (auto& e : tr.entries) {
        CHECK(e.ratio == 0.0);
        CHECK(e.running_sup == 0.0);
    }

    auto t2 = dirichlet_ratio_trace(word_of({1, 1, 1, 1, 8}));
    // n = 4: log(a_4 a_5)/log q_4 = log 8 / log 5, with q_4 = 5.
    REQUIRE(t2.entries.back().n == 4);
    CHECK(t2.entries.back().ratio == doctest::Approx(std::log(8.0) / std::log(5.0)).epsilon(1e-12));

    CHECK_THROWS_AS(dirichlet_ratio_trace(word_of({1, 2})), std::domain_error);
}

TEST_CASE("ratio trace: running sup is monotone and stable under extension") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> digit(1, 50);
    cf_word w;
    for (int i = 0; i < 60; ++i) w.push(bigint(digit(rng)));
    auto tr = dirichlet_ratio_trace(w);
    for (size_t i = 1; i < tr.entries.size(); ++i)
        CHECK(tr.entries[i].running_sup >= tr.entries[i - 1].running_sup);
    for (auto& e : tr.entries) CHECK(e.ratio >= 0.0);  // a_n a_{n+1} >= 1 and q_n >= 2

    cf_word ext = w;
    for (int i = 0; i < 20; ++i) ext.push(bigint(digit(rng)));
    auto tr2 = dirichlet_ratio_trace(ext);
    for (size_t i = 0; i < tr.entries.size(); ++i) {
        CHECK(tr2.entries[i].ratio == tr.entries[i].ratio);
        CHECK(tr2.entries[i].running_sup == tr.entries[i].running_sup);
    }
}

TEST_CASE("levy trace: worked values") {
    auto lt = levy_trace(ones(10));
    REQUIRE(lt.size() == 10);
    CHECK(lt[9].first == 10);
    CHECK(lt[9].second == doctest::Approx(std::log(89.0) / 10.0).epsilon(1e-12));  // q_10 = 89

    auto l5 = levy_trace(word_of({5}));
    CHECK(l5[0].second == doctest::Approx(std::log(5.0)).epsilon(1e-12));
}

TEST_CASE("levy trace: factorial-growth digits give an unbounded trace") {
    auto lt = levy_trace(ramp(300));
    // log q_n / n >= log(n!)/n grows without bound; check monotone tail growth.
    CHECK(lt[299].second > lt[149].second);
    CHECK(lt[149].second > lt[49].second);
    CHECK(lt[299].second > 3.0);
}

TEST_CASE("psi to Psi: worked values and domain") {
    CHECK(psi_to_Psi({0.5, 1.0}, bigint(7)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(psi_to_Psi({1.0, 2.0}, bigint(10)) == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
    CHECK_THROWS_WITH_AS(psi_to_Psi({1.0, 1.0}, bigint(10)), "Dirichlet threshold exceeded",
                         std::domain_error);
}

TEST_CASE("psi to Psi: strictly increasing in q psi(q)") {
    bigint q(100);
    double prev = -1;
    for (double c = 0.05; c < 1.0; c += 0.05) {
        double v = psi_to_Psi({c, 1.0}, q);  // q psi(q) = c
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("g_psi_hits: constant thresholds compared exactly") {
    auto all = g_psi_hits(ones(12), psi_function::constant_of(bigrat(1)));
    CHECK(all.size() == 11);  // every n in [1, N-1]

    auto none = g_psi_hits(ones(12), psi_function::constant_of(bigrat(2)));
    CHECK(none.empty());

    cf_word alt;  // 1,3,1,3,...: a_n a_{n+1} = 3 always
    for (int i = 0; i < 12; ++i) alt.push(bigint(i % 2 == 0 ? 1 : 3));
    auto hits = g_psi_hits(alt, psi_function::constant_of(bigrat(3)));
    CHECK(hits.size() == alt.size() - 1);
}

TEST_CASE("g_psi_hits: sandwich containment for rate-derived Psi") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<long> digit(1, 80);
    for (int t = 0; t < 20; ++t) {
        cf_word w;
        for (int i = 0; i < 40; ++i) w.push(bigint(digit(rng)));
        approximation_rate rate{1.0, 2.0};
        auto strict = g_psi_hits(w, psi_function::from_rate(rate));
        auto relaxed = g_psi_hits(w, psi_function::from_rate(rate, 0.25));
        CHECK(std::includes(relaxed.begin(), relaxed.end(), strict.begin(), strict.end()));
    }
}
