#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cfkit/construct.hpp"
#include "cfkit/diagnostics.hpp"

#include <cmath>
#include <random>

using namespace cfkit;

TEST_CASE("lambda_of: rational roots detected exactly") {
    auto l = lambda_of(make_rat(3, 2));
    REQUIRE(l.exact.has_value());
    CHECK(*l.exact == bigrat(2));
    CHECK(l.approx == 2.0);

    l = lambda_of(make_rat(8, 3));
    REQUIRE(l.exact.has_value());
    CHECK(*l.exact == bigrat(3));

    // lambda -> 1 as beta -> 0+
    l = lambda_of(make_rat(1, 1000000));
    CHECK(l.approx == doctest::Approx(1.0).epsilon(1e-5));

    // beta = 1 gives the golden ratio, irrational.
    l = lambda_of(bigrat(1));
    CHECK_FALSE(l.exact.has_value());
    CHECK(l.approx == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-14));

    CHECK_THROWS_AS(lambda_of(bigrat(0)), std::domain_error);
    CHECK_THROWS_AS(lambda_of(make_rat(-1, 2)), std::domain_error);
}

TEST_CASE("lambda_of satisfies its quadratic") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> num(1, 1000), den(1, 100);
    for (int t = 0; t < 200; ++t) {
        bigrat beta = make_rat(num(rng), den(rng));
        auto l = lambda_of(beta);
        double lam = l.approx;
        CHECK(std::fabs(lam * lam - beta.get_d() * lam - 1.0) < 1e-12 * lam * lam);
        if (l.exact) {
            bigrat residue = *l.exact * *l.exact - beta * *l.exact - 1;
            CHECK(residue == 0);  // exact root when the discriminant is square
        }
    }
}

TEST_CASE("make_params: worked values") {
    auto p = make_params(bigrat(1), make_rat(3, 2));
    CHECK(p.n0 == 3);
    CHECK(p.n1 == ipow(bigint(13), 26) + 1);
    CHECK(p.family == seed_family::f_alpha);

    p = make_params(bigrat(2), make_rat(3, 2));
    CHECK(p.n0 == 5);
    CHECK(p.n1 == bigint("437893890380859376", 10));

    p = make_params(bigrat(0), make_rat(8, 3));
    CHECK(p.family == seed_family::f_zero);
    CHECK(p.n1 == 1000000);  // caller knob, defaulted

    CHECK_THROWS_AS(make_params(make_rat(-1, 2), bigrat(1)), std::domain_error);
    CHECK_THROWS_AS(make_params(bigrat(1), bigrat(0)), std::domain_error);
}

TEST_CASE("seed ranges and selectors") {
    auto p2 = make_params(bigrat(2), make_rat(3, 2));
    auto s = make_seed(p2, {selector::min, 0}, 4);
    CHECK(s.word.str() == "3,3,3,4");

    auto p0 = make_params(bigrat(0), make_rat(3, 2));
    auto s0 = make_seed(p0, {selector::min, 0}, 3);
    CHECK(s0.word.str() == "3,8,21");

    // F(alpha): max digit = 2 * (min digit - 1) at every position.
    auto p1 = make_params(bigrat(1), make_rat(3, 2));
    for (long i = 1; i <= 30; ++i) {
        auto r = seed_range(p1, i);
        CHECK(r.hi == 2 * (r.lo - 1));
    }

    // Seeded-random stays inside the range and is reproducible.
    auto sr1 = make_seed(p1, {selector::seeded_random, 42}, 20);
    auto sr2 = make_seed(p1, {selector::seeded_random, 42}, 20);
    CHECK(sr1.word.digits == sr2.word.digits);
    for (long i = 1; i <= 20; ++i) {
        auto r = seed_range(p1, i);
        CHECK(sr1.word.at(i) >= r.lo);
        CHECK(sr1.word.at(i) <= r.hi);
    }
    auto sr3 = make_seed(p1, {selector::seeded_random, 43}, 20);
    CHECK(sr1.word.digits != sr3.word.digits);
}

TEST_CASE("schedule: level sizes follow n_{j+1} = n_j^j") {
    auto p = make_params(bigrat(1), make_rat(3, 2));
    auto sched = build_schedule(p, {selector::min, 0}, 4, schedule_mode::exact, selector::min);
    REQUIRE(sched.levels.size() == 4);
    const bigint& n1 = sched.levels[0].n;
    CHECK(sched.levels[1].n == n1);           // n_2 = n_1^1
    CHECK(sched.levels[2].n == n1 * n1);      // n_3 = n_2^2
    CHECK(sched.levels[3].n == ipow(n1, 6));  // n_4 = n_3^3
}

TEST_CASE("schedule: c/e ranges for lambda = 3") {
    auto p = make_params(bigrat(0), make_rat(8, 3));  // lambda = 3 exactly
    auto sched = build_schedule(p, {selector::min, 0}, 2, schedule_mode::exact, selector::min);
    for (const auto& lv : sched.levels) {
        CHECK(lv.floor_c == lv.n * lv.n);            // floor(n^(lambda-1)) = n^2
        CHECK(lv.floor_e == ipow(lv.n, 6));          // floor(n^(lambda^2-lambda)) = n^6
        CHECK(lv.c == lv.floor_c + 1);               // min selector
        CHECK(lv.e == lv.floor_e + 1);
    }
    // Any selector lands inside the admissible brackets.
    auto rnd = build_schedule(p, {selector::seeded_random, 3}, 2, schedule_mode::exact,
                              selector::seeded_random);
    for (const auto& lv : rnd.levels) {
        CHECK(lv.c >= lv.floor_c + 1);
        CHECK(lv.c <= 2 * lv.floor_c);
        CHECK(lv.e >= lv.floor_e + 1);
        CHECK(lv.e <= 2 * lv.floor_e);
    }
}

TEST_CASE("schedule: irrational lambda uses certified floors") {
    auto p = make_params(bigrat(0), bigrat(1), bigint(1000));  // golden lambda
    auto sched = build_schedule(p, {selector::min, 0}, 2, schedule_mode::exact, selector::min);
    for (const auto& lv : sched.levels) {
        // floor(n^x) certified: floor_c^(1/(lambda-1)) <= n < (floor_c+1)^(1/(lambda-1)),
        // checked through logs at double precision.
        double lam = p.lambda.approx;
        CHECK(lv.log_floor_c <= (lam - 1) * lv.log_n + 1e-9);
        CHECK(log_of(bigint(lv.floor_c + 1)) >= (lam - 1) * lv.log_n - 1e-9);
        CHECK(lv.log_floor_e <= (lam * lam - lam) * lv.log_n + 1e-9);
        CHECK(log_of(bigint(lv.floor_e + 1)) >= (lam * lam - lam) * lv.log_n - 1e-9);
    }
}

TEST_CASE("schedule: threshold minimality against an independent recursion") {
    auto p = make_params(bigrat(1), make_rat(3, 2));
    // j = 6 is the first level where the threshold is not pre-satisfied at
    // this alpha/beta; run exact through it and replay the recursion.
    auto sched = build_schedule(p, {selector::min, 0}, 6, schedule_mode::exact, selector::min);
    auto seed = make_seed(p, {selector::min, 0}, sched.levels.back().r + 1);
    cf_word word = insert(seed, sched, 1);

    convergent_state st;
    std::vector<bigint> qs;  // q at word position 1..len
    for (const bigint& a : word.digits) {
        st.push(a);
        qs.push_back(st.q);
    }
    for (const auto& lv : sched.levels) {
        CHECK(qs[lv.m - 1] >= lv.n);  // q_{m_j} >= n_j, both modes of the invariant
        if (!lv.threshold_pre_satisfied) CHECK(qs[lv.m - 2] < lv.n);
        if (lv.j >= 2) CHECK(lv.r > sched.levels[lv.j - 2].r);  // r strictly increasing
    }
    CHECK_FALSE(sched.levels[0].threshold_pre_satisfied);
    CHECK(sched.levels[1].threshold_pre_satisfied);
    CHECK_FALSE(sched.levels[5].threshold_pre_satisfied);
}

TEST_CASE("insert: splice positions and subsequence property") {
    auto p = make_params(bigrat(1), make_rat(3, 2));
    auto sched = build_schedule(p, {selector::min, 0}, 3, schedule_mode::exact, selector::min);
    auto seed = make_seed(p, {selector::min, 0}, sched.levels.back().r + 2);
    cf_word word = insert(seed, sched, 2);

    CHECK(static_cast<long>(word.size()) == sched.levels.back().m + 2 + 2);
    for (const auto& lv : sched.levels) {
        CHECK(word.at(lv.m + 1) == lv.c);
        CHECK(word.at(lv.m + 2) == lv.e);
    }
    // Seed digits appear in order once the blocks are removed.
    std::vector<bigint> remaining;
    for (size_t i = 1; i <= word.size(); ++i) {
        bool is_block = false;
        for (const auto& lv : sched.levels)
            if (static_cast<long>(i) == lv.m + 1 || static_cast<long>(i) == lv.m + 2)
                is_block = true;
        if (!is_block) remaining.push_back(word.at(i));
    }
    for (size_t i = 0; i < remaining.size(); ++i) CHECK(remaining[i] == seed.word.at(i + 1));

    // Fingerprint mismatch: different rng seed.
    auto other = make_seed(p, {selector::seeded_random, 9}, sched.levels.back().r + 2);
    CHECK_THROWS_WITH_AS(insert(other, sched, 1), "mismatched seed/schedule fingerprint",
                         std::invalid_argument);
}

TEST_CASE("insert: constructed word digits satisfy the seed family bounds") {
    auto p = make_params(bigrat(1), make_rat(3, 2));
    auto sched =
        build_schedule(p, {selector::seeded_random, 7}, 3, schedule_mode::exact,
                       selector::seeded_random);
    auto seed = make_seed(p, {selector::seeded_random, 7}, sched.levels.back().r + 1);
    cf_word word = insert(seed, sched, 1);
    long seed_idx = 0;
    for (size_t i = 1; i <= word.size(); ++i) {
        bool is_block = false;
        for (const auto& lv : sched.levels)
            if (static_cast<long>(i) == lv.m + 1 || static_cast<long>(i) == lv.m + 2)
                is_block = true;
        if (is_block) continue;
        ++seed_idx;
        auto r = seed_range(p, seed_idx);
        CHECK(word.at(i) >= r.lo);
        CHECK(word.at(i) <= r.hi);
    }
}

TEST_CASE("membership report: schedule and exact-word routes agree") {
    auto p = make_params(bigrat(1), make_rat(3, 2));
    auto sched = build_schedule(p, {selector::min, 0}, 5, schedule_mode::exact, selector::min);
    auto seed = make_seed(p, {selector::min, 0}, sched.levels.back().r + 1);
    cf_word word = insert(seed, sched, 1);

    auto fast = membership_report(sched);
    auto oracle = membership_report(word, sched);
    REQUIRE(fast.levels.size() == oracle.levels.size());
    for (size_t i = 0; i < fast.levels.size(); ++i) {
        CHECK(fast.levels[i].ratio_m == doctest::Approx(oracle.levels[i].ratio_m).epsilon(1e-9));
        CHECK(fast.levels[i].ratio_m1 == doctest::Approx(oracle.levels[i].ratio_m1).epsilon(1e-9));
        CHECK(fast.levels[i].ratio_m2 == doctest::Approx(oracle.levels[i].ratio_m2).epsilon(1e-9));
        CHECK(fast.levels[i].off_block_max ==
              doctest::Approx(oracle.levels[i].off_block_max).epsilon(1e-9));
    }
    CHECK(fast.target_m1 == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("membership report: block limits emerge once minimality unclamps") {
    auto p = make_params(bigrat(1), make_rat(3, 2));
    auto sched = build_schedule(p, {selector::min, 0}, 8, schedule_mode::logspace, selector::min);
    auto rep = membership_report(sched);
    // Unclamped levels sit close to the limits lambda-1, beta, 1-1/lambda.
    for (const auto& d : rep.levels) {
        if (d.threshold_pre_satisfied || d.j == 1) continue;
        CHECK(std::fabs(d.ratio_m - rep.target_m) < 0.01);
        CHECK(std::fabs(d.ratio_m1 - rep.target_m1) < 0.01);
        CHECK(std::fabs(d.ratio_m2 - rep.target_m2) < 0.01);
    }
    // Off-block ratios decrease level over level where the window is nonempty.
    double prev = -1;
    for (const auto& d : rep.levels) {
        if (d.off_block_max == 0.0 || d.j == 1) continue;
        if (prev > 0) CHECK(d.off_block_max < prev);
        prev = d.off_block_max;
    }
    // q_{m_j} < n_j^{1.1} once the threshold binds.
    for (size_t i = 0; i < rep.levels.size(); ++i) {
        if (rep.levels[i].threshold_pre_satisfied || rep.levels[i].j == 1) continue;
        CHECK(sched.levels[i].log_q_m < 1.1 * sched.levels[i].log_n);
    }
    // The tau contribution terms fall off geometrically.
    for (size_t i = 1; i < rep.levels.size(); ++i)
        CHECK(rep.levels[i].tau_term <= rep.levels[i - 1].tau_term);
}

TEST_CASE("exact and logspace schedules agree where both run") {
    auto p = make_params(bigrat(1), make_rat(3, 2));
    auto ex = build_schedule(p, {selector::min, 0}, 3, schedule_mode::exact, selector::min);
    auto ls = build_schedule(p, {selector::min, 0}, 3, schedule_mode::logspace, selector::min);
    REQUIRE(ex.levels.size() == ls.levels.size());
    for (size_t i = 0; i < ex.levels.size(); ++i) {
        CHECK(ex.levels[i].r == ls.levels[i].r);
        CHECK(ex.levels[i].m == ls.levels[i].m);
        CHECK(ls.levels[i].log_n == doctest::Approx(ex.levels[i].log_n).epsilon(1e-6));
        CHECK(ls.levels[i].log_c == doctest::Approx(ex.levels[i].log_c).epsilon(1e-6));
        CHECK(ls.levels[i].log_e == doctest::Approx(ex.levels[i].log_e).epsilon(1e-6));
        CHECK(ls.levels[i].log_q_m == doctest::Approx(ex.levels[i].log_q_m).epsilon(1e-6));
        CHECK(ls.levels[i].log_q_m2 == doctest::Approx(ex.levels[i].log_q_m2).epsilon(1e-6));
    }
}

TEST_CASE("exact mode respects the digit budget") {
    auto p = make_params(bigrat(1), make_rat(3, 2));
    try {
        build_schedule(p, {selector::min, 0}, 12, schedule_mode::exact, selector::min);
        FAIL("expected budget_error");
    } catch (const budget_error& e) {
        CHECK(e.level == 8);  // n_8 has ~1.5e5 decimal digits at the default budget 1e5
        CHECK(std::string(e.what()).find("level 8") != std::string::npos);
    }
    CHECK_THROWS_AS(
        build_schedule(p, {selector::min, 0}, 0, schedule_mode::exact, selector::min),
        std::invalid_argument);
}

TEST_CASE("block-limit ordering holds for every lambda > 1") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> B(0.01, 10.0);
    for (int t = 0; t < 100; ++t) {
        double beta = B(rng);
        double lam = (beta + std::sqrt(beta * beta + 4)) / 2;
        double peak = (lam * lam - 1) / lam;
        CHECK(peak > lam - 1);
        CHECK(peak > 1 - 1 / lam);
    }
}

TEST_CASE("ratio trace of a constructed word peaks at the insertion blocks") {
    auto p = make_params(bigrat(1), make_rat(3, 2));
    auto sched = build_schedule(p, {selector::min, 0}, 4, schedule_mode::exact, selector::min);
    auto seed = make_seed(p, {selector::min, 0}, sched.levels.back().r + 1);
    cf_word word = insert(seed, sched, 1);
    auto tr = dirichlet_ratio_trace(word);
    // Running sup within 10% of beta = 3/2 by the 4th block, attained at some m_j+1.
    double sup = tr.entries.back().running_sup;
    CHECK(std::fabs(sup - 1.5) <= 0.15);
    long argmax = 0;
    double best = -1;
    for (auto& e : tr.entries)
        if (e.ratio > best) best = e.ratio, argmax = e.n;
    bool at_block = false;
    for (const auto& lv : sched.levels)
        if (argmax == lv.m + 1) at_block = true;
    CHECK(at_block);
}
