#include "rangerenew/montecarlo.hpp"
#include "rangerenew/moments.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>

using namespace rangerenew;

TEST_CASE("thread resolution") {
    CHECK(resolve_threads(3) == 3);
    CHECK(resolve_threads(1) == 1);
    ::setenv("RANGERENEW_THREADS", "5", 1);
    CHECK(resolve_threads(0) == 5);
    ::setenv("RANGERENEW_THREADS", "junk", 1);
    CHECK(resolve_threads(0) >= 1);
    ::unsetenv("RANGERENEW_THREADS");
    CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("distinct counter") {
    DistinctCounter c;
    c.reset();
    CHECK(c.count() == 0);
    c.insert(1);
    c.insert(1);
    c.insert(2);
    c.insert((1ll << 40) + 3);     // far past the dense window
    c.insert((1ll << 40) + 3);
    CHECK(c.count() == 3);
    c.reset();
    CHECK(c.count() == 0);
    c.insert(2);
    CHECK(c.count() == 1);
}

TEST_CASE("direct simulation determinism") {
    DiscreteLaw law = parse_law_spec("zipf:gamma=0.5");
    SimBatch a = simulate_direct(law, 500, 200, 99, 1);
    SimBatch b = simulate_direct(law, 500, 200, 99, 3);
    SimBatch c = simulate_direct(law, 500, 200, 100, 1);
    REQUIRE(a.values.size() == 200);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    CHECK(a.mode == "direct");
    CHECK(a.n == 500);
}

TEST_CASE("direct simulation trivial laws") {
    DiscreteLaw one = parse_law_spec("finite:1");
    SimBatch b = simulate_direct(one, 50, 64, 7);
    for (double v : b.values) CHECK(v == 1.0);

    DiscreteLaw two = parse_law_spec("finite:0.5,0.5");
    SimBatch b2 = simulate_direct(two, 2, 4000, 7);
    double ones = 0.0;
    for (double v : b2.values) {
        CHECK(v >= 1.0);
        CHECK(v <= 2.0);
        if (v == 1.0) ones += 1.0;
    }
    // P(R_2 = 1) = 1/2
    CHECK(std::abs(ones / 4000.0 - 0.5) < 4.0 * 0.5 / std::sqrt(4000.0));
}

TEST_CASE("direct mean matches the closed form") {
    DiscreteLaw law = parse_law_spec("finite:0.5,0.3,0.2");
    SimBatch b = simulate_direct(law, 6, 6000, 31);
    double er = exact_mean_Rn(law, 6).value;
    double mean = summarize(b.values).mean;
    CHECK(std::abs(mean - er) < 4.0 * 0.8 / std::sqrt(6000.0));
}

TEST_CASE("poissonized plan certification") {
    DiscreteLaw law = parse_law_spec("zipf:gamma=0.5");
    PoissonizedPlan plan = build_poissonized_plan(law, 1000.0, 1e-6);
    CHECK(plan.tv_bound <= 1e-6);
    CHECK(plan.head >= law.series_head_cutoff(1000.0));
    CHECK(plan.tail_lambda >= 0.0);
    // dense zone then dyadic blocks tile (dense_end, head]
    std::int64_t expect_lo = static_cast<std::int64_t>(plan.dense_p.size()) + 1;
    for (const auto& blk : plan.blocks) {
        CHECK(blk.lo == expect_lo);
        CHECK(blk.hi >= blk.lo);
        CHECK(blk.hi <= plan.head);
        // envelope dominates every per-index hit probability in the block
        double t = plan.t;
        double p_lo = -std::expm1(-t * law.pmf(blk.lo));
        double p_hi = -std::expm1(-t * law.pmf(blk.hi));
        CHECK(blk.q >= p_lo - 1e-15);
        CHECK(blk.q >= p_hi - 1e-15);
        expect_lo = blk.hi + 1;
    }
    if (!plan.blocks.empty()) CHECK(plan.blocks.back().hi == plan.head);
    for (double p : plan.dense_p) {
        CHECK(p > 0.0);
        CHECK(p <= 1.0);
    }
}

TEST_CASE("poissonized plan for finite support") {
    DiscreteLaw law = parse_law_spec("finite:0.5,0.3,0.2");
    PoissonizedPlan plan = build_poissonized_plan(law, 10.0, 1e-6);
    CHECK(plan.head == 3);
    CHECK(plan.tail_lambda == 0.0);
    CHECK(plan.tv_bound == 0.0);
}

TEST_CASE("poissonized mean and variance track the analytic values") {
    DiscreteLaw law = parse_law_spec("zipf:gamma=0.5");
    const double t = 1000.0;
    SimBatch b = simulate_poissonized(law, t, 4000, 17);
    for (double v : b.values) {
        CHECK(v >= 0.0);
        CHECK(v == std::floor(v));
    }
    SummaryStats st = summarize(b.values);
    double m = mu(law, t).value;         // 43.2019...
    double s2 = sigma_sq(law, t).value;  // 18.1019...
    CHECK(std::abs(st.mean - m) < 4.0 * std::sqrt(s2 / 4000.0));
    CHECK(st.variance > s2 * 0.8);
    CHECK(st.variance < s2 * 1.25);
    CHECK(b.tv_bound <= 1e-6);
    CHECK(b.head_cutoff > 0);
}

TEST_CASE("poissonized determinism across worker counts") {
    DiscreteLaw law = parse_law_spec("zipf:gamma=0.3");
    SimBatch a = simulate_poissonized(law, 500.0, 300, 5, 1);
    SimBatch b = simulate_poissonized(law, 500.0, 300, 5, 4);
    CHECK(a.values == b.values);
    SimBatch c = simulate_poissonized(law, 500.0, 300, 6, 1);
    CHECK(a.values != c.values);
}

TEST_CASE("poissonized factorial gap stays on the effective support") {
    DiscreteLaw law = parse_law_spec("factgap");
    SimBatch b = simulate_poissonized(law, 50.0, 2000, 11);
    double m = mu(law, 50.0).value;
    for (double v : b.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 6.0);
    }
    double s2 = sigma_sq(law, 50.0).value;
    CHECK(std::abs(summarize(b.values).mean - m) <
          4.0 * std::sqrt(s2 / 2000.0) + 1e-6);
}

TEST_CASE("coupled simulation invariants") {
    DiscreteLaw law = parse_law_spec("zipf:gamma=0.5");
    const double t = 400.0;
    SimBatch b = simulate_coupled(law, t, 500, 23);
    REQUIRE(b.values.size() == 500);
    REQUIRE(b.values_star.size() == 500);
    REQUIRE(b.poisson_n.size() == 500);
    CHECK(b.n == 400);
    CHECK(b.mode == "coupled");
    double nbar = 0.0;
    for (std::size_t i = 0; i < b.values.size(); ++i) {
        double extra = std::abs(b.poisson_n[i] - static_cast<double>(b.n));
        // each inserted or removed draw moves the distinct count by at most 1
        CHECK(std::abs(b.values_star[i] - b.values[i]) <= extra);
        nbar += b.poisson_n[i];
    }
    nbar /= 500.0;
    CHECK(std::abs(nbar - t) < 4.0 * std::sqrt(t / 500.0));

    SimBatch c = simulate_coupled(law, t, 500, 23, 2);
    CHECK(b.values == c.values);
    CHECK(b.values_star == c.values_star);
}

TEST_CASE("summary statistics") {
    SummaryStats s = summarize({4.0, 1.0, 3.0, 2.0});
    CHECK(s.count == 4);
    CHECK(s.mean == doctest::Approx(2.5));
    CHECK(s.variance == doctest::Approx(5.0 / 3.0));
    CHECK(s.min == 1.0);
    CHECK(s.max == 4.0);
    CHECK(s.q25 == doctest::Approx(1.75));
    CHECK(s.median == doctest::Approx(2.5));
    CHECK(s.q75 == doctest::Approx(3.25));
    CHECK(summarize({}).count == 0);
    CHECK(summarize({7.0}).variance == 0.0);
}
