#include "rangerenew/verify.hpp"
#include "rangerenew/montecarlo.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace rangerenew;

TEST_CASE("brute force enumeration") {
    DiscreteLaw law = parse_law_spec("finite:0.5,0.3,0.2");
    BruteForceResult r = brute_force_Rn(law, 2);
    REQUIRE(r.pmf.size() == 4);
    CHECK(std::abs(r.pmf[1] - 0.38) < 1e-14);
    CHECK(std::abs(r.pmf[2] - 0.62) < 1e-14);
    CHECK(r.pmf[0] == 0.0);
    CHECK(r.pmf[3] == 0.0);
    CHECK(std::abs(r.mean - 1.62) < 1e-14);
    CHECK(std::abs(r.variance - 0.2356) < 1e-14);

    BruteForceResult r0 = brute_force_Rn(law, 0);
    CHECK(r0.pmf[0] == 1.0);

    CHECK_THROWS_AS(brute_force_Rn(parse_law_spec("geom:q=0.5"), 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(brute_force_Rn(parse_law_spec("finite:0.5,0.5"), 60),
                    std::invalid_argument);
}

TEST_CASE("brute force report agrees with the closed forms") {
    for (const char* spec : {"finite:0.5,0.3,0.2", "finite:0.4,0.3,0.2,0.1"}) {
        DiscreteLaw law = parse_law_spec(spec);
        for (std::int64_t n : {1, 2, 3, 4}) {
            Report rep = brute_force_report(law, n);
            CHECK(rep.pass);
            CHECK(rep.gating);
            CHECK(rep.kind == "brute_force");
        }
    }
}

TEST_CASE("ks statistics hand values") {
    CHECK(ks_statistic_normal({0.0}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(ks_statistic_normal({-1.0, 1.0}) - 0.34134474606854295) <
          1e-12);
    CHECK(std::abs(ks_statistic_two_sample({1.0, 2.0, 3.0}, {1.5, 2.5}) -
                   1.0 / 3.0) < 1e-12);
    CHECK(ks_statistic_two_sample({1.0, 2.0}, {1.0, 2.0}) ==
          doctest::Approx(0.0));
    CHECK(std::abs(ks_p_value(1.0, 1.0) - 0.26999967167735452) < 1e-12);
    CHECK(ks_p_value(0.001, 100.0) > 0.999999);
    CHECK(ks_p_value(0.5, 400.0) < 1e-8);
}

TEST_CASE("empirical law of the direct count matches enumeration") {
    DiscreteLaw law = parse_law_spec("finite:0.5,0.3,0.2");
    BruteForceResult bf = brute_force_Rn(law, 3);
    SimBatch b = simulate_direct(law, 3, 20000, 321);
    std::vector<double> freq(bf.pmf.size(), 0.0);
    for (double v : b.values) freq[static_cast<std::size_t>(v)] += 1.0;
    for (auto& f : freq) f /= 20000.0;
    for (std::size_t r = 0; r < bf.pmf.size(); ++r) {
        double p = bf.pmf[r];
        CHECK(std::abs(freq[r] - p) <=
              4.0 * std::sqrt(std::max(p * (1 - p), 1e-9) / 20000.0) + 1e-9);
    }
}

TEST_CASE("clt report on a zipf law") {
    DiscreteLaw law = parse_law_spec("zipf:gamma=0.5");
    Report rep = clt_report(law, 1e4, 4000, 2024);
    CHECK(rep.kind == "clt");
    CHECK(rep.gating);
    REQUIRE(rep.rows.size() == 1);
    REQUIRE(rep.columns.size() == rep.rows[0].size());
    CHECK(rep.pass);
    // column order: t, mu, sigma, ks, esseen_bound, envelope
    CHECK(rep.rows[0][3] <= 0.05);
    // worker counts must not change the verdict or the statistic
    Report rep2 = clt_report(law, 1e4, 4000, 2024, 3);
    CHECK(rep.rows[0][3] == rep2.rows[0][3]);
}

TEST_CASE("clt report rejects a concentrated count") {
    DiscreteLaw one = parse_law_spec("finite:1");
    CHECK_THROWS_AS(clt_report(one, 0.0, 100, 1), std::domain_error);
    // single atom: the count is 1 almost surely, nothing like a normal
    Report rep = clt_report(one, 10.0, 200, 1);
    CHECK_FALSE(rep.pass);
    bool warned = false;
    for (const auto& n : rep.notes)
        if (n.find("sigma") != std::string::npos) warned = true;
    CHECK(warned);
}

TEST_CASE("mean bounds reports") {
    Report z = mean_bounds_report(parse_law_spec("zipf:gamma=0.5"),
                                  {5, 50, 500});
    CHECK(z.pass);
    CHECK(z.gating);
    CHECK(z.rows.size() == 3);
    Report f = mean_bounds_report(parse_law_spec("finite:0.5,0.3,0.2"),
                                  {1, 2, 4, 8, 64});
    CHECK(f.pass);
}

TEST_CASE("variance ratio reports") {
    Report z = var_ratio_report(parse_law_spec("zipf:gamma=0.5"),
                                {100, 1000, 10000}, 4000);
    CHECK(z.pass);
    CHECK(z.gating);
    REQUIRE(z.rows.size() == 3);
    // ratio column approaches 1 from below on this grid
    const std::size_t rc = z.columns.size();
    double r0 = z.rows[0][rc - 1], r2 = z.rows[2][rc - 1];
    CHECK(r0 > 0.85);
    CHECK(r2 > r0);
    CHECK(r2 < 1.05);

    Report f = var_ratio_report(parse_law_spec("finite:0.5,0.3,0.2"),
                                {10, 100});
    CHECK(f.pass);
    bool skipped = false;
    for (const auto& n : f.notes)
        if (n.find("skipped") != std::string::npos) skipped = true;
    CHECK(skipped);
}

TEST_CASE("cgf convergence report") {
    Report rep = cgf_convergence_report(parse_law_spec("zipf:gamma=0.5"),
                                        {-1.0, -0.5, 0.5}, {1e3, 1e5});
    CHECK(rep.pass);
    CHECK(rep.gating);
    REQUIRE(rep.rows.size() == 6);   // one row per (t, lambda) pair
    // max gap over lambda shrinks with t
    double g0 = 0.0, g1 = 0.0;
    for (int k = 0; k < 3; ++k) {
        g0 = std::max(g0, rep.rows[static_cast<std::size_t>(k)][4]);
        g1 = std::max(g1, rep.rows[static_cast<std::size_t>(k + 3)][4]);
    }
    CHECK(g1 < g0);
    CHECK(g1 <= 0.05);

    CHECK_THROWS_AS(
        cgf_convergence_report(parse_law_spec("finite:0.5,0.5"), {0.5}, {10.0}),
        std::invalid_argument);
}

TEST_CASE("mdp tail report structure") {
    Report rep = mdp_tail_report(parse_law_spec("zipf:gamma=0.5"), 2000.0,
                                 std::log(2000.0), {0.5}, 100000, 99);
    CHECK(rep.kind == "mdp_tail");
    CHECK_FALSE(rep.gating);
    REQUIRE(!rep.rows.empty());
    // deterministic across worker counts
    Report rep2 = mdp_tail_report(parse_law_spec("zipf:gamma=0.5"), 2000.0,
                                  std::log(2000.0), {0.5}, 100000, 99, 2);
    CHECK(rep.rows == rep2.rows);
}

TEST_CASE("coupling report") {
    Report rep = coupling_report(parse_law_spec("zipf:gamma=0.5"), 2000.0, 400,
                                 7, {0.5, 1.0, 2.0});
    CHECK(rep.kind == "coupling");
    CHECK_FALSE(rep.gating);
    CHECK(rep.pass);
    REQUIRE(rep.rows.size() == 3);
    // exceedance frequencies decrease with the threshold
    const std::size_t rc = rep.columns.size();
    CHECK(rep.rows[0][rc - 1] >= rep.rows[1][rc - 1]);
    CHECK(rep.rows[1][rc - 1] >= rep.rows[2][rc - 1]);
    CHECK(rep.rows[1][rc - 1] <= 0.1);
}
