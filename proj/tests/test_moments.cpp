#include "rangerenew/moments.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace rangerenew;

static DiscreteLaw finite_law() { return parse_law_spec("finite:0.5,0.3,0.2"); }
static DiscreteLaw zipf_half() { return parse_law_spec("zipf:gamma=0.5"); }

TEST_CASE("finite law moment anchors") {
    DiscreteLaw law = finite_law();
    CertifiedValue m1 = mu(law, 1.0);
    CHECK(std::abs(m1.value - 0.83392036652766685) <= 1e-14 + m1.abs_error);
    CertifiedValue m2 = mu(law, 2.0);
    CHECK(std::abs(m2.value - 1.4129888766988919) <= 1e-14 + m2.abs_error);
    CertifiedValue s2 = sigma_sq(law, 1.0);
    CHECK(std::abs(s2.value - 0.57906851017122509) <= 1e-14 + s2.abs_error);
    CertifiedValue md = mu_dot(law, 1.0);
    CHECK(std::abs(md.value - 0.68925694667642844) <= 1e-14 + md.abs_error);
    CertifiedValue mdd = mu_ddot(law, 0.0);
    CHECK(std::abs(mdd.value - (-0.38)) <= 1e-15 + mdd.abs_error);
    CHECK(mu(law, 0.0).value == doctest::Approx(0.0));
}

TEST_CASE("finite law exact direct-sample moments") {
    DiscreteLaw law = finite_law();
    CertifiedValue er2 = exact_mean_Rn(law, 2);
    CHECK(std::abs(er2.value - 1.62) <= 1e-14 + er2.abs_error);
    CertifiedValue d1 = delta_n(law, 1);
    CHECK(std::abs(d1.value - 0.62) <= 1e-14 + d1.abs_error);
    CertifiedValue d2 = delta_n(law, 2);
    CHECK(std::abs(d2.value - 0.4322) <= 1e-14 + d2.abs_error);
    CertifiedValue v2 = exact_var_Rn(law, 2);
    CHECK(std::abs(v2.value - 0.2356) <= 1e-13 + v2.abs_error);
    // one draw always yields exactly one distinct value
    CertifiedValue v1 = exact_var_Rn(law, 1);
    CHECK(std::abs(v1.value) <= 1e-13 + v1.abs_error);
    CertifiedValue e1 = exact_mean_Rn(law, 1);
    CHECK(std::abs(e1.value - 1.0) <= 1e-14 + e1.abs_error);
    CHECK(exact_mean_Rn(law, 0).value == doctest::Approx(0.0));
}

TEST_CASE("zipf moment anchors") {
    DiscreteLaw law = zipf_half();
    CertifiedValue m100 = mu(law, 100.0);
    CHECK(std::abs(m100.value - 13.319769367789087) <= 1e-10 + m100.abs_error);
    CertifiedValue m1k = mu(law, 1000.0);
    CHECK(std::abs(m1k.value - 43.201937223684855) <= 1e-9 + m1k.abs_error);
    CertifiedValue s1k = sigma_sq(law, 1000.0);
    CHECK(std::abs(s1k.value - 18.10193510002548) <= 1e-9 + s1k.abs_error);
    CertifiedValue m1m = mu(law, 1.0e6);
    CHECK(std::abs(m1m.value - 1381.4765978853419) <= 1e-7 + m1m.abs_error);

    auto asym = asymptotic_mu(law, 1.0e6);
    REQUIRE(asym.has_value());
    CHECK(m1m.value / *asym == doctest::Approx(0.99963819937272087).epsilon(1e-9));
    auto asv = asymptotic_sigma_sq(law, 1.0e6);
    REQUIRE(asv.has_value());
    CHECK(*asv / *asym == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("certified mu against a long direct sum") {
    DiscreteLaw law = zipf_half();
    const double t = 100.0;
    double direct = 0.0;
    for (std::int64_t i = 1000000; i >= 1; --i)
        direct += -std::expm1(-t * law.pmf(i));
    double missing = t * law.pmf(1000000) * 1000000.0;  // tail bound
    CertifiedValue m = mu(law, t);
    CHECK(m.value >= direct - m.abs_error - 1e-10);
    CHECK(m.value <= direct + missing + m.abs_error);
}

TEST_CASE("geometric mu anchor") {
    DiscreteLaw law = parse_law_spec("geom:q=0.5");
    CertifiedValue m = mu(law, 10.0);
    CHECK(std::abs(m.value - 3.654720057486161) <= 1e-12 + m.abs_error);
}

TEST_CASE("derivative signs and preparation bounds") {
    DiscreteLaw law = zipf_half();
    for (double t : {10.0, 1000.0, 1e5}) {
        CertifiedValue m = mu(law, t);
        CertifiedValue s2 = sigma_sq(law, t);
        CertifiedValue md = mu_dot(law, t);
        CertifiedValue mdd = mu_ddot(law, t);
        CHECK(md.value > 0.0);
        CHECK(md.value < 1.0);
        CHECK(mdd.value < 0.0);
        CHECK(mdd.value > -1.0);
        CHECK(s2.value / t <= md.upper() + 1e-15);
        CHECK(md.value <= m.upper() / t + 1e-15);
        CHECK(s2.upper() <= m.upper());
        CHECK(m.upper() <= t * (1.0 + 1e-12));
    }
    // mu_dot decreasing in t
    CHECK(mu_dot(law, 10.0).value > mu_dot(law, 100.0).value);
}

TEST_CASE("poisson chernoff bounds") {
    CHECK(std::abs(poisson_chernoff_upper(1.0, 2.0) - 0.67957045711476131) < 1e-14);
    // exact P(N_1 >= 2) = 1 - 2/e sits below the bound
    CHECK(poisson_chernoff_upper(1.0, 2.0) >= 0.26424111765711536);
    // at x = 0 the lower bound equals P(N_1 = 0) = 1/e
    CHECK(std::abs(poisson_chernoff_lower(1.0, 0.0) - 0.36787944117144232) < 1e-14);
    CHECK(poisson_chernoff_upper(5.0, 9.0) > poisson_chernoff_upper(5.0, 12.0));
    CHECK(poisson_chernoff_upper(5.0, 20.0) < 1e-5);
    CHECK(poisson_chernoff_lower(20.0, 5.0) < 1e-3);
}

TEST_CASE("tail hit sums") {
    DiscreteLaw law = zipf_half();
    const double t = 100.0;
    CertifiedValue a = tail_hit_sum(law, t, 50);
    CertifiedValue b = tail_hit_sum(law, t, 200);
    CertifiedValue sq = tail_hit_sq_sum(law, t, 50);
    CHECK(a.value > b.value);
    CHECK(b.value > 0.0);
    CHECK(sq.value >= 0.0);
    CHECK(sq.value <= a.upper());
    double direct = 0.0;
    for (std::int64_t i = 1000000; i >= 51; --i)
        direct += -std::expm1(-t * law.pmf(i));
    double missing = t * law.pmf(1000000) * 1000000.0;
    CHECK(a.value >= direct - a.abs_error - 1e-10);
    CHECK(a.value <= direct + missing + a.abs_error);
}

TEST_CASE("moments table shapes") {
    DiscreteLaw fin = finite_law();
    auto rows = moments_table(fin, {1.0, 1.5, 2.0});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].exact_mean.has_value());
    CHECK(rows[0].exact_var.has_value());
    CHECK_FALSE(rows[1].exact_mean.has_value());   // non-integer t
    CHECK(rows[2].exact_mean.has_value());
    CHECK_FALSE(rows[0].asym_mu.has_value());      // no power-law profile
    CHECK(std::abs(rows[0].mu.value - 0.83392036652766685) < 1e-12);

    auto zrows = moments_table(zipf_half(), {1000.0});
    REQUIRE(zrows.size() == 1);
    CHECK(zrows[0].asym_mu.has_value());
    CHECK(zrows[0].asym_sigma_sq.has_value());
    CHECK(zrows[0].exact_mean.has_value());
    CHECK(std::abs(zrows[0].exact_mean->value - zrows[0].mu.value) < 0.1);
}

TEST_CASE("argument validation") {
    DiscreteLaw law = finite_law();
    CHECK_THROWS_AS(mu(law, -1.0), std::domain_error);
    CHECK_THROWS_AS(exact_mean_Rn(law, -1), std::domain_error);
    CHECK_THROWS_AS(delta_n(law, 0), std::domain_error);
}
