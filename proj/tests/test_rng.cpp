#include "rangerenew/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

using rangerenew::Philox;

TEST_CASE("philox 4x32-10 known answers") {
    // Reference vectors for the Philox4x32 round-10 block function.
    auto r0 = Philox::block({0u, 0u, 0u, 0u}, {0u, 0u});
    CHECK(r0[0] == 0x6627e8d5u);
    CHECK(r0[1] == 0xe169c58du);
    CHECK(r0[2] == 0xbc57ac4cu);
    CHECK(r0[3] == 0x9b00dbd8u);

    auto r1 = Philox::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                            {0xffffffffu, 0xffffffffu});
    CHECK(r1[0] == 0x408f276du);
    CHECK(r1[1] == 0x41c83b0eu);
    CHECK(r1[2] == 0xa20bc7c6u);
    CHECK(r1[3] == 0x6d5451fdu);

    auto r2 = Philox::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                            {0xa4093822u, 0x299f31d0u});
    CHECK(r2[0] == 0xd16cfe09u);
    CHECK(r2[1] == 0x94fdccebu);
    CHECK(r2[2] == 0x5001e420u);
    CHECK(r2[3] == 0x24126ea1u);
}

TEST_CASE("streams are reproducible and distinct") {
    Philox a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool same_ab = true, same_ac = true, same_ad = true;
    std::uint64_t first_c = 0, first_d = 0;
    for (int i = 0; i < 64; ++i) {
        std::uint64_t va = a.next_u64();
        same_ab = same_ab && va == b.next_u64();
        std::uint64_t vc = c.next_u64(), vd = d.next_u64();
        if (i == 0) {
            first_c = vc;
            first_d = vd;
        }
        same_ac = same_ac && va == vc;
        same_ad = same_ad && va == vd;
    }
    CHECK(same_ab);
    CHECK_FALSE(same_ac);
    CHECK_FALSE(same_ad);
    CHECK(first_c != first_d);
}

TEST_CASE("uniform doubles land in the right ranges") {
    Philox rng(1, 0);
    double sum = 0.0, sumsq = 0.0;
    const int n = 200000;
    double mn = 1.0, mx = 0.0;
    for (int i = 0; i < n; ++i) {
        double u = rng.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
        sumsq += u * u;
        mn = std::min(mn, u);
        mx = std::max(mx, u);
    }
    double mean = sum / n;
    double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(std::abs(var - 1.0 / 12.0) < 0.002);
    CHECK(mn < 0.001);
    CHECK(mx > 0.999);

    Philox rng2(1, 1);
    for (int i = 0; i < 10000; ++i) {
        double u = rng2.next_double_pos();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
    }
}

TEST_CASE("normal moments") {
    Philox rng(5, 11);
    const int n = 200000;
    double s1 = 0.0, s2 = 0.0, s4 = 0.0;
    for (int i = 0; i < n; ++i) {
        double z = rng.normal();
        s1 += z;
        s2 += z * z;
        s4 += z * z * z * z;
    }
    CHECK(std::abs(s1 / n) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(s2 / n - 1.0) < 0.02);
    CHECK(std::abs(s4 / n - 3.0) < 0.15);
}

TEST_CASE("poisson mean tracks lambda across both regimes") {
    for (double lambda : {0.3, 3.7, 42.0, 3000.0}) {
        Philox rng(9, static_cast<std::uint64_t>(lambda * 100.0));
        const int n = 40000;
        double sum = 0.0, sumsq = 0.0;
        std::int64_t mn = 1 << 30;
        for (int i = 0; i < n; ++i) {
            std::int64_t k = rng.poisson(lambda);
            CHECK(k >= 0);
            mn = std::min(mn, k);
            sum += static_cast<double>(k);
            sumsq += static_cast<double>(k) * static_cast<double>(k);
        }
        double mean = sum / n;
        double var = sumsq / n - mean * mean;
        double tol = 5.0 * std::sqrt(lambda / n);
        CHECK(std::abs(mean - lambda) < tol);
        CHECK(std::abs(var - lambda) < 6.0 * lambda * std::sqrt(2.0 / n) + tol);
    }
    Philox rng(9, 1);
    CHECK(rng.poisson(0.0) == 0);
}

TEST_CASE("geometric skip counts match the failure-run law") {
    const double p = 0.3;
    Philox rng(13, 2);
    const int n = 100000;
    double sum = 0.0;
    std::int64_t zeros = 0;
    for (int i = 0; i < n; ++i) {
        std::int64_t k = rng.geometric_skips(std::log1p(-p));
        CHECK(k >= 0);
        sum += static_cast<double>(k);
        if (k == 0) ++zeros;
    }
    double mean_ref = (1.0 - p) / p;
    double sd = std::sqrt((1.0 - p) / (p * p));
    CHECK(std::abs(sum / n - mean_ref) < 4.0 * sd / std::sqrt(static_cast<double>(n)));
    // P(skip = 0) = p
    CHECK(std::abs(static_cast<double>(zeros) / n - p) < 4.0 * std::sqrt(p * (1 - p) / n));
}
