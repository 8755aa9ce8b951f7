#include "rangerenew/rng.hpp"

#include <cmath>

namespace rangerenew {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline void philox_round(std::array<std::uint32_t, 4>& x,
                         const std::array<std::uint32_t, 2>& k) {
    std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * x[0];
    std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * x[2];
    std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
}

} // namespace

std::array<std::uint32_t, 4> Philox::block(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        philox_round(ctr, key);
    }
    return ctr;
}

Philox::Philox(std::uint64_t master_seed, std::uint64_t stream_id) {
    std::uint64_t k = splitmix64(splitmix64(master_seed) ^ splitmix64(stream_id ^ 0xA5A5A5A55A5A5A5Aull));
    key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
}

void Philox::refill() {
    buf_ = block(ctr_, key_);
    pos_ = 0;
    if (++ctr_[0] == 0)
        if (++ctr_[1] == 0)
            if (++ctr_[2] == 0)
                ++ctr_[3];
}

std::uint32_t Philox::next_u32() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
}

std::uint64_t Philox::next_u64() {
    std::uint64_t lo = next_u32();
    std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
}

double Philox::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Philox::next_double_pos() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double Philox::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_normal_;
    }
    double u, v, s;
    do {
        u = 2.0 * next_double() - 1.0;
        v = 2.0 * next_double() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * m;
    have_spare_ = true;
    return u * m;
}

std::int64_t Philox::geometric_skips(double log1p_neg_p) {
    // floor(log(U)/log(1-p)) with U uniform on (0,1].
    double u = next_double_pos();
    if (u == 1.0) return 0;
    return static_cast<std::int64_t>(std::log(u) / log1p_neg_p);
}

std::int64_t Philox::poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    if (lambda < 30.0) {
        // Inversion by sequential search.
        double p = std::exp(-lambda);
        double cum = p;
        double u = next_double();
        std::int64_t k = 0;
        while (u > cum) {
            ++k;
            p *= lambda / static_cast<double>(k);
            cum += p;
            if (p < 1e-320) break;
        }
        return k;
    }
    // Hormann's PTRD transformed rejection; exact for lambda >= 10.
    const double smu = std::sqrt(lambda);
    const double b = 0.931 + 2.53 * smu;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    const double log_lambda = std::log(lambda);
    for (;;) {
        double u = next_double() - 0.5;
        double v = next_double();
        double us = 0.5 - std::abs(u);
        double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= vr)
            return static_cast<std::int64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us))
            continue;
        double k = kf;
        double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
        double rhs = k * log_lambda - lambda - std::lgamma(k + 1.0);
        if (lhs <= rhs)
            return static_cast<std::int64_t>(kf);
    }
}

} // namespace rangerenew
