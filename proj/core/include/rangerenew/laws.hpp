#pragma once

#include "rangerenew/certified.hpp"
#include "rangerenew/rng.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rangerenew {

enum class LawKind { Zipf, Geometric, Finite, FactorialGap };

// A probability law on {1, 2, ...} with atoms sorted non-increasing.
// Immutable after construction.
class DiscreteLaw {
public:
    LawKind kind() const { return kind_; }
    double pmf(std::int64_t i) const;
    double log_pmf(std::int64_t i) const;
    std::int64_t sample(Philox& rng) const;

    // Certified Sum_{i>N} pi_i^k, k >= 1.
    CertifiedValue tail_power_sum(int k, std::int64_t N) const;
    // Smallest N with x * pi_{N+1} <= 1/2; head cutoff for the alternating
    // tail series used by the moment functionals.
    std::int64_t series_head_cutoff(double x) const;

    std::int64_t support_size() const;  // -1 when infinite
    bool oracle_only() const { return kind_ == LawKind::Finite; }
    CertifiedValue normalizer() const { return normalizer_; }

    double param_gamma() const { return gamma_; }   // Zipf only
    double param_alpha() const { return alpha_; }   // Zipf only
    double param_q() const { return q_; }           // Geometric only
    const std::vector<double>& finite_weights() const { return weights_; }

    std::string spec_string() const;

    friend DiscreteLaw make_zipf(double gamma);
    friend DiscreteLaw make_geometric(double q);
    friend DiscreteLaw make_finite(std::vector<double> weights);
    friend DiscreteLaw make_factorial_gap();

private:
    DiscreteLaw() = default;

    std::int64_t sample_zipf(Philox& rng) const;

    LawKind kind_ = LawKind::Finite;
    double gamma_ = 0.0;
    double alpha_ = 0.0;
    double q_ = 0.0;
    CertifiedValue normalizer_{1.0, 0.0};
    std::vector<double> weights_;   // Finite atoms / FactorialGap head
    std::vector<double> cdf_;       // sampling table
};

// pi_i = i^{-1/gamma} / Z, gamma in (0,1).
DiscreteLaw make_zipf(double gamma);
// pi_i = (1-q) q^{i-1}, q in (0,1).
DiscreteLaw make_geometric(double q);
// Explicit atoms; must be positive and sum to 1 within 1e-9 (renormalized).
DiscreteLaw make_finite(std::vector<double> weights);
// pi_i = 2 [ (1/2)^{i!} - (1/2)^{(i+1)!} ]; atoms below 2^-1074 underflow to
// zero in double (i >= 7), acceptable for this illustrative law.
DiscreteLaw make_factorial_gap();

// Power-law regularity data: counting scale zeta(y) = #{i: 1/pi_i <= y}
// asymptotics and its inverse phi. Geometric laws are 1-regular and carry no
// counting scale; Finite and FactorialGap laws are not regular.
struct RegularProfile {
    double gamma = 0.0;
    std::function<double(double)> zeta;  // empty when gamma == 1
    std::function<double(double)> phi;
};

std::optional<RegularProfile> regular_profile(const DiscreteLaw& law);

// Accepts "zipf:gamma=G" (also the UTF-8 gamma letter), "geom:q=Q",
// "finite:w1,w2,...", "factgap". Throws std::invalid_argument with a
// message naming the valid range on bad input.
DiscreteLaw parse_law_spec(const std::string& spec);

} // namespace rangerenew
