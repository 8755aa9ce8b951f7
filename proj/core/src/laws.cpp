#include "rangerenew/laws.hpp"

#include "rangerenew/special.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rangerenew {

namespace {

constexpr std::int64_t kZipfHeadTable = 4096;
constexpr std::int64_t kZipfNormHead = 65536;

double factorial_as_double(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Exact dyadic atom 2^(1-n!) - 2^(1-(n+1)!), zero once the exponent
// underflows double.
double factgap_pmf(int i) {
    auto pow2 = [](double e) {
        return e < -1200.0 ? 0.0 : std::exp2(e);
    };
    return pow2(1.0 - factorial_as_double(i)) - pow2(1.0 - factorial_as_double(i + 1));
}

} // namespace

DiscreteLaw make_zipf(double gamma) {
    if (!(gamma > 0.0) || !(gamma < 1.0))
        throw std::invalid_argument("zipf gamma must lie in the open interval (0,1)");
    DiscreteLaw law;
    law.kind_ = LawKind::Zipf;
    law.gamma_ = gamma;
    law.alpha_ = 1.0 / gamma;

    CompensatedSum zs;
    for (std::int64_t i = 1; i <= kZipfNormHead; ++i)
        zs.add(std::pow(static_cast<double>(i), -law.alpha_));
    CertifiedValue tail = zeta_tail(law.alpha_, kZipfNormHead);
    law.normalizer_ = {zs.value() + tail.value,
                       zs.rounding_error() + tail.abs_error};

    law.cdf_.resize(kZipfHeadTable);
    CompensatedSum cs;
    for (std::int64_t i = 1; i <= kZipfHeadTable; ++i) {
        cs.add(std::pow(static_cast<double>(i), -law.alpha_) / law.normalizer_.value);
        law.cdf_[static_cast<std::size_t>(i - 1)] = cs.value();
    }
    return law;
}

DiscreteLaw make_geometric(double q) {
    if (!(q > 0.0) || !(q < 1.0))
        throw std::invalid_argument("geometric q must lie in the open interval (0,1)");
    DiscreteLaw law;
    law.kind_ = LawKind::Geometric;
    law.q_ = q;
    law.normalizer_ = {1.0, 0.0};
    return law;
}

DiscreteLaw make_finite(std::vector<double> weights) {
    if (weights.empty())
        throw std::invalid_argument("finite law needs at least one weight");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w > 0.0))
            throw std::invalid_argument("finite law weights must be positive");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("finite law weights must sum to 1 within 1e-9");
    std::sort(weights.begin(), weights.end(), std::greater<double>());
    for (double& w : weights) w /= sum;

    DiscreteLaw law;
    law.kind_ = LawKind::Finite;
    law.weights_ = std::move(weights);
    law.cdf_.resize(law.weights_.size());
    CompensatedSum cs;
    for (std::size_t i = 0; i < law.weights_.size(); ++i) {
        cs.add(law.weights_[i]);
        law.cdf_[i] = cs.value();
    }
    law.cdf_.back() = 1.0;
    law.normalizer_ = {1.0, static_cast<double>(law.weights_.size()) * 1e-16};
    return law;
}

DiscreteLaw make_factorial_gap() {
    DiscreteLaw law;
    law.kind_ = LawKind::FactorialGap;
    for (int i = 1; i <= 8; ++i)
        law.weights_.push_back(factgap_pmf(i));
    law.normalizer_ = {1.0, std::numeric_limits<double>::denorm_min()};
    return law;
}

double DiscreteLaw::pmf(std::int64_t i) const {
    if (i < 1) return 0.0;
    switch (kind_) {
    case LawKind::Zipf:
        return std::pow(static_cast<double>(i), -alpha_) / normalizer_.value;
    case LawKind::Geometric:
        return (1.0 - q_) * std::pow(q_, static_cast<double>(i - 1));
    case LawKind::Finite:
        return i <= static_cast<std::int64_t>(weights_.size())
                   ? weights_[static_cast<std::size_t>(i - 1)]
                   : 0.0;
    case LawKind::FactorialGap:
        return i <= static_cast<std::int64_t>(weights_.size())
                   ? weights_[static_cast<std::size_t>(i - 1)]
                   : 0.0;
    }
    return 0.0;
}

double DiscreteLaw::log_pmf(std::int64_t i) const {
    if (i < 1) return -std::numeric_limits<double>::infinity();
    switch (kind_) {
    case LawKind::Zipf:
        return -alpha_ * std::log(static_cast<double>(i)) - std::log(normalizer_.value);
    case LawKind::Geometric:
        return std::log1p(-q_) + static_cast<double>(i - 1) * std::log(q_);
    case LawKind::Finite: {
        double p = pmf(i);
        return p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
    }
    case LawKind::FactorialGap: {
        // pi_i = 2^(1-i!) (1 - 2^(-i*i!)); exact in log space far past the
        // linear-space underflow at i = 7.
        if (i > 170) return -std::numeric_limits<double>::infinity();
        double fact = factorial_as_double(static_cast<int>(i));
        constexpr double ln2 = 0.6931471805599453094;
        double gap = -static_cast<double>(i) * fact * ln2;
        return (1.0 - fact) * ln2 + std::log1p(-std::exp(gap));
    }
    }
    return -std::numeric_limits<double>::infinity();
}

std::int64_t DiscreteLaw::sample_zipf(Philox& rng) const {
    double u = rng.next_double();
    if (u < cdf_.back()) {
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        return static_cast<std::int64_t>(it - cdf_.begin()) + 1;
    }
    // Tail i > 4096 by rejection: continuous envelope density ~ x^-alpha on
    // [M+1/2, inf); a rounded candidate k is accepted with probability
    // k^-alpha / integral_{k-1/2}^{k+1/2} x^-alpha dx <= 1 (midpoint rule
    // under-estimates integrals of convex functions).
    const double base = static_cast<double>(kZipfHeadTable) + 0.5;
    const double am1 = alpha_ - 1.0;
    for (;;) {
        double v = rng.next_double_pos();
        double x = base * std::pow(v, -1.0 / am1);
        if (x >= 4.0e15) continue;
        double k = std::floor(x + 0.5);
        // integral = (k-1/2)^(1-alpha) (1 - r) / (alpha-1),
        // r = ((k+1/2)/(k-1/2))^(1-alpha)
        double lo = k - 0.5;
        double r = std::exp(-am1 * std::log1p(1.0 / lo));
        double integral = std::pow(lo, -am1) * (1.0 - r) / am1;
        double accept = std::pow(k, -alpha_) / integral;
        if (rng.next_double() <= accept)
            return static_cast<std::int64_t>(k);
    }
}

std::int64_t DiscreteLaw::sample(Philox& rng) const {
    switch (kind_) {
    case LawKind::Zipf:
        return sample_zipf(rng);
    case LawKind::Geometric: {
        double u = rng.next_double_pos();
        double g = std::floor(std::log(u) / std::log(q_));
        return 1 + static_cast<std::int64_t>(g);
    }
    case LawKind::Finite: {
        double u = rng.next_double();
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        if (it == cdf_.end()) --it;
        return static_cast<std::int64_t>(it - cdf_.begin()) + 1;
    }
    case LawKind::FactorialGap: {
        // P(X > i) = 2^(1-(i+1)!); invert in log2 space so the comparison
        // stays exact for every representable uniform.
        double v = rng.next_double_pos();
        double L = 1.0 - std::log2(v);
        double fact = 2.0;  // (i+1)! at i = 1
        std::int64_t i = 1;
        while (fact <= L) {
            ++i;
            fact *= static_cast<double>(i + 1);
        }
        return i;
    }
    }
    return 1;
}

CertifiedValue DiscreteLaw::tail_power_sum(int k, std::int64_t N) const {
    switch (kind_) {
    case LawKind::Zipf: {
        CertifiedValue zt = zeta_tail(alpha_ * k, N);
        double zk = std::pow(normalizer_.value, -static_cast<double>(k));
        double value = zt.value * zk;
        double err = zt.abs_error * zk
                   + value * (k * normalizer_.abs_error / normalizer_.value);
        return {value, err};
    }
    case LawKind::Geometric: {
        // Sum_{i>N} ((1-q) q^{i-1})^k = (1-q)^k q^{kN} / (1 - q^k)
        double logv = k * std::log1p(-q_) + static_cast<double>(k) * static_cast<double>(N) * std::log(q_);
        double denom = -std::expm1(static_cast<double>(k) * std::log(q_));
        double value = std::exp(logv) / denom;
        return {value, 8.0 * std::numeric_limits<double>::epsilon() * value};
    }
    case LawKind::Finite:
    case LawKind::FactorialGap: {
        CompensatedSum cs;
        for (std::size_t i = static_cast<std::size_t>(std::max<std::int64_t>(N, 0));
             i < weights_.size(); ++i)
            cs.add(std::pow(weights_[i], static_cast<double>(k)));
        double err = cs.rounding_error();
        if (kind_ == LawKind::FactorialGap)
            err += std::numeric_limits<double>::denorm_min();
        return {cs.value(), err};
    }
    }
    return {0.0, 0.0};
}

std::int64_t DiscreteLaw::series_head_cutoff(double x) const {
    if (x <= 0.0) return 0;
    std::int64_t n = 0;
    switch (kind_) {
    case LawKind::Zipf:
        n = static_cast<std::int64_t>(
            std::ceil(std::pow(2.0 * x / normalizer_.value, gamma_)));
        break;
    case LawKind::Geometric: {
        double lead = 2.0 * x * (1.0 - q_);
        n = lead <= 1.0 ? 0
                        : static_cast<std::int64_t>(
                              std::ceil(std::log(lead) / std::log(1.0 / q_)));
        break;
    }
    case LawKind::Finite:
        return static_cast<std::int64_t>(weights_.size());
    case LawKind::FactorialGap:
        n = 0;
        break;
    }
    if (n < 0) n = 0;
    while (x * pmf(n + 1) > 0.5) ++n;
    return n;
}

std::int64_t DiscreteLaw::support_size() const {
    return kind_ == LawKind::Finite ? static_cast<std::int64_t>(weights_.size())
                                    : -1;
}

std::string DiscreteLaw::spec_string() const {
    // shortest representation that parses back to the identical double
    auto shortest = [](double v) {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    };
    std::string out;
    switch (kind_) {
    case LawKind::Zipf:
        out = "zipf:gamma=" + shortest(gamma_);
        break;
    case LawKind::Geometric:
        out = "geom:q=" + shortest(q_);
        break;
    case LawKind::Finite: {
        out = "finite:";
        for (std::size_t i = 0; i < weights_.size(); ++i)
            out += (i ? "," : "") + shortest(weights_[i]);
        break;
    }
    case LawKind::FactorialGap:
        out = "factgap";
        break;
    }
    return out;
}

std::optional<RegularProfile> regular_profile(const DiscreteLaw& law) {
    switch (law.kind()) {
    case LawKind::Zipf: {
        RegularProfile p;
        p.gamma = law.param_gamma();
        double Z = law.normalizer().value;
        double gamma = law.param_gamma();
        double alpha = law.param_alpha();
        p.zeta = [Z, gamma](double y) { return std::pow(y / Z, gamma); };
        p.phi = [Z, alpha](double n) { return Z * std::pow(n, alpha); };
        return p;
    }
    case LawKind::Geometric: {
        RegularProfile p;
        p.gamma = 1.0;
        return p;
    }
    case LawKind::Finite:
    case LawKind::FactorialGap:
        return std::nullopt;
    }
    return std::nullopt;
}

DiscreteLaw parse_law_spec(const std::string& spec) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);

    auto parse_double = [&](const std::string& s) {
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad number '" + s + "' in law spec '" + spec + "'");
        }
        if (pos != s.size())
            throw std::invalid_argument("bad number '" + s + "' in law spec '" + spec + "'");
        return v;
    };

    if (name == "zipf") {
        std::string key = "gamma=";
        auto eq = args.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("zipf law spec must be zipf:gamma=G with G in (0,1)");
        std::string keyname = args.substr(0, eq);
        if (keyname != "gamma" && keyname != "\xce\xb3")
            throw std::invalid_argument("zipf law spec must be zipf:gamma=G with G in (0,1)");
        return make_zipf(parse_double(args.substr(eq + 1)));
    }
    if (name == "geom") {
        auto eq = args.find('=');
        if (eq == std::string::npos || args.substr(0, eq) != "q")
            throw std::invalid_argument("geometric law spec must be geom:q=Q with Q in (0,1)");
        return make_geometric(parse_double(args.substr(eq + 1)));
    }
    if (name == "finite") {
        std::vector<double> w;
        std::string cur;
        std::istringstream is(args);
        while (std::getline(is, cur, ','))
            w.push_back(parse_double(cur));
        return make_finite(std::move(w));
    }
    if (name == "factgap") {
        if (!args.empty())
            throw std::invalid_argument("factgap law takes no parameters");
        return make_factorial_gap();
    }
    throw std::invalid_argument(
        "unknown law '" + name + "'; expected zipf:gamma=G, geom:q=Q, finite:w1,w2,..., factgap");
}

} // namespace rangerenew
