#include "rangerenew/moments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rangerenew {

namespace {

// Alternating tail series Sum_{k>=k0} coef_k V_{k+v_off} with
// V_m = Sum_{i>N} pi_i^m and either Poisson-style coefficients
// (-1)^(k+k0+1) x^k/k! or binomial coefficients (-1)^(k+k0+1) C(n,k).
// Precondition: x*pi_{N+1} <= 1/2 so successive terms shrink by >= 1/2 and
// the truncation error is bounded by the first omitted term.
CertifiedValue alternating_tail(const DiscreteLaw& law, std::int64_t N,
                                double x, bool binomial, int k0, int v_off) {
    CertifiedValue V = law.tail_power_sum(k0 + v_off, N);
    double coef = 1.0;
    for (int j = 1; j <= k0; ++j)
        coef *= binomial ? (x - j + 1.0) / j : x / j;

    CompensatedSum acc;
    double err = 0.0;
    double sign = 1.0;
    double term = coef * V.value;
    err += coef * V.abs_error;
    int k = k0;
    while (true) {
        acc.add(sign * term);
        if (binomial && k >= static_cast<std::int64_t>(x)) {
            // binomial coefficients vanish past k = n: series is exact
            break;
        }
        double coef_ratio = binomial ? (x - k) / (k + 1.0) : x / (k + 1.0);
        CertifiedValue Vn = law.tail_power_sum(k + 1 + v_off, N);
        coef *= coef_ratio;
        double next = coef * Vn.value;
        err += coef * Vn.abs_error;
        if (!(next > 0.0) || next < 1e-18 * (std::abs(acc.value()) + 1e-300) ||
            k > 400) {
            err += next;  // first omitted term bounds the truncation error
            break;
        }
        term = next;
        V = Vn;
        sign = -sign;
        ++k;
    }
    return {acc.value(), err + acc.rounding_error()};
}

CertifiedValue mu_impl(const DiscreteLaw& law, double t) {
    if (t == 0.0) return {0.0, 0.0};
    std::int64_t N = law.series_head_cutoff(t);
    CompensatedSum head;
    for (std::int64_t i = 1; i <= N; ++i)
        head.add(-std::expm1(-t * law.pmf(i)));
    CertifiedValue tail{0.0, 0.0};
    if (law.support_size() < 0 || N < law.support_size())
        tail = alternating_tail(law, N, t, false, 1, 0);
    return {head.value() + tail.value,
            head.rounding_error() + tail.abs_error};
}

// Sum_i pi_i^m e^{-t pi_i}
CertifiedValue pow_exp_sum(const DiscreteLaw& law, double t, int m) {
    std::int64_t N = law.series_head_cutoff(t);
    CompensatedSum head;
    for (std::int64_t i = 1; i <= N; ++i) {
        double p = law.pmf(i);
        head.add(std::pow(p, m) * std::exp(-t * p));
    }
    CertifiedValue tail{0.0, 0.0};
    if (law.support_size() < 0 || N < law.support_size())
        tail = alternating_tail(law, N, t, false, 0, m);
    return {head.value() + tail.value,
            head.rounding_error() + tail.abs_error};
}

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

} // namespace

CertifiedValue mu(const DiscreteLaw& law, double t, double) {
    require(t >= 0.0, "mu: t must be >= 0");
    return mu_impl(law, t);
}

CertifiedValue sigma_sq(const DiscreteLaw& law, double t, double) {
    require(t >= 0.0, "sigma_sq: t must be >= 0");
    CertifiedValue a = mu_impl(law, 2.0 * t);
    CertifiedValue b = mu_impl(law, t);
    return a - b;
}

CertifiedValue mu_dot(const DiscreteLaw& law, double t, double) {
    require(t >= 0.0, "mu_dot: t must be >= 0");
    return pow_exp_sum(law, t, 1);
}

CertifiedValue mu_ddot(const DiscreteLaw& law, double t, double) {
    require(t >= 0.0, "mu_ddot: t must be >= 0");
    CertifiedValue s = pow_exp_sum(law, t, 2);
    return {-s.value, s.abs_error};
}

CertifiedValue exact_mean_Rn(const DiscreteLaw& law, std::int64_t n, double) {
    require(n >= 0, "exact_mean_Rn: n must be >= 0");
    if (n == 0) return {0.0, 0.0};
    double nd = static_cast<double>(n);
    std::int64_t N = law.series_head_cutoff(nd);
    CompensatedSum head;
    for (std::int64_t i = 1; i <= N; ++i)
        head.add(-std::expm1(nd * std::log1p(-law.pmf(i))));
    CertifiedValue tail{0.0, 0.0};
    if (law.support_size() < 0 || N < law.support_size())
        tail = alternating_tail(law, N, nd, true, 1, 0);
    return {head.value() + tail.value,
            head.rounding_error() + tail.abs_error};
}

CertifiedValue tail_mean_pow(const DiscreteLaw& law, std::int64_t n,
                             std::int64_t K) {
    // Sum_{i>K} pi_i (1-pi_i)^{n-1}
    double nd = static_cast<double>(n);
    std::int64_t N = std::max(K, law.series_head_cutoff(nd - 1.0));
    CompensatedSum head;
    for (std::int64_t i = K + 1; i <= N; ++i) {
        double p = law.pmf(i);
        head.add(p * std::exp((nd - 1.0) * std::log1p(-p)));
    }
    CertifiedValue tail{0.0, 0.0};
    if (law.support_size() < 0 || N < law.support_size())
        tail = alternating_tail(law, N, nd - 1.0, true, 0, 1);
    return {head.value() + tail.value,
            head.rounding_error() + tail.abs_error};
}

CertifiedValue delta_n(const DiscreteLaw& law, std::int64_t n,
                       std::int64_t pair_cutoff) {
    require(n >= 1, "delta_n: n must be >= 1");
    require(pair_cutoff >= 1, "delta_n: pair_cutoff must be >= 1");
    std::int64_t K = pair_cutoff;
    if (law.support_size() >= 0) K = std::min(K, law.support_size());

    double nd = static_cast<double>(n);
    std::vector<double> pv(static_cast<std::size_t>(K));
    std::vector<double> xv(static_cast<std::size_t>(K));
    for (std::int64_t i = 0; i < K; ++i) {
        pv[static_cast<std::size_t>(i)] = law.pmf(i + 1);
        xv[static_cast<std::size_t>(i)] =
            std::exp(nd * std::log1p(-pv[static_cast<std::size_t>(i)]));
    }

    CompensatedSum acc;
    for (std::int64_t i = 0; i < K; ++i) {
        double pi = pv[static_cast<std::size_t>(i)];
        double xi = xv[static_cast<std::size_t>(i)];
        if (pi == 0.0) break;   // atoms below this underflowed to zero
        if (xi == 0.0) continue;  // (1-pi_i)^n == 0 forces every pair term to 0
        for (std::int64_t j = i + 1; j < K; ++j) {
            double y = pi + pv[static_cast<std::size_t>(j)];
            double joint = y >= 1.0 ? 0.0 : std::exp(nd * std::log1p(-y));
            acc.add(xi * xv[static_cast<std::size_t>(j)] - joint);
        }
    }

    // Omitted pairs have j > K: bounded via
    // x^n - y^n <= n (x-y) x^{n-1} with x-y = pi_i pi_j.
    double tail_bound = 0.0;
    if (law.support_size() < 0 || K < law.support_size()) {
        CertifiedValue full = tail_mean_pow(law, n, 0);
        CertifiedValue past = tail_mean_pow(law, n, K);
        tail_bound = 2.0 * nd * full.upper() * past.upper();
    }
    return {2.0 * acc.value(), 2.0 * acc.rounding_error() + tail_bound};
}

CertifiedValue exact_var_Rn(const DiscreteLaw& law, std::int64_t n,
                            std::int64_t pair_cutoff, double tol) {
    CertifiedValue m2 = exact_mean_Rn(law, 2 * n, tol);
    CertifiedValue m1 = exact_mean_Rn(law, n, tol);
    CertifiedValue d = delta_n(law, n, pair_cutoff);
    return m2 - m1 - d;
}

std::optional<double> asymptotic_mu(const DiscreteLaw& law, double t) {
    auto prof = regular_profile(law);
    if (!prof || !prof->zeta) return std::nullopt;
    return std::tgamma(1.0 - prof->gamma) * prof->zeta(t);
}

std::optional<double> asymptotic_sigma_sq(const DiscreteLaw& law, double t) {
    auto prof = regular_profile(law);
    if (!prof || !prof->zeta) return std::nullopt;
    return (std::exp2(prof->gamma) - 1.0) * std::tgamma(1.0 - prof->gamma) *
           prof->zeta(t);
}

namespace {
double chernoff_body(double lambda, double x) {
    if (x == 0.0) return std::exp(-lambda);  // 0^0 = 1
    return std::exp(-lambda + x - x * std::log(x / lambda));
}
} // namespace

double poisson_chernoff_upper(double lambda, double x) {
    require(lambda > 0.0, "poisson_chernoff_upper: lambda must be > 0");
    require(x > lambda, "poisson_chernoff_upper: requires x > lambda");
    double b = chernoff_body(lambda, x);
    return b > 1.0 ? 1.0 : b;
}

double poisson_chernoff_lower(double lambda, double x) {
    require(lambda > 0.0, "poisson_chernoff_lower: lambda must be > 0");
    require(x >= 0.0 && x < lambda,
            "poisson_chernoff_lower: requires 0 <= x < lambda");
    double b = chernoff_body(lambda, x);
    return b > 1.0 ? 1.0 : b;
}

CertifiedValue tail_hit_sum(const DiscreteLaw& law, double t, std::int64_t N) {
    if (law.support_size() >= 0 && N >= law.support_size()) return {0.0, 0.0};
    std::int64_t M = std::max(N, law.series_head_cutoff(t));
    CompensatedSum head;
    for (std::int64_t i = N + 1; i <= M; ++i)
        head.add(-std::expm1(-t * law.pmf(i)));
    CertifiedValue tail = alternating_tail(law, M, t, false, 1, 0);
    return {head.value() + tail.value,
            head.rounding_error() + tail.abs_error};
}

CertifiedValue tail_hit_sq_sum(const DiscreteLaw& law, double t,
                               std::int64_t N) {
    // (1-e^{-x})^2 = 2(1-e^{-x}) - (1-e^{-2x})
    if (law.support_size() >= 0 && N >= law.support_size()) return {0.0, 0.0};
    CertifiedValue a = tail_hit_sum(law, t, N);
    CertifiedValue b = tail_hit_sum(law, 2.0 * t, N);
    CertifiedValue r = (2.0 * a) - b;
    if (r.value < 0.0) r.value = 0.0;
    return r;
}

std::vector<MomentRow> moments_table(const DiscreteLaw& law,
                                     const std::vector<double>& ts, double tol,
                                     std::int64_t pair_cutoff) {
    std::vector<MomentRow> rows;
    rows.reserve(ts.size());
    for (double t : ts) {
        MomentRow row;
        row.t = t;
        row.mu = mu(law, t, tol);
        row.sigma_sq = sigma_sq(law, t, tol);
        row.mu_dot = mu_dot(law, t, tol);
        row.mu_ddot = mu_ddot(law, t, tol);
        double ti;
        if (t >= 1.0 && std::modf(t, &ti) == 0.0 && t <= 9.0e15) {
            auto n = static_cast<std::int64_t>(t);
            row.exact_mean = exact_mean_Rn(law, n, tol);
            row.exact_var = exact_var_Rn(law, n, pair_cutoff, tol);
        }
        row.asym_mu = asymptotic_mu(law, t);
        row.asym_sigma_sq = asymptotic_sigma_sq(law, t);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace rangerenew
