#include "rangerenew/ratefn.hpp"

#include "rangerenew/certified.hpp"
#include "rangerenew/moments.hpp"
#include "rangerenew/quadrature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rangerenew {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_gamma_open(double gamma, const char* fn) {
    if (!(gamma > 0.0) || !(gamma < 1.0))
        throw std::domain_error(std::string(fn) + ": gamma must lie in (0,1)");
}

struct IntegralParts {
    double integral = 0.0;   // Int_0^inf log[1+c(1-e^-s)] s^-1-gamma ds
    double est_error = 0.0;
    int evaluations = 0;
};

// Shared quadrature body for the rate integrand or its lambda-derivative.
IntegralParts rate_integral(double gamma, double lam, double tol,
                            bool derivative) {
    IntegralParts out;
    const double c = std::expm1(lam);
    const double elam = std::exp(lam);
    const double m = 1.0 / (1.0 - gamma);

    auto base = [&](double s) {
        double w = -std::expm1(-s);
        if (derivative)
            return elam * w / (1.0 + c * w);
        return std::log1p(c * w);
    };
    // s = v^m flattens the s^-gamma endpoint behaviour; when v^m underflows
    // the integrand has already reached its v -> 0 limit.
    auto near = [&](double v) {
        double sm = std::pow(v, m);
        if (sm == 0.0) return m * (derivative ? elam : c);
        return m * base(sm) * std::pow(v, -m * gamma - 1.0);
    };
    auto far = [&](double s) { return base(s) * std::pow(s, -1.0 - gamma); };

    const double S = 50.0 + std::max(0.0, -lam) + std::max(0.0, lam);
    QuadResult qn = integrate(near, 0.0, 1.0, 0.25 * tol);
    QuadResult q1 = integrate(far, 1.0, 10.0, 0.25 * tol);
    QuadResult q2 = integrate(far, 10.0, S, 0.25 * tol);

    // Past S the integrand is lambda (resp. 1) up to an e^-s correction.
    double analytic = (derivative ? 1.0 : lam) * std::pow(S, -gamma) / gamma;
    double q = std::abs(-std::expm1(-lam));   // |c/(1+c)|
    double damp = q * std::exp(-S);
    double remainder = damp >= 0.5
                           ? kInf
                           : (derivative ? std::exp(std::max(0.0, -lam)) * std::exp(-S)
                                         : damp / (1.0 - damp)) *
                                 std::pow(S, -1.0 - gamma);

    out.integral = qn.value + q1.value + q2.value + analytic;
    out.est_error = qn.est_error + q1.est_error + q2.est_error + remainder;
    out.evaluations = qn.evaluations + q1.evaluations + q2.evaluations;
    return out;
}

} // namespace

RateFnSample lambda_gamma_integral(double gamma, double lam, double tol) {
    check_gamma_open(gamma, "lambda_gamma_integral");
    if (lam == 0.0) return {0.0, 0.0, true, "integral"};
    IntegralParts parts = rate_integral(gamma, lam, tol, false);
    double scale = gamma / std::tgamma(1.0 - gamma);
    double value = -lam + scale * parts.integral;
    double err = scale * parts.est_error;
    return {value, err, err <= std::max(tol, 1e-14 * std::abs(value)),
            "integral"};
}

RateFnSample lambda_gamma_derivative(double gamma, double lam, double tol) {
    check_gamma_open(gamma, "lambda_gamma_derivative");
    IntegralParts parts = rate_integral(gamma, lam, tol, true);
    double scale = gamma / std::tgamma(1.0 - gamma);
    double value = -1.0 + scale * parts.integral;
    double err = scale * parts.est_error;
    return {value, err, err <= std::max(tol, 1e-14 * std::abs(value)),
            "integral-derivative"};
}

RateFnSample lambda_gamma_series(double gamma, double lam, int n_terms) {
    if (!(gamma > 0.0) || !(gamma <= 1.0))
        throw std::domain_error("lambda_gamma_series: gamma must lie in (0,1]");
    if (n_terms < 1 || n_terms > 60)
        throw std::invalid_argument(
            "lambda_gamma_series: n_terms must lie in [1,60]; the inner "
            "binomial sums overflow double cancellation past 60 terms");
    const double w = -std::expm1(lam);   // 1 - e^lambda
    RateFnSample out;
    out.method = "series";
    if (std::abs(w) > 0.95) {
        out.value = std::numeric_limits<double>::quiet_NaN();
        out.est_error = kInf;
        out.converged = false;
        return out;
    }

    constexpr double eps = 2.220446049250313e-16;
    CompensatedSum acc;
    acc.add(-lam);
    double wn = 1.0;
    double noise = 0.0;
    double last_term = 0.0;
    for (int n = 1; n <= n_terms; ++n) {
        wn *= w;
        CompensatedSum inner;
        double max_partial = 0.0;
        double binom = 1.0;   // C(n-1, k-1)
        double sign = -1.0;
        for (int k = 1; k <= n; ++k) {
            inner.add(sign * binom * std::pow(static_cast<double>(k), gamma - 1.0));
            max_partial = std::max(max_partial, std::abs(inner.value()));
            binom *= static_cast<double>(n - k) / static_cast<double>(k);
            sign = -sign;
        }
        last_term = wn * inner.value();
        acc.add(last_term);
        noise += std::abs(wn) * max_partial * 2.0 * eps;
    }
    double truncation =
        std::abs(last_term) * std::abs(w) / (1.0 - std::abs(w));
    out.value = acc.value();
    out.est_error = truncation + noise + acc.rounding_error();
    out.converged = noise <= 1e-6 * std::max(std::abs(out.value), 1e-12);
    return out;
}

double lambda_one(double lam) { return std::expm1(lam) - lam; }

double mdp_rate(double gamma, double x) {
    if (!(gamma > 0.0) || !(gamma <= 1.0))
        throw std::domain_error("mdp_rate: gamma must lie in (0,1]");
    return x * x / (2.0 * (std::exp2(gamma) - 1.0));
}

ConjugateSample legendre_transform(double gamma, double x, double tol) {
    check_gamma_open(gamma, "legendre_transform");
    ConjugateSample out;
    out.x = x;
    if (x <= -1.0) {
        out.argmax = std::numeric_limits<double>::quiet_NaN();
        out.value = kInf;
        out.converged = true;
        return out;
    }
    const double dtol = std::min(1e-10, 0.1 * tol);
    int evals = 0;
    auto dL = [&](double l) {
        ++evals;
        return lambda_gamma_derivative(gamma, l, dtol).value;
    };

    // Lambda' is increasing with Lambda'(0) = 0; bracket then bisect/secant.
    const double cap = 50.0;
    double lo = 0.0, hi = 0.0, flo = 0.0, fhi = 0.0;
    bool bracketed = false;
    if (x == 0.0) {
        out.argmax = 0.0;
        out.value = 0.0;
        out.converged = true;
        return out;
    }
    if (x > 0.0) {
        lo = 0.0; flo = 0.0;
        double step = 0.25;
        for (hi = step; hi <= cap; hi = std::min(cap, hi * 2.0)) {
            fhi = dL(hi);
            if (fhi >= x) { bracketed = true; break; }
            lo = hi; flo = fhi;
            if (hi == cap) break;
        }
    } else {
        hi = 0.0; fhi = 0.0;
        double step = -0.25;
        for (lo = step; lo >= -cap; lo = std::max(-cap, lo * 2.0)) {
            flo = dL(lo);
            if (flo <= x) { bracketed = true; break; }
            hi = lo; fhi = flo;
            if (lo == -cap) break;
        }
    }
    if (!bracketed) {
        out.argmax = x > 0.0 ? cap : -cap;
        out.value = out.argmax * x - lambda_gamma_integral(gamma, out.argmax, dtol).value;
        out.converged = false;
        out.evaluations = evals;
        return out;
    }

    const double gtol = std::max(tol, 1e-9);
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        // secant proposal, safeguarded by the bracket
        double prop = fhi != flo ? lo + (x - flo) * (hi - lo) / (fhi - flo)
                                 : 0.5 * (lo + hi);
        if (!(prop > lo) || !(prop < hi)) prop = 0.5 * (lo + hi);
        mid = prop;
        double fm = dL(mid);
        if (std::abs(fm - x) <= gtol || hi - lo < 1e-12) {
            out.converged = true;
            break;
        }
        if (fm < x) { lo = mid; flo = fm; }
        else { hi = mid; fhi = fm; }
    }
    out.argmax = mid;
    out.value = mid * x - lambda_gamma_integral(gamma, mid, dtol).value;
    out.evaluations = evals;
    return out;
}

double finite_t_cgf(const DiscreteLaw& law, double t, double lam, double tol) {
    if (!(t > 0.0))
        throw std::domain_error("finite_t_cgf: t must be > 0");
    CertifiedValue mu_t = mu(law, t);
    if (!(mu_t.value > 0.0))
        throw std::domain_error("finite_t_cgf: mu(t) must be positive");
    const double c = std::expm1(lam);
    const double budget = 0.5 * tol * mu_t.value;

    // Grow the head until the third-order tail remainder fits the budget.
    std::int64_t N = law.series_head_cutoff(t);
    double ac = std::abs(c);
    CertifiedValue sq{0.0, 0.0};
    for (;;) {
        if (law.support_size() >= 0 && N >= law.support_size()) {
            N = law.support_size();
            sq = {0.0, 0.0};
            break;
        }
        sq = tail_hit_sq_sum(law, t, N);
        double pn = -std::expm1(-t * law.pmf(N + 1));
        double denom = 1.0 - ac * pn;
        if (denom > 0.5) {
            double rem = ac * ac * ac / 3.0 * sq.upper() * pn / denom;
            if (rem <= budget) break;
        }
        N *= 2;
        if (N > (1LL << 40))
            throw std::runtime_error("finite_t_cgf: cannot meet tolerance");
    }

    CompensatedSum head;
    for (std::int64_t i = 1; i <= N; ++i)
        head.add(std::log1p(c * -std::expm1(-t * law.pmf(i))));

    double tail = 0.0;
    if (law.support_size() < 0 || N < law.support_size()) {
        CertifiedValue t1 = tail_hit_sum(law, t, N);
        tail = c * t1.value - 0.5 * c * c * sq.value;
    }
    return -lam + (head.value() + tail) / mu_t.value;
}

} // namespace rangerenew
