#pragma once

#include "rangerenew/certified.hpp"
#include "rangerenew/laws.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rangerenew {

// Mean of the Poissonized distinct count, mu(t) = Sum_i (1 - e^{-t pi_i}).
// Head summed directly; the tail past N (chosen so t*pi_{N+1} <= 1/2) is the
// alternating series Sum_k (-1)^{k+1} t^k/k! Sum_{i>N} pi_i^k whose terms
// shrink by at least 1/2, so the truncation error is bounded by the first
// omitted term. tol is the requested absolute error; the achieved bound is
// recorded in the result and is normally far smaller.
CertifiedValue mu(const DiscreteLaw& law, double t, double tol = 1e-9);

// Var R*_t = mu(2t) - mu(t).
CertifiedValue sigma_sq(const DiscreteLaw& law, double t, double tol = 1e-9);

// d/dt mu(t) = Sum_i pi_i e^{-t pi_i}  (>= 0, non-increasing in t)
CertifiedValue mu_dot(const DiscreteLaw& law, double t, double tol = 1e-9);

// d2/dt2 mu(t) = -Sum_i pi_i^2 e^{-t pi_i}  (<= 0)
CertifiedValue mu_ddot(const DiscreteLaw& law, double t, double tol = 1e-9);

// E R_n = Sum_i [1 - (1-pi_i)^n] for integer n >= 0.
CertifiedValue exact_mean_Rn(const DiscreteLaw& law, std::int64_t n,
                             double tol = 1e-9);

// Delta(n) = 2 Sum_{i<j} [(1-pi_i)^n (1-pi_j)^n - (1-pi_i-pi_j)^n],
// summed over pairs with j <= pair_cutoff; the omitted pairs are bounded by
// 2 n B(n) Sum_{j>K} pi_j (1-pi_j)^{n-1} with B(n) = Sum_i pi_i (1-pi_i)^{n-1}
// and enter abs_error. O(pair_cutoff^2) work.
CertifiedValue delta_n(const DiscreteLaw& law, std::int64_t n,
                       std::int64_t pair_cutoff = 20000);

// Var R_n = E R_{2n} - E R_n - Delta(n).
CertifiedValue exact_var_Rn(const DiscreteLaw& law, std::int64_t n,
                            std::int64_t pair_cutoff = 20000,
                            double tol = 1e-9);

// Leading-order asymptotics Gamma(1-gamma) zeta(t) and
// (2^gamma - 1) Gamma(1-gamma) zeta(t) for laws with a power-law counting
// profile (gamma in (0,1)); nullopt otherwise.
std::optional<double> asymptotic_mu(const DiscreteLaw& law, double t);
std::optional<double> asymptotic_sigma_sq(const DiscreteLaw& law, double t);

// Chernoff bounds for X ~ Poisson(lambda):
//   P(X >= x) <= e^{-lambda} (e lambda / x)^x  for x > lambda
//   P(X <= x) <= e^{-lambda} (e lambda / x)^x  for 0 <= x < lambda (0^0 = 1)
double poisson_chernoff_upper(double lambda, double x);
double poisson_chernoff_lower(double lambda, double x);

// Certified Sum_{i>N} p_i and Sum_{i>N} p_i^2 with p_i = 1 - e^{-t pi_i};
// shared by the Poissonized simulator and the finite-t CGF.
CertifiedValue tail_hit_sum(const DiscreteLaw& law, double t, std::int64_t N);
CertifiedValue tail_hit_sq_sum(const DiscreteLaw& law, double t, std::int64_t N);
// Certified Sum_{i>N} pi_i (1-pi_i)^{n-1}.
CertifiedValue tail_mean_pow(const DiscreteLaw& law, std::int64_t n, std::int64_t N);

struct MomentRow {
    double t = 0.0;
    CertifiedValue mu;
    CertifiedValue sigma_sq;
    CertifiedValue mu_dot;
    CertifiedValue mu_ddot;
    std::optional<CertifiedValue> exact_mean;  // integer t only
    std::optional<CertifiedValue> exact_var;   // integer t only
    std::optional<double> asym_mu;
    std::optional<double> asym_sigma_sq;
};

std::vector<MomentRow> moments_table(const DiscreteLaw& law,
                                     const std::vector<double>& ts,
                                     double tol = 1e-9,
                                     std::int64_t pair_cutoff = 20000);

} // namespace rangerenew
