#pragma once

#include "rangerenew/certified.hpp"

#include <cstdint>

namespace rangerenew {

// Sum_{i>N} i^{-s} for s > 1, N >= 0. Direct summation of the first terms,
// then Euler-Maclaurin at a >= 64; x^{-s} is completely monotone, so the
// remainder is bounded by the first omitted term.
CertifiedValue zeta_tail(double s, std::int64_t N);

// Phi(x) via erfc; absolute error well below 1e-14.
double normal_cdf(double x);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
// Series for x < a+1, continued fraction otherwise.
double gamma_q(double a, double x);

// Survival function of the Kolmogorov distribution,
// Q(t) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 t^2).
double kolmogorov_sf(double t);

} // namespace rangerenew
