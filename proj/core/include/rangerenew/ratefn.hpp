#pragma once

#include "rangerenew/laws.hpp"

#include <string>

namespace rangerenew {

// One evaluation of the large-deviation cumulant limit
//   Lambda_gamma(lambda) = -lambda
//     + gamma/Gamma(1-gamma) * Int_0^inf log[1+(e^lambda-1)(1-e^-s)] s^-1-gamma ds,
// by quadrature or by the series expansion valid for |1-e^lambda| < 1.
struct RateFnSample {
    double value = 0.0;
    double est_error = 0.0;
    bool converged = false;
    std::string method;
};

// Quadrature route: the s->0 singularity is flattened by s = v^{1/(1-gamma)},
// the integral is truncated at S >= 50 with the analytic first-order tail
// lambda S^-gamma / gamma added back and the second-order remainder bounded.
RateFnSample lambda_gamma_integral(double gamma, double lam,
                                   double tol = 1e-10);

// Series route (valid for |1 - e^lambda| < 0.95, n_terms <= 60):
//   -lambda + sum_n (1-e^lambda)^n sum_{k=1..n} (-1)^k k^{gamma-1} C(n-1,k-1).
// Inner sums cancel heavily for large n; accumulated rounding noise is
// tracked and the sample is flagged not converged when it exceeds 1e-6 of
// the result.
RateFnSample lambda_gamma_series(double gamma, double lam, int n_terms = 60);

// d/dlambda of the quadrature route (differentiated under the integral).
RateFnSample lambda_gamma_derivative(double gamma, double lam,
                                     double tol = 1e-10);

// gamma = 1 closed form e^lambda - 1 - lambda.
double lambda_one(double lam);

// Moderate-deviation rate x^2 / (2 (2^gamma - 1)), gamma in (0,1].
double mdp_rate(double gamma, double x);

struct ConjugateSample {
    double x = 0.0;
    double argmax = 0.0;
    double value = 0.0;
    bool converged = false;
    int evaluations = 0;
};

// Fenchel-Legendre transform Lambda*_gamma(x) = sup_l {l x - Lambda_gamma(l)}
// solved via bracketed monotone root finding on Lambda'. Returns +inf for
// x <= -1 (the distinct count cannot drop below 0, i.e. Y below -1).
ConjugateSample legendre_transform(double gamma, double x, double tol = 1e-8);

// Scaled finite-t cumulant generating function
//   Lambda_t(lambda mu(t)) / mu(t)
//     = -lambda + (1/mu(t)) Sum_i log[1 + (e^lambda - 1)(1 - e^{-t pi_i})],
// certified head plus second-order tail so the absolute error is <= tol.
double finite_t_cgf(const DiscreteLaw& law, double t, double lam,
                    double tol = 1e-9);

} // namespace rangerenew
