#ifndef MEANDER_SPECIAL_HPP
#define MEANDER_SPECIAL_HPP

#include <functional>

namespace meander {

// Error function via Cody's rational Chebyshev approximations
// (W. J. Cody, Math. Comp. 23 (1969), 631-637). Absolute error < 1e-15.
double erf_cody(double x);
double erfc_cody(double x);

// standard normal cdf
double norm_cdf(double x);

// standard normal density
double norm_pdf(double x);

// 2*Phi(x) - 1 = erf(x/sqrt(2)), computed without cancellation near 0
double two_phi_minus_one(double x);

// log Gamma(x), x > 0 (Lanczos)
double lgamma_pos(double x);

// Regularized incomplete beta I_x(a,b), continued fraction (Lentz).
double inc_beta(double a, double b, double x);

// Regularized upper incomplete gamma Q(a,x); used for chi-square tails.
double inc_gamma_q(double a, double x);

// P(W_n <= x) for an n-step simple random walk from 0 (exact binomial cdf
// through inc_beta, ~1e-14). Arguments are plain integers, any sign of x.
double srw_cdf(long long n, long long x);

// Composite Simpson on [a,b] with 2m panels.
double simpson(const std::function<double(double)>& f, double a, double b, int panels);

// Simpson refined by doubling until |change| < tol (spec'd quadrature rule).
double simpson_auto(const std::function<double(double)>& f, double a, double b,
                    double tol = 1e-8, int initial_panels = 64, int max_doublings = 12);

// int_0^T h(w) dw for h with an inverse-square-root singularity at w = 0,
// handled by the substitution w = T u^2. h receives the distance w to the
// singular endpoint, so callers never form a cancelling difference.
double integrate_sqrt_singular_at_zero(const std::function<double(double)>& h,
                                       double T, int panels = 512);

}  // namespace meander

#endif  // MEANDER_SPECIAL_HPP
