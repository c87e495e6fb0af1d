#pragma once

// Riemann zeta on the strip sigma > -1, |t| <= 1e5, by Euler-Maclaurin summation
// with an adaptive cutoff and up to 15 Bernoulli corrections.

#include <complex>
#include <cstdint>
#include <vector>

namespace ftl {

using cplx = std::complex<double>;

// A complex number whose components are finite (checked on construction).
struct ComplexValue
{
	double re = 0.0;
	double im = 0.0;

	ComplexValue() = default;
	ComplexValue(double re_, double im_ = 0.0);
	ComplexValue(cplx z) : ComplexValue(z.real(), z.imag()) {}  // NOLINT

	cplx c() const { return {re, im}; }
	operator cplx() const { return c(); }  // NOLINT
};

struct EvalResult
{
	ComplexValue value;
	double err_bound = 0.0;
	std::int64_t terms_used = 1;
};

inline constexpr double zeta_max_height = 1e5;
inline constexpr double zeta_min_tol = 1e-14;

// Throws convergence_error when rounding alone keeps err_bound above tol.
EvalResult zeta(ComplexValue s, double tol = 1e-12);
// Truncation meets tol; err_bound is reported even when rounding pushes it higher.
EvalResult zeta_best_effort(ComplexValue s, double tol = 1e-12);
EvalResult zeta_derivative(ComplexValue s, double tol = 1e-12);

// h(s) = zeta(s) - 1/(s-1), with the pole removed analytically; h(1) = gamma.
EvalResult laurent_h(ComplexValue s, double tol = 1e-12);

inline constexpr double euler_gamma = 0.57721566490153286061;
inline constexpr double zeta2 = 1.64493406684822643647;  // pi^2/6

struct ZetaScanRow
{
	double t;
	double sigma;
	double inv_abs_zeta;  // |1/zeta(s)|
	double scale;         // log(|t|+4) on the far branch, |s-1| on the near one
	double ratio;
};

struct ZetaScan
{
	std::vector<ZetaScanRow> rows;  // far branch, |t| in [7/8, t_max]
	double far_constant = 0.0;      // max |1/zeta| / log(|t|+4)
	double near_constant = 0.0;     // max |1/zeta| / |s-1| for |t| <= 7/8
};

// Samples sigma = 1 - c/(2 log(|t|+4)).
ZetaScan zeta_bound_scan(double t_max, int samples, double c = 0.1);

}  // namespace ftl
