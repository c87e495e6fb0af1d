#pragma once

// Weighted Perron inversion
//
//   T^a(x) = (1/2 pi i) int_{sigma'-i inf}^{sigma'+i inf} D(s) x^s / (s(s+1)) ds,
//
// integrated numerically on the truncated line |t| <= T.

#include <cstdint>

#include "ftl/dirichlet.hpp"

namespace ftl {

struct QuadratureSpec
{
	double x = 100.0;
	double abscissa = 0.0;  // 0: 1 + 1/log x
	double height_T = 1000.0;
	double panel_tol = 1e-2;  // absolute target for the whole integral
	int max_panels = 20000;
	double panel_periods = 6.0;  // initial panel width in oscillation periods
	unsigned threads = 1;
};

struct PerronResult
{
	double value = 0.0;
	double imag_residual = 0.0;
	double quad_err = 0.0;  // panel estimates plus propagated evaluation error
	double eval_err = 0.0;
	double truncation_note = 0.0;  // x log T / T
	double abscissa = 0.0;
	std::int64_t evals = 0;
	int panels = 0;
};

// Throws budget_exceeded when max_panels is used up before every panel converges.
PerronResult weighted_perron(const QuadratureSpec& spec, const SeriesContext& ctx);

// kappa = h(1)/(2 zeta(2)) - (3 + 2 log 2)/(4 zeta(2)), h(1) = gamma
double kappa();

// x log x/(2 zeta(2)) + kappa x
double main_term(double x);

// exp(sqrt(c log x)) clamped to [1, x]
double truncation_height(double x, double c = 0.1);

}  // namespace ftl
