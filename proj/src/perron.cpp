#include "ftl/perron.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ftl/errors.hpp"
#include "ftl/parallel.hpp"

namespace ftl {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int cc_n = 64;  // 65 nodes; the even ones form the 33-point rule

struct ClenshawCurtis
{
	std::array<double, cc_n + 1> node{}, w65{}, w33{};

	ClenshawCurtis()
	{
		fill(cc_n, 1, w65);
		fill(cc_n / 2, 2, w33);
		for (int j = 0; j <= cc_n; ++j) node[j] = std::cos(j * pi / cc_n);
	}

	// weights of the n-interval rule, stored at stride `step` in the 65-slot array
	static void fill(int n, int step, std::array<double, cc_n + 1>& w)
	{
		for (int j = 0; j <= n; ++j)
		{
			double acc = 1.0;
			for (int k = 1; k <= n / 2; ++k)
			{
				const double b = (2 * k == n) ? 1.0 : 2.0;
				acc -= b / (4.0 * k * k - 1.0) * std::cos(2.0 * k * j * pi / n);
			}
			w[j * step] = ((j == 0 || j == n) ? 1.0 : 2.0) / n * acc;
		}
	}
};

const ClenshawCurtis& cc()
{
	static const ClenshawCurtis rule;
	return rule;
}

struct Panel
{
	cplx i65 = 0.0;
	double est = 0.0;
	double eval_err = 0.0;
};

}  // namespace

PerronResult weighted_perron(const QuadratureSpec& spec, const SeriesContext& ctx)
{
	if (!(spec.x >= 2.0)) throw domain_error("weighted_perron: x must be >= 2");
	if (!(spec.height_T >= 1.0)) throw domain_error("weighted_perron: T must be >= 1");
	if (!(spec.panel_tol > 0.0)) throw domain_error("weighted_perron: panel_tol must be positive");
	if (spec.max_panels < 1) throw domain_error("weighted_perron: max_panels must be >= 1");
	const double log_x = std::log(spec.x);
	const double sigma = spec.abscissa > 0.0 ? spec.abscissa : 1.0 + 1.0 / log_x;
	if (!(sigma > 1.0)) throw domain_error("weighted_perron: abscissa must exceed 1");
	if (std::abs(spec.height_T) > zeta_max_height) throw domain_error("weighted_perron: T above the supported height");

	const double T = spec.height_T;
	const double x_sigma = std::exp(sigma * log_x);
	const ClenshawCurtis& rule = cc();

	PerronResult res;
	res.abscissa = sigma;
	res.truncation_note = spec.x * std::log(T) / T;

	// Integrand D(s) x^s / (s(s+1)) with the evaluation error it carries.  The
	// per-node tolerance on D is spread so the weighted errors integrate to
	// well under panel_tol.
	auto integrand = [&](double t, cplx& value, double& err) {
		const cplx s(sigma, t);
		const cplx weight = std::exp(s * log_x) / (s * (s + 1.0));
		const double delta = 0.25 * spec.panel_tol * std::abs(s * (s + 1.0)) / (x_sigma * std::pow(1.0 + std::abs(t), 1.1));
		const EvalResult d = dphi_binomial(s, ctx, {.n_max = 0, .k_max = 64, .tol = std::max(delta, 1e-12), .inner = InnerSum::difference});
		value = d.value.c() * weight;
		err = d.err_bound * std::abs(weight);
	};

	auto run_panel = [&](double a, double b) {
		const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
		std::array<cplx, cc_n + 1> f;
		std::array<double, cc_n + 1> e;
		parallel_for(cc_n + 1, spec.threads, [&](std::size_t j) { integrand(mid + half * rule.node[j], f[j], e[j]); });
		Panel p;
		cplx i33 = 0.0;
		for (int j = 0; j <= cc_n; ++j)
		{
			p.i65 += rule.w65[j] * f[j];
			i33 += rule.w33[j] * f[j];
			p.eval_err += rule.w65[j] * e[j];
		}
		p.i65 *= half;
		p.eval_err *= half;
		p.est = std::abs(p.i65 - half * i33);
		res.evals += cc_n + 1;
		return p;
	};

	cplx total = 0.0;
	double est_sum = 0.0, eval_sum = 0.0;
	// depth-first bisection keeps the summation order fixed (left to right in t)
	auto integrate = [&](auto&& self, double a, double b) -> void {
		if (++res.panels > spec.max_panels)
			throw budget_exceeded("weighted_perron: panel budget of " + std::to_string(spec.max_panels) + " exhausted");
		const Panel p = run_panel(a, b);
		const double allowed = 2.0 * pi * spec.panel_tol * (b - a) / (2.0 * T);
		if (p.est <= allowed)
		{
			total += p.i65;
			est_sum += p.est;
			eval_sum += p.eval_err;
			return;
		}
		if (b - a < 1e-6) throw budget_exceeded("weighted_perron: panel width collapsed without convergence");
		const double m = 0.5 * (a + b);
		self(self, a, m);
		self(self, m, b);
	};

	for (double a = -T; a < T;)
	{
		const double omega = log_x + std::log1p(std::max(std::abs(a), std::abs(std::min(T, a + 1.0))) / (2.0 * pi)) + 1.0;
		const double width = spec.panel_periods * 2.0 * pi / omega;
		const double b = (T - a < 1.5 * width) ? T : a + width;
		integrate(integrate, a, b);
		a = b;
	}

	res.value = total.real() / (2.0 * pi);
	res.imag_residual = total.imag() / (2.0 * pi);
	res.eval_err = eval_sum / (2.0 * pi);
	res.quad_err = est_sum / (2.0 * pi) + res.eval_err;
	return res;
}

double kappa()
{
	const double h1 = laurent_h(1.0).value.re;
	return h1 / (2.0 * zeta2) - (3.0 + 2.0 * std::log(2.0)) / (4.0 * zeta2);
}

double main_term(double x)
{
	if (!(x >= 2.0)) throw domain_error("main_term: x must be >= 2");
	return x * std::log(x) / (2.0 * zeta2) + kappa() * x;
}

double truncation_height(double x, double c)
{
	if (!(x >= 2.0)) throw domain_error("truncation_height: x must be >= 2");
	if (!(c > 0.0) || c > 1.0) throw domain_error("truncation_height: c must lie in (0, 1]");
	return std::clamp(std::exp(std::sqrt(c * std::log(x))), 1.0, x);
}

}  // namespace ftl
