#include "ftl/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>

#include <fmt/format.h>

#include "ftl/dirichlet.hpp"
#include "ftl/errors.hpp"
#include "ftl/experiments.hpp"
#include "ftl/perron.hpp"

namespace ftl {

namespace {

struct Env
{
	const AcceptanceOptions& opt;
	const TotientTable& table;
	const PhiCoeff& coeffs;
	const SeriesContext& ctx;
	double residue = std::nan("");  // criterion 1's value, reused by criterion 2
};

struct Outcome
{
	bool pass;
	std::string detail;
	double budget_s = 0.0;  // 0: no runtime limit
};

Outcome residue_check(Env& env)
{
	const ResidueResult r = residue_constant(1e-6, env.ctx);
	env.residue = r.formula;
	const double gap = std::abs(r.formula - published_residue);
	return {gap <= 1e-6,
	        fmt::format("value {:.8f} (bound {:.1e}, N = {}), published {:.7f}, |gap| = {:.2e}; Laurent residue {:.7f}", r.formula,
	                    r.err_bound, r.n_max, published_residue, gap, r.laurent_residue),
	        60.0};
}

Outcome pole_check(Env& env)
{
	if (std::isnan(env.residue)) env.residue = residue_constant(1e-6, env.ctx).formula;
	const PoleProbe at1 = pole_probe(1.0, 0.25, 64, env.ctx, 1e-9);
	const PoleProbe at2 = pole_probe(2.0, 0.25, 64, env.ctx, 1e-9);
	const double gap = std::abs(at1.residue_estimate.re - env.residue);
	const bool ok = at1.order_estimate == 2 && gap <= 1e-4 && at2.order_estimate == 0;
	return {ok,
	        fmt::format("s=1: order {}, residue {:.7f}, (s-1)^-2 coefficient {:.7f}, |residue - criterion 1| = {:.2e}; s=2: order {}",
	                    at1.order_estimate, at1.residue_estimate.re, at1.moments[1].re, gap, at2.order_estimate),
	        300.0};
}

Outcome representation_check(Env& env)
{
	std::mt19937_64 rng(env.opt.seed);
	std::uniform_real_distribution<double> sig(2.05, 3.5), tt(-20.0, 20.0);
	const DirectTailModel model = fit_direct_tail(env.coeffs, env.coeffs.limit());
	double worst = 0.0, worst_slack = -1e300;
	bool ok = true;
	for (int i = 0; i < 20; ++i)
	{
		double sigma = sig(rng);
		while (sigma <= 2.05) sigma = sig(rng);
		const cplx s(sigma, tt(rng));
		const EvalResult d = dphi_direct(s, env.coeffs, model, {.n_max = env.coeffs.limit(), .tail = TailMode::accelerated});
		const EvalResult c = dphi_convolution(s, env.ctx.limit() - 1, env.ctx);
		const EvalResult b = dphi_binomial(s, env.ctx, {.n_max = 0, .k_max = 64, .tol = 1e-9, .inner = InnerSum::difference});
		const EvalResult* v[3] = {&d, &c, &b};
		for (int p = 0; p < 3; ++p)
			for (int q = p + 1; q < 3; ++q)
			{
				const double diff = std::abs(v[p]->value.c() - v[q]->value.c());
				const double bound = v[p]->err_bound + v[q]->err_bound;
				worst = std::max(worst, diff);
				worst_slack = std::max(worst_slack, diff - bound);
				if (diff > bound || diff > 1e-6) ok = false;
			}
	}
	return {ok, fmt::format("20 points, max |difference| {:.2e}, max(difference - summed bounds) {:.2e}", worst, worst_slack)};
}

Outcome perron_check(Env& env)
{
	bool ok = true;
	std::string detail;
	for (const double x : {50.0, 100.0, 500.0})
	{
		QuadratureSpec q;
		q.x = x;
		q.height_T = 1000.0;
		q.panel_tol = env.opt.perron_panel_tol;
		q.threads = env.opt.threads;
		const PerronResult r = weighted_perron(q, env.ctx);
		const double exact = t_phi_weighted(Rational(i128(x)), env.coeffs).to_double();
		const double gap = std::abs(r.value - exact);
		const double allowed = r.quad_err + 5.0 * r.truncation_note;
		ok = ok && gap <= allowed;
		detail += fmt::format("{}x={}: |{:.5f} - {:.5f}| = {:.3e} <= {:.3e}", detail.empty() ? "" : "; ", x, r.value, exact, gap, allowed);
	}
	return {ok, detail, 600.0};
}

Outcome main_theorem_check(Env& env)
{
	const auto rows = verify_main_theorem({1000, 10000, 100000, 1000000}, env.coeffs, {.threads = env.opt.threads, .include_timing = false});
	std::vector<double> xs, es;
	double worst = 0.0;
	for (const auto& r : rows)
	{
		xs.push_back(r.x_value);
		es.push_back(r.normalized_error);
		worst = std::max(worst, std::abs(r.normalized_error));
	}
	const double slope = log_slope(xs, es);
	const bool ok = worst <= 2.0 * std::abs(es[0]) && std::abs(slope) < 0.05;
	return {ok,
	        fmt::format("normalized errors {:.5f} {:.5f} {:.5f} {:.5f}; max {:.5f} vs 2x{:.5f}; slope {:.5f}", es[0], es[1], es[2], es[3], worst,
	                    std::abs(es[0]), slope),
	        120.0};
}

Outcome identity_check(Env& env)
{
	const TotientOracle oracle(env.table);
	std::uint64_t checked = 0;
	for (std::uint64_t x = 1; x <= 10000; ++x)
	{
		const Rational xr(x);
		const Rational s_block = s_phi(xr, oracle, SumMethod::block).value;
		const Rational s_naive = s_phi(xr, oracle, SumMethod::naive).value;
		const i128 t_def = t_phi(xr, env.table);
		const i128 t_pre = t_phi(xr, env.coeffs);
		if (s_block != s_naive) return {false, fmt::format("block != naive at x = {}", x)};
		if (Rational(t_def) != s_block - xr) return {false, fmt::format("T != S - x at x = {}", x)};
		if (t_def != t_pre) return {false, fmt::format("sum of Phi != T at x = {}", x)};
		if (x >= 2 && xr * t_phi_weighted(xr, env.coeffs) != integral_t_phi(xr, env.coeffs))
			return {false, fmt::format("x T^a(x) != int T at x = {}", x)};
		if (x <= 2000)
		{
			std::uint64_t tau_sum = 0;
			for (std::uint64_t n = 1; n <= x; ++n) tau_sum += tau_x(xr, n);
			if (Rational(tau_sum) != s_block) return {false, fmt::format("sum tau_x != S at x = {}", x)};
		}
		++checked;
	}
	return {true, fmt::format("{} values of x, five identities, all exact", checked), 300.0};
}

Outcome averaged_ratio_check(Env& env)
{
	const auto cr = conjecture_ratio({100000, 1000000}, env.coeffs, {.threads = env.opt.threads, .include_timing = false});
	bool ok = true;
	std::string detail;
	for (const auto& r : cr.averaged)
	{
		const double band = 3.0 / std::log(r.x_value);
		ok = ok && std::abs(r.ratio - 1.0) <= band;
		detail += fmt::format("{}x={}: {:.6f} in 1 +- {:.4f}", detail.empty() ? "" : "; ", r.x, r.ratio, band);
	}
	return {ok, detail};
}

Outcome bdhps_check(Env& env)
{
	const auto rep = bdhps_bounds({100000, 1000000}, env.table, {.threads = env.opt.threads, .include_timing = false});
	const double lo = bdhps_lower - 0.02, hi = bdhps_upper + 0.02;
	bool ok = true;
	std::string detail;
	for (const auto& r : rep.rows)
	{
		ok = ok && r.ratio >= lo && r.ratio <= hi;
		detail += fmt::format("{}x={}: {:.6f}", detail.empty() ? "" : "; ", r.x, r.ratio);
	}
	return {ok, detail + fmt::format(" within [{:.6f}, {:.6f}]", lo, hi)};
}

Outcome apostol_crit(Env& env)
{
	bool ok = true;
	std::string detail;
	for (const double sr : {2.5, 3.0})
	{
		const auto rows = apostol_check(sr, {100, 1000, 10000}, env.table, {.threads = env.opt.threads, .include_timing = false});
		detail += fmt::format("{}s={}: errors", detail.empty() ? "" : "; ", sr);
		for (const auto& r : rows) detail += fmt::format(" {:.5f}", r.normalized_error);
		detail += ", ratios";
		for (std::size_t i = 1; i < rows.size(); ++i)
		{
			detail += fmt::format(" {:.3f}", rows[i].ratio);
			ok = ok && std::isfinite(rows[i].normalized_error) && rows[i].ratio <= 1.5;
		}
	}
	return {ok, detail};
}

Outcome j31_check(Env&)
{
	bool ok = true;
	std::string detail;
	for (const long x : {100L, 10000L, 1000000L})
	{
		const ReportRow r = j31_identity(Rational(x), {.threads = 1, .include_timing = false});
		ok = ok && std::abs(r.normalized_error) <= 1.0;
		detail += fmt::format("{}x={}: {:.6f}", detail.empty() ? "" : "; ", x, r.normalized_error);
	}
	return {ok, detail};
}

}  // namespace

std::string format_line(const CriterionResult& r)
{
	return fmt::format("{} {:>2} {:<28} {} ({:.1f} s)", r.pass ? "PASS" : "FAIL", r.id, r.name, r.detail, r.seconds);
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream* out)
{
	if (opt.sieve_limit < 1'000'000) throw domain_error("acceptance: sieve limit must be at least 10^6");
	const TotientTable table = sieve_totients(opt.sieve_limit);
	const PhiCoeff coeffs = phi_coeffs(opt.sieve_limit, table);
	const SeriesContext ctx(table);
	Env env{opt, table, coeffs, ctx};

	const std::pair<const char*, std::function<Outcome(Env&)>> criteria[] = {
	    {"residue constant", residue_check},
	    {"pole structure", pole_check},
	    {"representation agreement", representation_check},
	    {"perron round trip", perron_check},
	    {"integral asymptotic", main_theorem_check},
	    {"exact identities", identity_check},
	    {"averaged ratio", averaged_ratio_check},
	    {"bdhps envelope", bdhps_check},
	    {"partial sum lemma", apostol_crit},
	    {"j31 identity", j31_check},
	};

	std::vector<CriterionResult> results;
	for (int i = 0; i < 10; ++i)
	{
		const int id = i + 1;
		if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
		CriterionResult r;
		r.id = id;
		r.name = criteria[i].first;
		const auto t0 = std::chrono::steady_clock::now();
		try
		{
			const Outcome o = criteria[i].second(env);
			r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
			r.pass = o.pass;
			r.detail = o.detail;
			if (o.budget_s > 0 && r.seconds > o.budget_s)
			{
				r.pass = false;
				r.detail += fmt::format("; runtime {:.1f} s over the {:.0f} s budget", r.seconds, o.budget_s);
			}
		}
		catch (const std::exception& e)
		{
			r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
			r.pass = false;
			r.detail = std::string("error: ") + e.what();
		}
		if (out) *out << format_line(r) << std::endl;
		results.push_back(r);
	}
	return results;
}

}  // namespace ftl
