#include "ftl/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "ftl/errors.hpp"
#include "ftl/parallel.hpp"

namespace ftl {

namespace {

class Stopwatch
{
public:
	double ms() const { return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count(); }

private:
	std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void sort_unique(std::vector<Rational>& xs)
{
	std::sort(xs.begin(), xs.end());
	xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

void require_capacity(const std::vector<Rational>& xs, std::uint64_t limit, const char* what)
{
	for (const auto& x : xs)
		if (x.floor() > i128(limit))
			throw capacity_error(std::string(what) + ": x = " + x.to_decimal(6) + " beyond the sieve limit " + std::to_string(limit));
}

void require_at_least(const std::vector<Rational>& xs, const Rational& lo, bool strict, const char* what)
{
	for (const auto& x : xs)
		if (strict ? !(x > lo) : x < lo)
			throw domain_error(std::string(what) + ": x = " + x.to_decimal(6) + " must be " + (strict ? "> " : ">= ") + lo.to_decimal(6));
}

ReportRow make_row(const Rational& x, const Rational& exact, double predicted, double normalized_error, double ratio)
{
	ReportRow r;
	r.x = format_exact(x);
	r.x_value = x.to_double();
	r.exact = format_exact(exact);
	r.exact_value = exact.to_double();
	r.predicted = predicted;
	r.normalized_error = normalized_error;
	r.ratio = ratio;
	return r;
}

ReportRow integral_row(const Rational& x, const PhiCoeff& coeffs)
{
	const Rational exact = integral_s_phi(x, coeffs);
	const long double xv = x.to_long_double();
	const long double pred = xv * xv * std::log(xv) / (2 * zeta2);
	const long double ev = exact.to_long_double();
	return make_row(x, exact, double(pred), double((ev - pred) / (xv * xv)), pred > 0 ? double(ev / pred) : 0.0);
}

template <class F>
std::vector<ReportRow> rows_for(const std::vector<Rational>& xs, const ExperimentConfig& cfg, F&& f)
{
	return parallel_map<ReportRow>(xs.size(), cfg.threads, [&](std::size_t i) {
		Stopwatch sw;
		ReportRow r = f(xs[i]);
		r.elapsed_ms = cfg.include_timing ? sw.ms() : 0.0;
		return r;
	});
}

}  // namespace

double log_slope(const std::vector<double>& xs, const std::vector<double>& ys)
{
	const std::size_t n = std::min(xs.size(), ys.size());
	if (n < 2) return 0.0;
	double mx = 0, my = 0;
	for (std::size_t i = 0; i < n; ++i)
	{
		mx += std::log(xs[i]);
		my += ys[i];
	}
	mx /= n;
	my /= n;
	double sxy = 0, sxx = 0;
	for (std::size_t i = 0; i < n; ++i)
	{
		const double dx = std::log(xs[i]) - mx;
		sxy += dx * (ys[i] - my);
		sxx += dx * dx;
	}
	return sxx > 0 ? sxy / sxx : 0.0;
}

std::vector<ReportRow> verify_main_theorem(std::vector<Rational> xs, const PhiCoeff& coeffs, const ExperimentConfig& cfg)
{
	sort_unique(xs);
	require_at_least(xs, 1, false, "verify_main_theorem");
	require_capacity(xs, coeffs.limit(), "verify_main_theorem");
	return rows_for(xs, cfg, [&](const Rational& x) { return integral_row(x, coeffs); });
}

ConjectureRatio conjecture_ratio(std::vector<Rational> xs, const PhiCoeff& coeffs, const ExperimentConfig& cfg)
{
	sort_unique(xs);
	require_at_least(xs, 1, true, "conjecture_ratio");
	require_capacity(xs, coeffs.limit(), "conjecture_ratio");
	ConjectureRatio out;
	out.pointwise = rows_for(xs, cfg, [&](const Rational& x) {
		const i128 X = x.floor();
		const Rational s = Rational(i128(coeffs.prefix(std::uint64_t(X))) + X);  // S = T + floor(x)
		const double xv = x.to_double();
		const double pred = xv * std::log(xv) / zeta2;
		return make_row(x, s, pred, (s.to_double() - pred) / xv, s.to_double() / pred);
	});
	out.averaged = rows_for(xs, cfg, [&](const Rational& x) { return integral_row(x, coeffs); });
	return out;
}

BdhpsReport bdhps_bounds(std::vector<Rational> xs, const TotientTable& table, const ExperimentConfig& cfg)
{
	sort_unique(xs);
	require_at_least(xs, 3, false, "bdhps_bounds");
	const TotientOracle oracle(table);
	BdhpsReport out;
	out.rows = rows_for(xs, cfg, [&](const Rational& x) {
		const Rational s = s_phi(x, oracle).value;
		const double xv = x.to_double();
		const double ratio = s.to_double() / (xv * std::log(xv));
		return make_row(x, s, bdhps_lower * xv * std::log(xv), (ratio - bdhps_lower) / (bdhps_upper - bdhps_lower), ratio);
	});
	for (const auto& r : out.rows)
		if (r.normalized_error < 0.0 || r.normalized_error > 1.0) out.violations.push_back(r.x);
	return out;
}

ScanResult scan_phi_lower(std::uint64_t limit, const PhiCoeff& coeffs)
{
	if (limit < 3) throw domain_error("scan_phi_lower: limit must be >= 3");
	if (limit > coeffs.limit())
		throw bound_error("scan_phi_lower: limit " + std::to_string(limit) + " beyond coefficient table " + std::to_string(coeffs.limit()));
	ScanResult r;
	r.limit = limit;
	std::uint64_t next_mark = 4;
	for (std::uint64_t n = 3; n <= limit; ++n)
	{
		const std::int64_t c = coeffs[n];
		if (c < 0)
		{
			const double v = double(-c) / std::log(double(n));
			if (v > r.fitted_constant)
			{
				r.fitted_constant = v;
				r.extremal_n = n;
				r.extremal_value = c;
			}
		}
		if (n == next_mark || n == limit)
		{
			ReportRow row;
			row.x = std::to_string(n);
			row.x_value = double(n);
			row.exact = format_real(r.fitted_constant);
			row.exact_value = r.fitted_constant;
			row.predicted = double(r.extremal_n);
			row.ratio = r.fitted_constant / std::log(double(n));
			r.checkpoints.push_back(row);
			if (n == next_mark) next_mark *= 2;
		}
	}
	r.doubtful = r.fitted_constant > phi_lower_doubt_threshold;
	return r;
}

IncrementResult local_increment_L(const Rational& x, const Rational& h, const PhiCoeff& coeffs)
{
	if (!(x > Rational(1))) throw domain_error("local_increment_L: x must exceed 1");
	if (h < Rational(1) || !(h < x)) throw domain_error("local_increment_L: requires 1 <= h < x");
	const Rational end = x + h;
	if (end.floor() > i128(coeffs.limit())) throw capacity_error("local_increment_L: x + h beyond the sieve limit");
	IncrementResult r{x, h, {}, 0.0, 0.0};
	const i128 X = x.floor();
	const Rational s_x = Rational(i128(coeffs.prefix(std::uint64_t(X))) + X);
	r.value = integral_s_phi(end, coeffs) - integral_s_phi(x, coeffs) - h * s_x;
	const double lv = r.value.to_double(), xv = x.to_double(), hv = h.to_double();
	r.over_h2_log = lv / (hv * hv * std::log(xv));
	r.over_x2 = lv / (xv * xv);
	return r;
}

std::vector<ReportRow> apostol_check(ComplexValue sv, std::vector<Rational> xs, const TotientTable& table, const ExperimentConfig& cfg)
{
	const cplx s = sv;
	if (s.real() <= 1.0) throw domain_error("apostol_check: requires sigma > 1");
	if (s == cplx(2.0, 0.0)) throw domain_error("apostol_check: s = 2 is excluded");
	sort_unique(xs);
	require_at_least(xs, 2, false, "apostol_check");
	require_capacity(xs, table.limit(), "apostol_check");

	const cplx ratio_term = zeta(s - 1.0, 1e-13).value.c() / zeta(sv, 1e-13).value.c();
	auto rows = rows_for(xs, cfg, [&](const Rational& x) {
		const std::uint64_t X = std::uint64_t(x.floor());
		cplx lhs = 0.0;
		for (std::uint64_t n = X; n >= 1; --n) lhs += double(table[n]) * std::exp(-s * std::log(double(n)));
		const double xv = x.to_double(), lx = std::log(xv);
		const cplx main = std::exp((2.0 - s) * lx) / ((2.0 - s) * zeta2) + ratio_term;
		ReportRow r;
		r.x = format_exact(x);
		r.x_value = xv;
		r.exact_value = lhs.real();
		r.exact = format_real(lhs.real());
		r.predicted = main.real();
		r.normalized_error = std::abs(lhs - main) / (std::exp((1.0 - s.real()) * lx) * lx);
		return r;
	});
	for (std::size_t i = 0; i < rows.size(); ++i)
		rows[i].ratio = i == 0 ? 1.0 : rows[i].normalized_error / rows[i - 1].normalized_error;
	return rows;
}

Rational j31_value(const Rational& x)
{
	if (x < Rational(2)) throw domain_error("j31_identity: x must be >= 2");
	// sum_{n <= y} n (1 - n/y) = B1(Y) - B2(Y)/y with Y = floor(y)
	auto weighted = [](const Rational& y) {
		const i128 Y = y.floor();
		const i128 b1 = Y * (Y + 1) / 2;
		const i128 b2 = checked_mul(checked_mul(Y, Y + 1), 2 * Y + 1) / 6;
		return Rational(b1) - Rational(b2) / y;
	};
	return weighted(x) - weighted(x / Rational(2));
}

ReportRow j31_identity(const Rational& x, const ExperimentConfig& cfg)
{
	Stopwatch sw;
	const Rational v = j31_value(x);
	const Rational pred = x * x / Rational(8);
	ReportRow r = make_row(x, v, pred.to_double(), ((v - pred) / x).to_double(), (v / pred).to_double());
	r.elapsed_ms = cfg.include_timing ? sw.ms() : 0.0;
	return r;
}

RieszResult riesz_weighted(const Rational& x, const PhiCoeff& coeffs, const ExperimentConfig& cfg)
{
	Stopwatch sw;
	if (x < Rational(1)) throw domain_error("riesz_weighted: x must be >= 1");
	if (x.floor() > i128(coeffs.limit())) throw capacity_error("riesz_weighted: x beyond the sieve limit");
	const std::uint64_t X = std::uint64_t(x.floor());
	const long double lx = std::log(x.to_long_double());

	RieszResult r;
	// T^r(x) = sum Phi(n) (log x - log n)
	long double tr = 0;
	for (std::uint64_t n = 2; n <= X; ++n) tr += coeffs[n] * (lx - std::log((long double)n));
	// int_1^x S(t)/t dt: S is constant on [k, k+1)
	long double in = 0;
	for (std::uint64_t k = 1; k < X; ++k) in += (long double)(coeffs.prefix(k) + std::int64_t(k)) * std::log1p(1.0L / k);
	in += (long double)(coeffs.prefix(X) + std::int64_t(X)) * (lx - std::log((long double)X));

	const double xv = x.to_double();
	r.t_r = double(tr);
	r.integral = double(in);
	r.predicted = xv * double(lx) / zeta2;
	r.ratio = r.predicted > 0 ? r.integral / r.predicted : 0.0;
	r.gap_over_x = (r.integral - r.t_r) / xv;
	r.row.x = format_exact(x);
	r.row.x_value = xv;
	r.row.exact = format_real(r.integral);
	r.row.exact_value = r.integral;
	r.row.predicted = r.predicted;
	r.row.normalized_error = r.gap_over_x;
	r.row.ratio = r.ratio;
	r.row.elapsed_ms = cfg.include_timing ? sw.ms() : 0.0;
	return r;
}

}  // namespace ftl
