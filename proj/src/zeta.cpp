#include "ftl/zeta.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "ftl/errors.hpp"

namespace ftl {

ComplexValue::ComplexValue(double re_, double im_) : re(re_), im(im_)
{
	if (!std::isfinite(re) || !std::isfinite(im)) throw domain_error("complex value with non-finite component");
}

namespace {

constexpr int max_j = 15;
constexpr double eps = std::numeric_limits<double>::epsilon();

// B_{2j}/(2j)! for j = 1..16 (the last one only feeds the remainder estimate).
const std::array<double, max_j + 2>& bernoulli_coefs()
{
	static const std::array<double, max_j + 2> table = [] {
		const long double b[] = {
		    0.0L,
		    1.0L / 6,
		    -1.0L / 30,
		    1.0L / 42,
		    -1.0L / 30,
		    5.0L / 66,
		    -691.0L / 2730,
		    7.0L / 6,
		    -3617.0L / 510,
		    43867.0L / 798,
		    -174611.0L / 330,
		    854513.0L / 138,
		    -236364091.0L / 2730,
		    8553103.0L / 6,
		    -23749461029.0L / 870,
		    8615841276005.0L / 14322,
		    -7709321041217.0L / 510,
		};
		std::array<double, max_j + 2> t{};
		long double fact = 1;
		for (int j = 1; j <= max_j + 1; ++j)
		{
			fact *= (2.0L * j - 1) * (2.0L * j);
			t[j] = static_cast<double>(b[j] / fact);
		}
		return t;
	}();
	return table;
}

enum class Kind { value, derivative, regular };

void check_strip(cplx s, double tol)
{
	if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw domain_error("zeta: non-finite argument");
	if (s.real() <= -1.0) throw domain_error("zeta: sigma = " + std::to_string(s.real()) + " outside the supported strip sigma > -1");
	if (std::abs(s.imag()) > zeta_max_height)
		throw domain_error("zeta: |t| = " + std::to_string(std::abs(s.imag())) + " above supported height");
	if (!(tol >= zeta_min_tol)) throw domain_error("zeta: tolerance below 1e-14");
}

struct Plan
{
	std::int64_t n;
	int j;
	double remainder;
};

// Smallest cutoff (growing N geometrically, J up to 15 at each N) whose
// Euler-Maclaurin remainder estimate meets tol.
Plan choose_plan(cplx s, double tol, Kind kind)
{
	const auto& coef = bernoulli_coefs();
	const double sigma = s.real();
	std::int64_t n = std::max<std::int64_t>(6, static_cast<std::int64_t>(std::abs(s.imag()) / (4 * std::numbers::pi)));
	for (;;)
	{
		const double nf = static_cast<double>(n);
		const double log_n = std::log(nf);
		double prod = std::abs(s);  // |s (s+1) ... (s+2j-2)|
		double inv_sum = 1.0 / std::max(std::abs(s), 0.5);
		double pw = std::pow(nf, -sigma - 1);  // N^{-sigma-2j+1}
		double prev = std::abs(coef[1]) * prod * pw;
		for (int j = 1; j <= max_j; ++j)
		{
			const double a = std::abs(s + double(2 * j - 1)), b = std::abs(s + double(2 * j));
			prod *= a * b;
			inv_sum += 1.0 / std::max(a, 0.5) + 1.0 / std::max(b, 0.5);
			pw /= nf * nf;
			const double next = std::abs(coef[j + 1]) * prod * pw;
			if (next > prev) break;
			double rem = next * std::abs(s + double(2 * j + 1)) / (sigma + 2 * j + 1);
			if (kind == Kind::derivative) rem *= log_n + inv_sum;
			if (rem <= tol) return {n, j, rem};
			prev = next;
		}
		if (n > 50'000'000) throw convergence_error("zeta: cutoff search did not converge");
		n = static_cast<std::int64_t>(std::ceil(nf * 1.3)) + 1;
	}
}

// (e^z - 1)/z without cancellation near z = 0.
cplx phi1(cplx z)
{
	if (std::abs(z) < 1e-300) return 1.0;
	const double a = z.real(), b = z.imag();
	const double sb = std::sin(0.5 * b);
	const cplx em1(std::expm1(a) * std::cos(b) - 2.0 * sb * sb, std::exp(a) * std::sin(b));
	return em1 / z;
}

EvalResult euler_maclaurin(cplx s, double tol, Kind kind)
{
	check_strip(s, tol);
	// half of tol for truncation, the rest left to rounding
	const Plan plan = choose_plan(s, 0.5 * tol, kind);
	const auto& coef = bernoulli_coefs();
	const double sigma = s.real(), t = s.imag();

	cplx sum = 0.0;
	double abs_sum = 0.0;
	for (std::int64_t n = 2; n < plan.n; ++n)  // n = 1 is added last
	{
		const double ln = std::log(static_cast<double>(n));
		const double mag = std::exp(-sigma * ln);
		const cplx term(mag * std::cos(t * ln), -mag * std::sin(t * ln));
		if (kind == Kind::derivative)
		{
			sum -= ln * term;
			abs_sum += ln * mag;
		}
		else
		{
			sum += term;
			abs_sum += mag;
		}
	}
	if (kind != Kind::derivative)
	{
		sum += 1.0;
		abs_sum += 1.0;
	}

	const double nf = static_cast<double>(plan.n);
	const double L = std::log(nf);
	const cplx n_s = std::exp(-s * L);  // N^{-s}
	cplx tail = 0.0;
	switch (kind)
	{
	case Kind::value: tail = nf * n_s / (s - 1.0) + 0.5 * n_s; break;
	case Kind::regular: tail = -L * phi1((1.0 - s) * L) + 0.5 * n_s; break;
	case Kind::derivative:
		tail = -L * nf * n_s / (s - 1.0) - nf * n_s / ((s - 1.0) * (s - 1.0)) - 0.5 * L * n_s;
		break;
	}
	cplx p = s, dp = 1.0;
	double pw = 1.0 / nf;  // N^{1-2j}
	for (int j = 1; j <= plan.j; ++j)
	{
		if (j > 1)
		{
			const cplx a = s + double(2 * j - 3), b = s + double(2 * j - 2);
			dp = dp * a + p;
			p *= a;
			dp = dp * b + p;
			p *= b;
			pw /= nf * nf;
		}
		const cplx term = kind == Kind::derivative ? coef[j] * pw * n_s * (dp - L * p) : coef[j] * pw * n_s * p;
		tail += term;
	}
	abs_sum += std::abs(tail);

	// rounding: 10 ulp per term, inflated by the phase error of t log n
	const double rounding = 10.0 * eps * abs_sum * (1.0 + std::abs(t) * L * 0.1);
	EvalResult r;
	r.value = sum + tail;
	r.err_bound = plan.remainder + rounding;
	r.terms_used = plan.n - 1 + plan.j;
	return r;
}

EvalResult require_tol(const EvalResult& r, double tol, const char* what)
{
	if (r.err_bound > tol)
		throw convergence_error(fmt::format("{}: rounding error {:g} exceeds tol {:g}", what, r.err_bound, tol));
	return r;
}

}  // namespace

EvalResult zeta(ComplexValue s, double tol)
{
	return require_tol(zeta_best_effort(s, tol), tol, "zeta");
}

EvalResult zeta_best_effort(ComplexValue s, double tol)
{
	if (s.re == 1.0 && s.im == 0.0) throw pole_error("zeta: pole at s = 1");
	return euler_maclaurin(s, tol, Kind::value);
}

EvalResult zeta_derivative(ComplexValue s, double tol)
{
	if (s.re == 1.0 && s.im == 0.0) throw pole_error("zeta_derivative: pole at s = 1");
	return require_tol(euler_maclaurin(s, tol, Kind::derivative), tol, "zeta_derivative");
}

EvalResult laurent_h(ComplexValue s, double tol)
{
	if (s.re <= 0.0) throw domain_error("laurent_h: requires sigma > 0");
	return require_tol(euler_maclaurin(s, tol, Kind::regular), tol, "laurent_h");
}

ZetaScan zeta_bound_scan(double t_max, int samples, double c)
{
	if (!(t_max >= 7.0 / 8.0) || t_max > zeta_max_height) throw domain_error("zeta_bound_scan: t_max must lie in [7/8, 1e5]");
	if (samples < 2) throw domain_error("zeta_bound_scan: need at least 2 samples");
	if (!(c > 0.0) || c > 1.0) throw domain_error("zeta_bound_scan: c must lie in (0, 1]");

	auto abscissa = [c](double t) { return 1.0 - c / (2.0 * std::log(std::abs(t) + 4.0)); };
	ZetaScan scan;
	for (int k = 0; k < samples; ++k)
	{
		const double t = 7.0 / 8.0 + (t_max - 7.0 / 8.0) * k / (samples - 1);
		const double sigma = abscissa(t);
		const double inv = 1.0 / std::abs(zeta_best_effort({sigma, t}, 1e-10).value.c());
		const double scale = std::log(t + 4.0);
		scan.rows.push_back({t, sigma, inv, scale, inv / scale});
		scan.far_constant = std::max(scan.far_constant, inv / scale);
	}
	// near branch: a grid over 0 <= t <= 7/8 and abscissa(t) <= sigma <= 2
	for (int k = 0; k < samples; ++k)
	{
		const double t = 7.0 / 8.0 * k / (samples - 1);
		const double lo = abscissa(t);
		for (int i = 0; i <= 8; ++i)
		{
			const cplx s(lo + (2.0 - lo) * i / 8.0, t);
			const double dist = std::abs(s - 1.0);
			if (dist < 1e-6) continue;
			const double inv = 1.0 / std::abs(zeta_best_effort(s, 1e-10).value.c());
			scan.near_constant = std::max(scan.near_constant, inv / dist);
		}
	}
	return scan;
}

}  // namespace ftl
