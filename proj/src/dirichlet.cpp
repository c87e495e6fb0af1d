#include "ftl/dirichlet.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "ftl/errors.hpp"

namespace ftl {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double six_over_pi2 = 6.0 / (pi * pi);
constexpr double eps = std::numeric_limits<double>::epsilon();

// n^{-s} from log n
inline cplx npow(double ln, cplx s)
{
	const double mag = std::exp(-s.real() * ln);
	const double ph = s.imag() * ln;
	return {mag * std::cos(ph), -mag * std::sin(ph)};
}

inline cplx upow(double u, cplx s) { return npow(std::log(u), s); }

cplx phi1(cplx z)
{
	if (std::abs(z) < 1e-300) return 1.0;
	const double a = z.real(), b = z.imag();
	const double sb = std::sin(0.5 * b);
	return cplx(std::expm1(a) * std::cos(b) - 2.0 * sb * sb, std::exp(a) * std::sin(b)) / z;
}

double zeta_tol(double tol) { return std::clamp(tol * 1e-3, zeta_min_tol, 1e-12); }

void require_limit(std::uint64_t n, std::uint64_t limit, const char* what)
{
	if (n > limit)
		throw bound_error(std::string(what) + ": cutoff " + std::to_string(n) + " exceeds table limit " + std::to_string(limit));
}

// Tail sums below need N inside the table and away from the tiny-N regime
// where the smooth model means nothing.
constexpr std::uint64_t min_accelerated_cutoff = 64;

}  // namespace

// ---------------------------------------------------------------------------

SeriesContext::SeriesContext(const TotientTable& table) : table_(&table)
{
	const std::uint64_t limit = table.limit();
	level_max_.assign(std::bit_width(limit), 0.0);
	for (std::uint64_t u = 1; u <= limit; ++u)
	{
		const int level = std::bit_width(u) - 1;
		const double r = std::abs(remainder(u)) / double(u);
		level_max_[level] = std::max(level_max_[level], r);
	}

	spf_.assign(limit + 1, 0);
	std::vector<std::uint32_t> primes;
	for (std::uint64_t n = 2; n <= limit; ++n)
	{
		if (spf_[n] == 0)
		{
			spf_[n] = std::uint32_t(n);
			primes.push_back(std::uint32_t(n));
		}
		for (const std::uint32_t p : primes)
		{
			if (p > spf_[n] || std::uint64_t(p) * n > limit) break;
			spf_[p * n] = p;
		}
	}
}

double SeriesContext::remainder(std::uint64_t n) const
{
	const double u = double(n);
	return double(table_->summatory(n)) - 3.0 * u * u / (pi * pi);
}

double SeriesContext::rho(std::uint64_t n) const
{
	const int top = int(level_max_.size()) - 1;
	const int from = std::clamp(int(std::bit_width(std::max<std::uint64_t>(n, 1))) - 2, 0, top);
	double m = 0.0;
	for (int l = from; l <= top; ++l) m = std::max(m, level_max_[l]);
	return 2.0 * m;
}

// ---------------------------------------------------------------------------

EvalResult g_phi(ComplexValue sv, std::uint64_t n_max, const SeriesContext& ctx, GForm form, TailMode tail)
{
	const cplx s = sv;
	if (s.real() <= 2.0) throw convergence_error("g_phi: series requires sigma > 2");
	if (n_max < 10) throw domain_error("g_phi: N must be >= 10");
	require_limit(n_max, ctx.limit(), "g_phi");
	const TotientTable& phi = ctx.table();
	const double sigma = s.real();

	cplx sum = 0.0;
	double abs_sum = 0.0;
	if (form == GForm::shifted)
	{
		// 1 + sum_{n=1}^{N} phi(n) (n+1)^{-s}
		for (std::uint64_t n = n_max; n >= 1; --n)
		{
			const cplx t = double(phi[n]) * upow(double(n + 1), s);
			sum += t;
			abs_sum += std::abs(t);
		}
		sum += 1.0;
	}
	else
	{
		// sum_{n=1}^{N+1} phi(n-1) n^{-s}
		for (std::uint64_t n = n_max + 1; n >= 1; --n)
		{
			const cplx t = double(phi[n - 1]) * upow(double(n), s);
			sum += t;
			abs_sum += std::abs(t);
		}
	}

	const double nf = double(n_max);
	EvalResult r;
	r.terms_used = std::int64_t(n_max) + 1;
	if (tail == TailMode::plain)
	{
		r.value = sum;
		r.err_bound = std::pow(nf, 2.0 - sigma) / (sigma - 2.0) + 10 * eps * abs_sum;
		return r;
	}
	const cplx g_n = upow(nf + 1.0, s);
	const cplx smooth = six_over_pi2 * (upow(nf + 1.0, s - 2.0) / (s - 2.0) - upow(nf + 1.0, s - 1.0) / (s - 1.0));
	r.value = sum + smooth - ctx.remainder(n_max) * g_n;
	r.err_bound = ctx.rho(n_max) * std::abs(s) * std::pow(nf, 1.0 - sigma) / (sigma - 1.0) + 10 * eps * abs_sum;
	return r;
}

// ---------------------------------------------------------------------------

DirectTailModel fit_direct_tail(const PhiCoeff& coeffs, std::uint64_t n)
{
	require_limit(n, coeffs.limit(), "fit_direct_tail");
	if (n < min_accelerated_cutoff) throw domain_error("fit_direct_tail: N too small for a tail model");
	DirectTailModel m;
	m.n = n;
	m.a = 1.0 / zeta2;
	long double num = 0, den = 0;
	for (std::uint64_t u = n / 2; u <= n; ++u)
	{
		const long double uf = u;
		const long double y = coeffs.prefix(u) - m.a * uf * std::log(uf);
		num += uf * y;
		den += uf * uf;
	}
	m.c = double(num / den);
	double worst = 0.0;
	for (std::uint64_t u = n / 2; u <= n; ++u)
	{
		const double uf = double(u);
		worst = std::max(worst, std::abs(double(coeffs.prefix(u)) - m.a * uf * std::log(uf) - m.c * uf) / uf);
	}
	m.rho = 2.0 * worst;
	return m;
}

EvalResult dphi_direct(ComplexValue s, const PhiCoeff& coeffs, const DirectOptions& options)
{
	const std::uint64_t n = options.n_max ? options.n_max : coeffs.limit();
	if (options.tail == TailMode::plain || n < min_accelerated_cutoff)
	{
		DirectOptions o = options;
		o.tail = TailMode::plain;
		return dphi_direct(s, coeffs, DirectTailModel{}, o);
	}
	return dphi_direct(s, coeffs, fit_direct_tail(coeffs, n), options);
}

EvalResult dphi_direct(ComplexValue sv, const PhiCoeff& coeffs, const DirectTailModel& model, const DirectOptions& options)
{
	const cplx s = sv;
	const double sigma = s.real();
	if (sigma <= 2.0) throw convergence_error("dphi_direct: series requires sigma > 2");
	if (coeffs.limit() < 10'000) throw bound_error("dphi_direct: coefficient table must reach 10^4");
	const std::uint64_t n_max = options.n_max ? options.n_max : coeffs.limit();
	require_limit(n_max, coeffs.limit(), "dphi_direct");

	cplx sum = 0.0;
	double abs_sum = 0.0;
	for (std::uint64_t n = n_max; n >= 2; --n)  // Phi(1) = 0
	{
		const std::int64_t c = coeffs[n];
		if (c == 0) continue;
		const cplx t = double(c) * npow(std::log(double(n)), s);
		sum += t;
		abs_sum += std::abs(t);
	}

	const double nf = double(n_max), L = std::log(nf);
	EvalResult r;
	r.terms_used = std::int64_t(n_max);
	if (options.tail == TailMode::plain || n_max < min_accelerated_cutoff)
	{
		// |Phi(n)| <= n tau(n), and sum_{n > N} tau(n) n^{1-sigma} ~ int (log u + 2 gamma) u^{1-sigma} du
		const double d = sigma - 2.0;
		const double lf = std::max(L, 1.0);
		r.value = sum;
		r.err_bound = std::pow(std::max(nf, 1.0), -d) * ((lf + 2 * euler_gamma) / d + 1.0 / (d * d)) + 10 * eps * abs_sum;
		return r;
	}
	if (model.n != n_max) throw domain_error("dphi_direct: tail model fitted at a different cutoff");

	const cplx p1 = nf * npow(L, s);  // N^{1-s}
	const cplx sm1 = s - 1.0;
	const cplx smooth = model.a * (p1 * L / sm1 + p1 / (sm1 * sm1)) + (model.a + model.c) * p1 / sm1;
	const double e_n = double(coeffs.prefix(n_max)) - model.a * nf * L - model.c * nf;
	r.value = sum + smooth - e_n * npow(L, s);
	r.err_bound = model.rho * std::abs(s) * std::pow(nf, 1.0 - sigma) / (sigma - 1.0) + 10 * eps * abs_sum;
	return r;
}

// ---------------------------------------------------------------------------

EvalResult dphi_convolution(ComplexValue sv, std::uint64_t n_max, const SeriesContext& ctx, double tol)
{
	const cplx s = sv;
	const EvalResult g = g_phi(sv, n_max, ctx);
	const EvalResult z = zeta_best_effort(sv, zeta_tol(tol));
	const EvalResult z1 = zeta_best_effort(s - 1.0, zeta_tol(tol));
	EvalResult r;
	r.value = z1.value.c() - z.value.c() * g.value.c();
	r.err_bound = z1.err_bound + std::abs(z.value.c()) * g.err_bound + std::abs(g.value.c()) * z.err_bound;
	r.terms_used = g.terms_used + z.terms_used + z1.terms_used;
	return r;
}

// ---------------------------------------------------------------------------

namespace {

// g_s(n) = (n+1)^{-s} - n^{-s} + s n^{-s-1} for n >= 2, given p = n^{-s}.
// Far from s (n >= 4(|s|+2)) the binomial series in 1/n converges at least
// like 8^{-k} and is summed from the coefficients (-1)^k C(s+k-1, k), built
// once per s by the multiplicative recurrence.  Closer in, the closed form
// through expm1 has no cancellation to speak of.
class BinomialTerms
{
public:
	BinomialTerms(cplx s, int k_max) : s_(s), near_edge_(4.0 * (std::abs(s) + 2.0)), a_(k_max + 1)
	{
		a_[0] = 1.0;
		for (int k = 1; k <= k_max; ++k) a_[k] = a_[k - 1] * (-(s + double(k - 1)) / double(k));
	}

	double near_edge() const { return near_edge_; }

	cplx operator()(std::uint64_t n, cplx p) const
	{
		const double nf = double(n);
		if (nf < near_edge_)
		{
			const cplx z = -s_ * std::log1p(1.0 / nf);
			return p * (phi1(z) * z + s_ / nf);
		}
		const double x = 1.0 / nf;
		double xk = x * x;
		cplx acc = 0.0;
		for (std::size_t k = 2;; ++k)
		{
			const cplx b = a_[k] * xk;
			acc += b;
			if (std::norm(b) <= 1e-34 * std::norm(acc)) break;
			if (k + 1 >= a_.size()) throw convergence_error("dphi_binomial: inner series needs more than K terms at n = " + std::to_string(n));
			xk *= x;
		}
		return p * acc;
	}

private:
	cplx s_;
	double near_edge_;
	std::vector<cplx> a_;
};

double binomial_tail_bound(cplx s, std::uint64_t n, double rho)
{
	const double sigma = s.real();
	const double poly = std::abs(s * (s + 1.0) * (s + 2.0));
	return 1.5 * rho * poly * std::pow(double(n), -sigma - 1.0) / (2.0 * (sigma + 1.0));
}

}  // namespace

EvalResult dphi_binomial(ComplexValue sv, const SeriesContext& ctx, const BinomialOptions& options)
{
	const cplx s = sv;
	if (s == cplx(1.0, 0.0)) throw pole_error("dphi_binomial: double pole at s = 1");
	if (s.real() <= 0.0) throw domain_error("dphi_binomial: requires sigma > 0");
	if (!(options.tol > 0.0)) throw domain_error("dphi_binomial: tol must be positive");
	if (options.k_max < 2) throw domain_error("dphi_binomial: K must be >= 2");
	const double sigma = s.real();

	const double ztol = zeta_tol(options.tol);
	const EvalResult z = zeta_best_effort(sv, ztol);
	const EvalResult z1 = zeta_best_effort(s + 1.0, ztol);
	const cplx zv = z.value, z1v = z1.value;
	const double zabs = std::abs(zv);

	const BinomialTerms g(s, options.k_max);
	const double near_edge = g.near_edge();
	const std::uint64_t n_floor = std::max<std::uint64_t>(min_accelerated_cutoff, std::uint64_t(std::ceil(near_edge)));
	std::uint64_t n_max = options.n_max;
	if (n_max == 0)
	{
		// smallest N whose smooth-tail bound (scaled by |zeta(s)|) meets tol/2
		const double target = 0.5 * options.tol / std::max(zabs, 1e-300);
		double need = double(n_floor);
		for (int it = 0; it < 4; ++it)
		{
			const std::uint64_t probe = std::uint64_t(std::min(need, double(ctx.limit())));
			const double b1 = binomial_tail_bound(s, 1, ctx.rho(probe));
			need = std::max(double(n_floor), std::ceil(std::pow(b1 / target, 1.0 / (sigma + 1.0))));
		}
		if (need >= double(ctx.limit()))
			throw convergence_error(fmt::format("dphi_binomial: tol {:g} needs N beyond the totient table ({})", options.tol, ctx.limit()));
		n_max = std::uint64_t(need);
	}
	else
	{
		if (n_max < 2) throw domain_error("dphi_binomial: N must be >= 2");
		require_limit(n_max, ctx.limit(), "dphi_binomial");
	}

	const TotientTable& phi = ctx.table();
	cplx sum = 0.0;
	double abs_sum = 0.0;
	if (options.inner == InnerSum::series)
	{
		for (std::uint64_t n = n_max; n >= 2; --n)
		{
			const cplx t = double(phi[n]) * g(n, npow(std::log(double(n)), s));
			sum += t;
			abs_sum += std::abs(t);
		}
	}
	else
	{
		if (n_max + 1 > ctx.limit()) throw bound_error("dphi_binomial: difference mode needs N < table limit");
		// n^{-s} for n <= N+1: fresh at primes, a product of two earlier entries otherwise
		thread_local std::vector<cplx> pw;
		pw.resize(n_max + 2);
		pw[1] = 1.0;
		for (std::uint64_t n = 2; n <= n_max + 1; ++n)
		{
			const std::uint32_t p = ctx.spf(n);
			pw[n] = p == n ? npow(std::log(double(n)), s) : pw[p] * pw[n / p];
		}
		double mag_sum = 0.0;
		for (std::uint64_t n = n_max; n >= 2; --n)
		{
			const double f = double(phi[n]);
			const cplx t = f * (pw[n + 1] - pw[n] + s * pw[n] / double(n));
			sum += t;
			mag_sum += f * std::sqrt(std::norm(pw[n]));
		}
		// each power carries ~log2(n) roundings, and the difference cancels them against nothing
		abs_sum = 4.0 * std::log2(double(n_max) + 1.0) * mag_sum;
	}

	double tail_err = 0.0;
	if (n_max >= n_floor)
	{
		const double nf = double(n_max);
		const double L = std::log1p(1.0 / nf);
		const cplx p2 = upow(nf, s - 2.0), p1 = upow(nf, s - 1.0);
		const cplx smooth = -p2 * L * phi1((2.0 - s) * L) + p1 * L * phi1((1.0 - s) * L) + p1;
		const cplx g_n = g(n_max, npow(std::log(nf), s));
		sum += six_over_pi2 * smooth - ctx.remainder(n_max) * g_n;
		tail_err = binomial_tail_bound(s, n_max, ctx.rho(n_max));
	}
	else
	{
		// no smooth tail this close to s: crude majorant sum_{n > N} n |g_s(n)|
		tail_err = std::abs(s * (s + 1.0)) * std::pow(double(n_max), -sigma) / sigma;
	}
	const double sum_err = tail_err + 10 * eps * abs_sum;

	const cplx two_s = std::exp(-s * std::log(2.0));
	const cplx closed = s * zv * zv / z1v - zv * (s + two_s);
	EvalResult r;
	r.value = closed - zv * sum;
	const double dz = std::abs(2.0 * s * zv / z1v - (s + two_s) - sum);
	const double dz1 = std::abs(s * zv * zv / (z1v * z1v));
	r.err_bound = dz * z.err_bound + dz1 * z1.err_bound + zabs * sum_err;
	r.terms_used = std::int64_t(n_max) + z.terms_used + z1.terms_used;
	if (options.n_max != 0 && r.err_bound > options.tol)
		throw convergence_error(fmt::format("dphi_binomial: tol {:g} unreachable with N = {} (bound {:g})", options.tol, n_max, r.err_bound));
	return r;
}

// ---------------------------------------------------------------------------

ResidueResult residue_constant(double tol, const SeriesContext& ctx)
{
	if (!(tol >= 1e-9)) throw domain_error("residue_constant: tol must be >= 1e-9");
	const std::uint64_t n = std::min<std::uint64_t>(ctx.limit(), 1'000'000);
	if (n < min_accelerated_cutoff) throw bound_error("residue_constant: totient table too small");

	const EvalResult dz2 = zeta_derivative(2.0, 1e-13);
	ResidueResult r;
	r.n_max = n;
	r.closed_part = (zeta2 - dz2.value.re) / (zeta2 * zeta2);

	const TotientTable& phi = ctx.table();
	long double acc = 0;
	for (std::uint64_t k = n; k >= 1; --k)
	{
		const long double kf = k;
		acc += phi[k] / (kf * kf * (kf + 1));
	}
	const double nf = double(n);
	const double tail = six_over_pi2 * std::log1p(1.0 / nf) - ctx.remainder(n) / (nf * nf * (nf + 1.0));
	r.series = double(acc) + tail;
	r.formula = r.closed_part - 1.0 - r.series;
	r.laurent_residue = r.formula + 2.0 * euler_gamma / zeta2;
	r.leading = 1.0 / zeta2;
	r.err_bound = ctx.rho(n) * 1.5 / (nf * nf) + dz2.err_bound / (zeta2 * zeta2) + 1e-15;
	if (r.err_bound > tol)
		throw convergence_error(fmt::format("residue_constant: error bound {:g} exceeds tol", r.err_bound));
	return r;
}

// ---------------------------------------------------------------------------

PoleProbe pole_probe(ComplexValue center, double radius, int nodes, const SeriesContext& ctx, double tol)
{
	const cplx c = center;
	if (!(radius > 0.0)) throw domain_error("pole_probe: radius must be positive");
	if (nodes < 32) throw domain_error("pole_probe: need at least 32 nodes");
	if (c.real() - radius <= 0.0) throw domain_error("pole_probe: circle leaves the half-plane sigma > 0");
	const bool at_pole = c == cplx(1.0, 0.0);
	if (!at_pole && std::abs(std::abs(c - 1.0) - radius) < 1e-3 * radius)
		throw domain_error("pole_probe: circle passes through the pole at s = 1");

	constexpr int moments = 6;
	std::vector<cplx> values(nodes), w(nodes);
	for (int j = 0; j < nodes; ++j)
	{
		w[j] = std::polar(radius, 2.0 * pi * j / nodes);
		values[j] = dphi_binomial(c + w[j], ctx, {.n_max = 0, .k_max = 64, .tol = tol, .inner = InnerSum::difference}).value;
	}

	PoleProbe p;
	p.center = center;
	p.radius = radius;
	p.nodes = nodes;
	for (const cplx& v : values) p.max_abs = std::max(p.max_abs, std::abs(v));
	p.noise_floor = 1e-6 * p.max_abs;
	for (int m = 0; m < moments; ++m)
	{
		cplx acc = 0.0;
		for (int j = 0; j < nodes; ++j) acc += values[j] * std::pow(w[j], m + 1);
		acc /= double(nodes);
		p.moments.emplace_back(acc);
		if (std::abs(acc) >= p.noise_floor) p.order_estimate = m + 1;
	}
	p.residue_estimate = p.moments[0];
	return p;
}

}  // namespace ftl
