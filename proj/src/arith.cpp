#include "ftl/arith.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ftl/errors.hpp"
#include "ftl/factor.hpp"

namespace ftl {

namespace {

std::uint64_t isqrt(std::uint64_t n)
{
	std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
	while (r * r > n) --r;
	while ((r + 1) * (r + 1) <= n) ++r;
	return r;
}

std::vector<std::uint32_t> small_primes(std::uint64_t bound)
{
	std::vector<bool> composite(bound + 1, false);
	std::vector<std::uint32_t> primes;
	for (std::uint64_t p = 2; p <= bound; ++p)
	{
		if (composite[p]) continue;
		primes.push_back(static_cast<std::uint32_t>(p));
		for (std::uint64_t m = p * p; m <= bound; m += p) composite[m] = true;
	}
	return primes;
}

// floor(x) as a non-negative 64-bit index; x must already be known to be >= 1.
std::uint64_t floor_index(const Rational& x, const char* what)
{
	const i128 f = x.floor();
	if (f < 1) throw domain_error(std::string(what) + ": x must be >= 1");
	if (f > i128(std::numeric_limits<std::uint64_t>::max())) throw capacity_error(std::string(what) + ": x beyond 64-bit range");
	return static_cast<std::uint64_t>(f);
}

void require_table(std::uint64_t n, std::uint64_t limit, const char* what)
{
	if (n > limit)
		throw bound_error(std::string(what) + ": floor(x) = " + std::to_string(n) + " exceeds table limit " + std::to_string(limit));
}

}  // namespace

// ---------------------------------------------------------------------------
// Totient table
// ---------------------------------------------------------------------------

std::uint32_t TotientTable::at(std::uint64_t n) const
{
	if (n > limit_) throw bound_error("totient table: n = " + std::to_string(n) + " beyond limit " + std::to_string(limit_));
	return values_[n];
}

TotientTable sieve_totients(std::uint64_t limit, const SieveOptions& options)
{
	if (limit < 1) throw domain_error("sieve_totients: limit must be >= 1");
	if (limit >= (std::uint64_t(1) << 32)) throw capacity_error("sieve_totients: limit must be below 2^32");
	const long double bytes = (static_cast<long double>(limit) + 1) * (sizeof(std::uint32_t) + sizeof(std::uint64_t));
	if (bytes > static_cast<long double>(options.memory_budget_bytes))
		throw capacity_error("sieve_totients: limit " + std::to_string(limit) + " exceeds memory budget of " +
		                     std::to_string(options.memory_budget_bytes) + " bytes");

	TotientTable table;
	table.limit_ = limit;
	table.values_.assign(limit + 1, 0);
	table.values_[0] = 1;

	const auto primes = small_primes(isqrt(limit));
	const std::uint64_t seg = std::max<std::uint64_t>(options.segment_size, 1024);
	std::vector<std::uint64_t> val(seg), rem(seg);

	for (std::uint64_t lo = 1; lo <= limit; lo += seg)
	{
		const std::uint64_t hi = std::min(limit + 1, lo + seg);  // [lo, hi)
		const std::size_t len = hi - lo;
		for (std::size_t i = 0; i < len; ++i) val[i] = rem[i] = lo + i;

		for (const std::uint32_t p : primes)
		{
			if (std::uint64_t(p) * p >= hi) break;
			for (std::uint64_t m = (lo + p - 1) / p * p; m < hi; m += p)
			{
				const std::size_t i = m - lo;
				val[i] -= val[i] / p;
				do rem[i] /= p;
				while (rem[i] % p == 0);
			}
		}
		// Whatever survives trial by primes <= sqrt(hi) is a single large prime.
		for (std::size_t i = 0; i < len; ++i)
		{
			if (rem[i] > 1) val[i] -= val[i] / rem[i];
			table.values_[lo + i] = static_cast<std::uint32_t>(val[i]);
		}
	}

	table.prefix_.assign(limit + 1, 0);
	for (std::uint64_t n = 1; n <= limit; ++n) table.prefix_[n] = table.prefix_[n - 1] + table.values_[n];
	return table;
}

std::uint64_t TotientOracle::operator()(std::uint64_t n) const
{
	if (n <= table_->limit()) return (*table_)[n];
	return totient_at(n);
}

// ---------------------------------------------------------------------------
// Phi coefficients
// ---------------------------------------------------------------------------

PhiCoeff phi_coeffs(std::uint64_t limit, const TotientTable& table)
{
	if (limit < 1) throw domain_error("phi_coeffs: limit must be >= 1");
	require_table(limit, table.limit(), "phi_coeffs");

	PhiCoeff c;
	c.limit_ = limit;
	c.coeffs_.assign(limit + 1, 0);
	for (std::uint64_t d = 1; d <= limit; ++d)
	{
		const std::int64_t g = std::int64_t(table[d]) - std::int64_t(table[d - 1]);
		if (g == 0) continue;
		for (std::uint64_t m = d; m <= limit; m += d) c.coeffs_[m] += g;
	}
	c.prefix_.assign(limit + 1, 0);
	for (std::uint64_t k = 1; k <= limit; ++k) c.prefix_[k] = c.prefix_[k - 1] + c.coeffs_[k];
	return c;
}

// ---------------------------------------------------------------------------
// Finite sums
// ---------------------------------------------------------------------------

std::uint64_t tau_x(const Rational& x, std::uint64_t n)
{
	if (n < 1) throw domain_error("tau_x: n must be >= 1");
	if (Rational(n) > x) throw domain_error("tau_x: n = " + std::to_string(n) + " exceeds x = " + x.to_decimal(6));

	// floor(d x / n) = floor(d num / (den n))
	auto coprime_to_quotient = [&](std::uint64_t d) {
		const i128 q = checked_mul(i128(d), x.num()) / checked_mul(x.den(), i128(n));
		return std::gcd(static_cast<std::uint64_t>(q), d) == 1;
	};
	std::uint64_t count = 0;
	for (std::uint64_t d = 1; d * d <= n; ++d)
	{
		if (n % d != 0) continue;
		count += coprime_to_quotient(d);
		if (d * d != n) count += coprime_to_quotient(n / d);
	}
	return count;
}

ExactSumResult s_phi(const Rational& x, const TotientOracle& oracle, SumMethod method)
{
	const std::uint64_t X = floor_index(x, "s_phi");
	i128 sum = 0;
	if (method == SumMethod::naive)
	{
		const TotientTable& table = oracle.table();
		if (X > table.limit())
			throw capacity_error("s_phi(naive): floor(x) = " + std::to_string(X) + " exceeds table limit " + std::to_string(table.limit()));
		for (std::uint64_t n = 1; n <= X; ++n) sum += table[X / n];
	}
	else
	{
		if (X > max_block_argument) throw capacity_error("s_phi(block): x beyond supported range");
		// Each quotient q = floor(X/n) is constant for n in [n, X/q].
		for (std::uint64_t n = 1; n <= X;)
		{
			const std::uint64_t q = X / n;
			const std::uint64_t last = X / q;
			sum = checked_add(sum, checked_mul(i128(oracle(q)), i128(last - n + 1)));
			n = last + 1;
		}
	}
	return {x, Rational(sum), method};
}

i128 t_phi(const Rational& x, const TotientTable& table)
{
	const std::uint64_t X = floor_index(x, "t_phi");
	require_table(X, table.limit(), "t_phi");
	i128 sum = 0;
	for (std::uint64_t n = 1; n <= X; ++n) sum += i128(X / n) * (i128(table[n]) - i128(table[n - 1]));
	return sum;
}

i128 t_phi(const Rational& x, const PhiCoeff& coeffs)
{
	const std::uint64_t X = floor_index(x, "t_phi");
	require_table(X, coeffs.limit(), "t_phi");
	return coeffs.prefix(X);
}

Rational t_phi_weighted(const Rational& x, const PhiCoeff& coeffs)
{
	const std::uint64_t X = floor_index(x, "t_phi_weighted");
	require_table(X, coeffs.limit(), "t_phi_weighted");
	// sum Phi(n)(x - n)/x = (p A - q B)/p with x = p/q, A = sum Phi(n), B = sum n Phi(n)
	i128 a = 0, b = 0;
	for (std::uint64_t n = 1; n <= X; ++n)
	{
		a += coeffs[n];
		b += i128(n) * coeffs[n];
	}
	return Rational(checked_sub(checked_mul(x.num(), a), checked_mul(x.den(), b)), x.num());
}

Rational integral_t_phi(const Rational& x, const PhiCoeff& coeffs)
{
	const std::uint64_t X = floor_index(x, "integral_t_phi");
	require_table(X, coeffs.limit(), "integral_t_phi");
	i128 whole = 0;
	for (std::uint64_t k = 1; k < X; ++k) whole += coeffs.prefix(k);
	return Rational(whole) + x.frac() * Rational(i128(coeffs.prefix(X)));
}

std::vector<i128> s_phi_values(std::uint64_t limit, const PhiCoeff& coeffs)
{
	require_table(limit, coeffs.limit(), "s_phi_values");
	std::vector<i128> s(limit + 1, 0);
	for (std::uint64_t k = 1; k <= limit; ++k) s[k] = i128(coeffs.prefix(k)) + i128(k);
	return s;
}

Rational integral_s_phi(const Rational& x, const PhiCoeff& coeffs)
{
	const std::uint64_t X = floor_index(x, "integral_s_phi");
	require_table(X, coeffs.limit(), "integral_s_phi");
	i128 whole = 0;
	for (std::uint64_t k = 1; k < X; ++k) whole += i128(coeffs.prefix(k)) + i128(k);
	return Rational(whole) + x.frac() * Rational(i128(coeffs.prefix(X)) + i128(X));
}

Rational integral_s_phi(const Rational& x, const TotientTable& table)
{
	const std::uint64_t X = floor_index(x, "integral_s_phi");
	require_table(X, table.limit(), "integral_s_phi");
	return integral_s_phi(x, phi_coeffs(X, table));
}

i128 floor_quotient_sum(std::uint64_t x)
{
	i128 sum = 0;
	for (std::uint64_t n = 1; n <= x;)
	{
		const std::uint64_t q = x / n;
		const std::uint64_t last = x / q;
		sum += i128(q) * i128(last - n + 1);
		n = last + 1;
	}
	return sum;
}

std::vector<std::uint32_t> divisor_counts(std::uint64_t limit)
{
	std::vector<std::uint32_t> tau(limit + 1, 0);
	for (std::uint64_t d = 1; d <= limit; ++d)
		for (std::uint64_t m = d; m <= limit; m += d) ++tau[m];
	return tau;
}

}  // namespace ftl
