#include "ftl/factor.hpp"

#include <algorithm>
#include <numeric>

#include "ftl/errors.hpp"

namespace ftl {

namespace {

using u128 = unsigned __int128;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
	return std::uint64_t(u128(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
	std::uint64_t r = 1;
	a %= m;
	while (e != 0)
	{
		if (e & 1) r = mul_mod(r, a, m);
		a = mul_mod(a, a, m);
		e >>= 1;
	}
	return r;
}

// Pollard-Brent: returns a non-trivial factor of the odd composite n.
std::uint64_t rho(std::uint64_t n)
{
	for (std::uint64_t c = 1;; ++c)
	{
		auto f = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
		std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
		const std::uint64_t m = 128;
		std::uint64_t r = 1;
		do
		{
			x = y;
			for (std::uint64_t i = 0; i < r; ++i) y = f(y);
			std::uint64_t k = 0;
			do
			{
				ys = y;
				for (std::uint64_t i = 0; i < std::min(m, r - k); ++i)
				{
					y = f(y);
					q = mul_mod(q, x > y ? x - y : y - x, n);
				}
				g = std::gcd(q, n);
				k += m;
			} while (k < r && g == 1);
			r <<= 1;
		} while (g == 1);

		if (g == n)
		{
			do
			{
				ys = f(ys);
				g = std::gcd(x > ys ? x - ys : ys - x, n);
			} while (g == 1);
		}
		if (g != n) return g;
	}
}

void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& out)
{
	if (n == 1) return;
	if (is_prime_u64(n))
	{
		out.push_back(n);
		return;
	}
	const std::uint64_t d = rho(n);
	factor_rec(d, out);
	factor_rec(n / d, out);
}

}  // namespace

bool is_prime_u64(std::uint64_t n)
{
	if (n < 2) return false;
	for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
	{
		if (n % p == 0) return n == p;
	}
	std::uint64_t d = n - 1;
	int s = 0;
	while ((d & 1) == 0)
	{
		d >>= 1;
		++s;
	}
	// These twelve bases are deterministic for n < 3.3e24.
	for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
	{
		std::uint64_t x = pow_mod(a, d, n);
		if (x == 1 || x == n - 1) continue;
		bool composite = true;
		for (int r = 1; r < s; ++r)
		{
			x = mul_mod(x, x, n);
			if (x == n - 1)
			{
				composite = false;
				break;
			}
		}
		if (composite) return false;
	}
	return true;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n)
{
	if (n == 0) throw domain_error("factorize: n must be positive");
	std::vector<std::uint64_t> primes;
	for (std::uint64_t p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2))
	{
		while (n % p == 0)
		{
			primes.push_back(p);
			n /= p;
		}
	}
	factor_rec(n, primes);
	std::sort(primes.begin(), primes.end());

	std::vector<std::pair<std::uint64_t, int>> out;
	for (std::uint64_t p : primes)
	{
		if (!out.empty() && out.back().first == p) ++out.back().second;
		else out.emplace_back(p, 1);
	}
	return out;
}

std::uint64_t totient_at(std::uint64_t n)
{
	if (n == 0) throw domain_error("totient_at: n must be positive");
	std::uint64_t r = n;
	for (const auto& [p, e] : factorize(n)) r = r / p * (p - 1);
	return r;
}

}  // namespace ftl
