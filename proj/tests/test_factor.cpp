#include <doctest.h>

#include <numeric>

#include "ftl/factor.hpp"

TEST_CASE("totient_at small values")
{
	CHECK(ftl::totient_at(1) == 1);
	CHECK(ftl::totient_at(10) == 4);
	CHECK(ftl::totient_at(7) == 6);
	for (std::uint64_t n = 1; n <= 300; ++n)
	{
		std::uint64_t count = 0;
		for (std::uint64_t k = 1; k <= n; ++k) count += std::gcd(k, n) == 1;
		CHECK(ftl::totient_at(n) == count);
	}
}

TEST_CASE("Mersenne prime 2^61 - 1")
{
	const std::uint64_t m61 = (std::uint64_t(1) << 61) - 1;
	CHECK(ftl::is_prime_u64(m61));
	CHECK(ftl::totient_at(m61) == m61 - 1);
}

TEST_CASE("Miller-Rabin against strong pseudoprimes")
{
	CHECK_FALSE(ftl::is_prime_u64(3215031751ull));        // spsp to bases 2, 3, 5, 7
	CHECK_FALSE(ftl::is_prime_u64(3825123056546413051ull));  // spsp to the first nine prime bases
	CHECK(ftl::is_prime_u64(18446744073709551557ull));      // largest 64-bit prime
	CHECK_FALSE(ftl::is_prime_u64(1));
	CHECK(ftl::is_prime_u64(2));
}

TEST_CASE("factorize semiprimes and prime powers")
{
	using F = std::vector<std::pair<std::uint64_t, int>>;
	CHECK(ftl::factorize(1'000'000'007ull * 998'244'353ull) == F{{998'244'353ull, 1}, {1'000'000'007ull, 1}});
	CHECK(ftl::factorize(std::uint64_t(1) << 63) == F{{2, 63}});
	CHECK(ftl::factorize(3ull * 3 * 4294967291ull) == F{{3, 2}, {4294967291ull, 1}});
	CHECK(ftl::totient_at(4294967291ull * 4294967279ull) == 4294967290ull * 4294967278ull);
}
