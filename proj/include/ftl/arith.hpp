#pragma once

// Exact arithmetic for the floor-quotient totient sum
//
//   S(x)   = sum_{n <= x} phi(floor(x/n))
//   Phi(n) = sum_{d | n} (phi(d) - phi(d-1)),   phi(0) := 1
//   T(x)   = sum_{n <= x} floor(x/n) (phi(n) - phi(n-1)) = sum_{n <= x} Phi(n)
//   T^a(x) = sum_{n <= x} Phi(n) (1 - n/x)
//
// together with the step-function integrals of S and T.  Every value here is
// an exact integer or rational; sums accumulate in checked 128-bit integers.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ftl/rational.hpp"

namespace ftl {

struct SieveOptions
{
	// Upper bound on the bytes the table may occupy (values + prefix sums).
	std::size_t memory_budget_bytes = std::size_t(4) << 30;
	std::uint64_t segment_size = std::uint64_t(1) << 18;
};

// phi(n) for 0 <= n <= limit with the convention phi(0) = 1, plus the
// summatory function sum_{k <= n} phi(k) (which starts at k = 1).
class TotientTable
{
public:
	std::uint64_t limit() const { return limit_; }
	std::uint32_t operator[](std::uint64_t n) const { return values_[n]; }
	std::uint32_t at(std::uint64_t n) const;
	std::span<const std::uint32_t> values() const { return values_; }
	std::uint64_t summatory(std::uint64_t n) const { return prefix_[n]; }

private:
	friend TotientTable sieve_totients(std::uint64_t, const SieveOptions&);
	std::uint64_t limit_ = 0;
	std::vector<std::uint32_t> values_;
	std::vector<std::uint64_t> prefix_;
};

// Segmented sieve; throws capacity_error if the table does not fit the budget.
TotientTable sieve_totients(std::uint64_t limit, const SieveOptions& options = {});

// Totients from the table where possible, single-point factorisation beyond it.
class TotientOracle
{
public:
	explicit TotientOracle(const TotientTable& table) : table_(&table) {}
	std::uint64_t operator()(std::uint64_t n) const;
	const TotientTable& table() const { return *table_; }

private:
	const TotientTable* table_;
};

// Phi(n) and T(k) = sum_{n <= k} Phi(n) for 1 <= n, k <= limit (index 0 holds 0).
class PhiCoeff
{
public:
	std::uint64_t limit() const { return limit_; }
	std::int64_t operator[](std::uint64_t n) const { return coeffs_[n]; }
	std::int64_t prefix(std::uint64_t k) const { return prefix_[k]; }
	std::span<const std::int64_t> coeffs() const { return coeffs_; }

private:
	friend PhiCoeff phi_coeffs(std::uint64_t, const TotientTable&);
	std::uint64_t limit_ = 0;
	std::vector<std::int64_t> coeffs_;
	std::vector<std::int64_t> prefix_;
};

PhiCoeff phi_coeffs(std::uint64_t limit, const TotientTable& table);

enum class SumMethod { naive, block };

struct ExactSumResult
{
	Rational x;
	Rational value;
	SumMethod method;
};

// Largest x accepted by the block method (the O(sqrt x) loop factorises every
// quotient beyond the table).
inline constexpr std::uint64_t max_block_argument = 1'000'000'000'000'000ull;

// Number of divisors d of n with gcd(d, floor(d x / n)) = 1.  Requires 1 <= n <= x.
std::uint64_t tau_x(const Rational& x, std::uint64_t n);

ExactSumResult s_phi(const Rational& x, const TotientOracle& oracle, SumMethod method = SumMethod::block);

// T(x) from its definition, sum_{n <= x} floor(x/n)(phi(n) - phi(n-1)).
i128 t_phi(const Rational& x, const TotientTable& table);
// T(x) as the prefix sum of Phi.
i128 t_phi(const Rational& x, const PhiCoeff& coeffs);

// Cesaro-weighted sum sum_{n <= x} Phi(n)(1 - n/x), evaluated term by term.
Rational t_phi_weighted(const Rational& x, const PhiCoeff& coeffs);

// Exact integral of the step function T over [1, x] (from the prefix sums).
Rational integral_t_phi(const Rational& x, const PhiCoeff& coeffs);

// Exact integral of the step function S over [1, x].
Rational integral_s_phi(const Rational& x, const PhiCoeff& coeffs);
Rational integral_s_phi(const Rational& x, const TotientTable& table);

// S(k) for every 0 <= k <= limit, from S(k) = T(k) + k.
std::vector<i128> s_phi_values(std::uint64_t limit, const PhiCoeff& coeffs);

// sum_{n <= x} floor(x/n) by blocks of equal quotient, O(sqrt x).
i128 floor_quotient_sum(std::uint64_t x);

// tau(n) for 0 <= n <= limit (index 0 holds 0).
std::vector<std::uint32_t> divisor_counts(std::uint64_t limit);

}  // namespace ftl
