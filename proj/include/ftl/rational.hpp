#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

namespace ftl {

using i128 = __int128;
using u128 = unsigned __int128;

std::string to_string(i128 v);

// Overflow-checked 128-bit helpers; they throw capacity_error instead of wrapping.
i128 checked_add(i128 a, i128 b);
i128 checked_sub(i128 a, i128 b);
i128 checked_mul(i128 a, i128 b);

// Exact rational number with a positive denominator, always in lowest terms.
// Used for evaluation points (so that floor(x) is never subject to binary
// rounding) and for the exact values of weighted sums and step integrals.
class Rational
{
public:
	Rational() = default;
	Rational(i128 num) : num_(num) {}  // NOLINT: integers convert implicitly
	template <std::integral T>
	Rational(T num) : num_(static_cast<i128>(num)) {}  // NOLINT
	Rational(i128 num, i128 den);

	// Accepts "17", "-3", "3.25", "1e6", "2.5e-1", "10/3".
	static Rational parse(std::string_view text);

	i128 num() const { return num_; }
	i128 den() const { return den_; }
	bool is_integer() const { return den_ == 1; }

	i128 floor() const;
	Rational frac() const { return *this - Rational(floor()); }

	long double to_long_double() const;
	double to_double() const { return static_cast<double>(to_long_double()); }

	// Decimal expansion truncated toward zero after `digits` fractional digits;
	// a trailing '~' marks an inexact rendering.
	std::string to_decimal(int digits = 18) const;

	friend Rational operator+(const Rational& a, const Rational& b);
	friend Rational operator-(const Rational& a, const Rational& b);
	friend Rational operator*(const Rational& a, const Rational& b);
	friend Rational operator/(const Rational& a, const Rational& b);
	Rational operator-() const { return Rational(-num_, den_); }

	Rational& operator+=(const Rational& b) { return *this = *this + b; }
	Rational& operator-=(const Rational& b) { return *this = *this - b; }

	friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
	friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
	i128 num_ = 0;
	i128 den_ = 1;
};

std::string to_string(const Rational& r);

}  // namespace ftl
