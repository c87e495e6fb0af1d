#include "ftl/rational.hpp"

#include <cctype>
#include <numeric>

#include "ftl/errors.hpp"

namespace ftl {

namespace {

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b)
{
	a = abs128(a);
	b = abs128(b);
	while (b != 0)
	{
		const i128 t = a % b;
		a = b;
		b = t;
	}
	return a;
}

i128 pow10(int e)
{
	i128 r = 1;
	for (int i = 0; i < e; ++i) r = checked_mul(r, 10);
	return r;
}

}  // namespace

std::string to_string(i128 v)
{
	if (v == 0) return "0";
	const bool neg = v < 0;
	u128 u = neg ? u128(0) - u128(v) : u128(v);
	std::string s;
	while (u != 0)
	{
		s.push_back(char('0' + int(u % 10)));
		u /= 10;
	}
	if (neg) s.push_back('-');
	return std::string(s.rbegin(), s.rend());
}

i128 checked_add(i128 a, i128 b)
{
	i128 r;
	if (__builtin_add_overflow(a, b, &r)) throw capacity_error("128-bit overflow in addition");
	return r;
}

i128 checked_sub(i128 a, i128 b)
{
	i128 r;
	if (__builtin_sub_overflow(a, b, &r)) throw capacity_error("128-bit overflow in subtraction");
	return r;
}

i128 checked_mul(i128 a, i128 b)
{
	i128 r;
	if (__builtin_mul_overflow(a, b, &r)) throw capacity_error("128-bit overflow in multiplication");
	return r;
}

Rational::Rational(i128 num, i128 den)
{
	if (den == 0) throw domain_error("rational with zero denominator");
	if (den < 0)
	{
		num = -num;
		den = -den;
	}
	const i128 g = gcd128(num, den);
	num_ = g > 1 ? num / g : num;
	den_ = g > 1 ? den / g : den;
}

Rational Rational::parse(std::string_view text)
{
	std::size_t i = 0;
	auto fail = [&]() -> Rational { throw domain_error("cannot parse '" + std::string(text) + "' as an exact number"); };
	while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
	bool neg = false;
	if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = (text[i++] == '-');

	i128 mant = 0;
	int frac_digits = 0, digits = 0;
	bool seen_point = false;
	for (; i < text.size(); ++i)
	{
		const char c = text[i];
		if (std::isdigit(static_cast<unsigned char>(c)))
		{
			mant = checked_add(checked_mul(mant, 10), c - '0');
			++digits;
			if (seen_point) ++frac_digits;
		}
		else if (c == '.' && !seen_point) seen_point = true;
		else break;
	}
	if (digits == 0) return fail();

	int exponent = 0;
	if (i < text.size() && (text[i] == 'e' || text[i] == 'E'))
	{
		++i;
		bool eneg = false;
		if (i < text.size() && (text[i] == '+' || text[i] == '-')) eneg = (text[i++] == '-');
		int edigits = 0;
		for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i)
		{
			exponent = exponent * 10 + (text[i] - '0');
			if (exponent > 36) throw capacity_error("exponent too large in '" + std::string(text) + "'");
			++edigits;
		}
		if (edigits == 0) return fail();
		if (eneg) exponent = -exponent;
	}

	i128 den = 1;
	if (i < text.size() && text[i] == '/')
	{
		if (seen_point || exponent != 0) return fail();
		++i;
		i128 d = 0;
		int ddigits = 0;
		for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i, ++ddigits)
			d = checked_add(checked_mul(d, 10), text[i] - '0');
		if (ddigits == 0) return fail();
		den = d;
	}
	while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
	if (i != text.size()) return fail();

	const int scale = exponent - frac_digits;
	if (scale >= 0) mant = checked_mul(mant, pow10(scale));
	else den = checked_mul(den, pow10(-scale));
	return Rational(neg ? -mant : mant, den);
}

i128 Rational::floor() const
{
	i128 q = num_ / den_;
	if (num_ % den_ != 0 && num_ < 0) --q;
	return q;
}

long double Rational::to_long_double() const
{
	const i128 q = num_ / den_;
	const i128 r = num_ % den_;
	return static_cast<long double>(q) + static_cast<long double>(r) / static_cast<long double>(den_);
}

std::string Rational::to_decimal(int digits) const
{
	const bool neg = num_ < 0;
	const i128 a = abs128(num_);
	std::string s = (neg ? "-" : "") + to_string(a / den_);
	i128 r = a % den_;
	if (r == 0) return s;
	s.push_back('.');
	for (int k = 0; k < digits && r != 0; ++k)
	{
		// r < den_ and den_ < 2^127 / 10 is guaranteed by construction for all
		// values produced here; fall back to checked arithmetic otherwise.
		r = checked_mul(r, 10);
		s.push_back(char('0' + int(r / den_)));
		r %= den_;
	}
	if (r != 0) s.push_back('~');
	return s;
}

Rational operator+(const Rational& a, const Rational& b)
{
	if (a.den_ == b.den_) return Rational(checked_add(a.num_, b.num_), a.den_);
	const i128 g = gcd128(a.den_, b.den_);
	const i128 da = a.den_ / g, db = b.den_ / g;
	return Rational(checked_add(checked_mul(a.num_, db), checked_mul(b.num_, da)), checked_mul(a.den_, db));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b)
{
	const i128 g1 = gcd128(a.num_, b.den_), g2 = gcd128(b.num_, a.den_);
	const i128 n1 = g1 > 1 ? a.num_ / g1 : a.num_, d2 = g1 > 1 ? b.den_ / g1 : b.den_;
	const i128 n2 = g2 > 1 ? b.num_ / g2 : b.num_, d1 = g2 > 1 ? a.den_ / g2 : a.den_;
	return Rational(checked_mul(n1, n2), checked_mul(d1, d2));
}

Rational operator/(const Rational& a, const Rational& b)
{
	if (b.num_ == 0) throw domain_error("division by zero");
	return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
	const i128 l = checked_mul(a.num_, b.den_), r = checked_mul(b.num_, a.den_);
	return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string to_string(const Rational& r)
{
	if (r.is_integer()) return to_string(r.num());
	return to_string(r.num()) + "/" + to_string(r.den());
}

}  // namespace ftl
