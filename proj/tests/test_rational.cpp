#include <doctest.h>

#include "ftl/errors.hpp"
#include "ftl/rational.hpp"

using ftl::Rational;

TEST_CASE("parse accepts integers, decimals, exponents and fractions")
{
	CHECK(Rational::parse("17") == Rational(17));
	CHECK(Rational::parse("-3") == Rational(-3));
	CHECK(Rational::parse("3.25") == Rational(13, 4));
	CHECK(Rational::parse("1e6") == Rational(1000000));
	CHECK(Rational::parse("2.5e-1") == Rational(1, 4));
	CHECK(Rational::parse("10/3") == Rational(10, 3));
	CHECK_THROWS(Rational::parse("abc"));
	CHECK_THROWS(Rational::parse("1/0"));
}

TEST_CASE("floor is exact at integer boundaries")
{
	// 0.1 + 0.2 style inputs must not drift below the integer
	CHECK(Rational::parse("2.9999999999999999999").floor() == 2);
	CHECK(Rational::parse("3.0000000000000000000").floor() == 3);
	CHECK(Rational(-7, 2).floor() == -4);
	CHECK(Rational(7, 2).frac() == Rational(1, 2));
}

TEST_CASE("arithmetic stays in lowest terms")
{
	const Rational a(1, 6), b(1, 3);
	CHECK(a + b == Rational(1, 2));
	CHECK((a - b).den() == 6);
	CHECK(a * b == Rational(1, 18));
	CHECK(a / b == Rational(1, 2));
	CHECK(Rational(4, -8) == Rational(-1, 2));
	CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("decimal rendering truncates and marks inexact values")
{
	CHECK(Rational(1, 4).to_decimal() == "0.25");
	CHECK(Rational(12).to_decimal() == "12");
	CHECK(Rational(1, 3).to_decimal(5) == "0.33333~");
	CHECK(Rational(-2, 3).to_decimal(3) == "-0.666~");
	CHECK(ftl::to_string(Rational(5, 2)) == "5/2");
}

TEST_CASE("checked 128-bit arithmetic refuses to wrap")
{
	const ftl::i128 big = ftl::i128(1) << 125;
	CHECK_THROWS_AS(ftl::checked_mul(big, 8), ftl::capacity_error);
	CHECK_THROWS_AS(ftl::checked_add(big, big * 3), ftl::capacity_error);
	CHECK(ftl::checked_sub(big, big) == 0);
	CHECK(ftl::to_string(ftl::i128(-1234567890123456789) * 1000) == "-1234567890123456789000");
}
