#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ftl/arith.hpp"
#include "ftl/errors.hpp"
#include "ftl/experiments.hpp"
#include "ftl/report.hpp"

using namespace ftl;

namespace {

struct Fixture
{
	TotientTable table = sieve_totients(1'000'000);
	PhiCoeff coeffs = phi_coeffs(1'000'000, table);
};

const Fixture& fx()
{
	static const Fixture f;
	return f;
}

const ExperimentConfig quiet{1, false};

std::vector<Rational> xs(std::initializer_list<std::int64_t> v)
{
	return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("main theorem rows are bounded and trend-free")
{
	const auto rows = verify_main_theorem(xs({1'000'000, 1000, 100'000, 10'000}), fx().coeffs, quiet);
	REQUIRE(rows.size() == 4);
	CHECK(rows[0].x == "1000");
	CHECK(rows[3].x == "1000000");
	double max_abs = 0;
	std::vector<double> x, e;
	for (const auto& r : rows)
	{
		max_abs = std::max(max_abs, std::abs(r.normalized_error));
		x.push_back(r.x_value);
		e.push_back(r.normalized_error);
		CHECK(r.elapsed_ms == 0.0);
	}
	CHECK(max_abs <= 2 * std::abs(rows[0].normalized_error));
	CHECK(std::abs(log_slope(x, e)) < 0.05);
	CHECK(rows[0].exact == "2077773");
}

TEST_CASE("main theorem at x = 1 has ratio 0")
{
	const auto rows = verify_main_theorem(xs({1, 2}), fx().coeffs, quiet);
	CHECK(rows[0].ratio == 0.0);
	CHECK(rows[0].exact == "0");
	CHECK(rows[1].exact == "1");
}

TEST_CASE("conjecture ratios")
{
	const ConjectureRatio r = conjecture_ratio(xs({1000, 1'000'000}), fx().coeffs, quiet);
	REQUIRE(r.averaged.size() == 2);
	CHECK(std::abs(r.averaged[1].ratio - 1) < std::abs(r.averaged[0].ratio - 1));
	CHECK(r.averaged[1].ratio >= 0.95);
	CHECK(r.averaged[1].ratio <= 1.05);
	CHECK(r.pointwise[0].exact == "4053");
	CHECK(r.pointwise[0].ratio == doctest::Approx(4053 * zeta2 / (1000 * std::log(1000.0))));
	CHECK_THROWS_AS(conjecture_ratio(xs({1}), fx().coeffs, quiet), domain_error);
}

TEST_CASE("BDHPS envelope at desk scale")
{
	const BdhpsReport b = bdhps_bounds(xs({100'000, 1'000'000}), fx().table, quiet);
	CHECK(b.violations.empty());
	for (const auto& r : b.rows)
	{
		CHECK(r.ratio >= bdhps_lower - 0.02);
		CHECK(r.ratio <= bdhps_upper + 0.02);
	}
	CHECK(b.rows[1].exact == "8073733");
	CHECK_THROWS_AS(bdhps_bounds(xs({2}), fx().table, quiet), domain_error);
}

TEST_CASE("scan of -Phi(n)/log n is monotone in the limit")
{
	const ScanResult a = scan_phi_lower(10'000, fx().coeffs);
	const ScanResult b = scan_phi_lower(1'000'000, fx().coeffs);
	CHECK(b.fitted_constant >= a.fitted_constant);
	CHECK(b.extremal_n == 997'920);
	CHECK(b.extremal_value == -3'121'213);
	CHECK(b.doubtful);
	CHECK(b.fitted_constant == doctest::Approx(3121213 / std::log(997920.0)));
	CHECK_FALSE(b.checkpoints.empty());
	CHECK_THROWS_AS(scan_phi_lower(2'000'000, fx().coeffs), bound_error);
}

TEST_CASE("local increment L")
{
	// int_10^12 (S(t) - S(10)) dt = S(11) - S(10)
	const TotientOracle o(fx().table);
	const IncrementResult r = local_increment_L(Rational(10), Rational(2), fx().coeffs);
	CHECK(r.value == s_phi(Rational(11), o).value - s_phi(Rational(10), o).value);
	const IncrementResult frac = local_increment_L(Rational(10), Rational(3, 2), fx().coeffs);
	CHECK(frac.value == (s_phi(Rational(11), o).value - s_phi(Rational(10), o).value) / Rational(2));
	CHECK_THROWS_AS(local_increment_L(Rational(10), Rational(1, 2), fx().coeffs), domain_error);
	CHECK_THROWS_AS(local_increment_L(Rational(10), Rational(10), fx().coeffs), domain_error);
}

TEST_CASE("partial sums of phi(n) n^{-s}")
{
	const auto rows = apostol_check(2.5, xs({100, 1000, 10'000}), fx().table, quiet);
	REQUIRE(rows.size() == 3);
	CHECK(rows[0].ratio == 1.0);
	for (const auto& r : rows) CHECK(std::abs(r.exact_value - r.predicted) < 1e-3);
	CHECK_THROWS_AS(apostol_check(2, xs({100}), fx().table, quiet), domain_error);
	CHECK_THROWS_AS(apostol_check(1, xs({100}), fx().table, quiet), domain_error);
}

TEST_CASE("J31 identity")
{
	CHECK(j31_value(Rational(10)) == Rational(25, 2));
	const ReportRow r = j31_identity(Rational(10), quiet);
	CHECK(r.normalized_error == 0.0);
	CHECK(j31_value(Rational(2)) == Rational(1, 2));
	for (std::int64_t x : {100, 10'000, 1'000'000, 999'999})
		CHECK(std::abs(j31_identity(Rational(x), quiet).normalized_error) <= 1.0);
	CHECK_THROWS_AS(j31_identity(Rational(1), quiet), domain_error);
}

TEST_CASE("Riesz weighted sum")
{
	const RieszResult three = riesz_weighted(Rational(3), fx().coeffs, quiet);
	CHECK(three.integral == doctest::Approx(std::log(2.0) + 2 * std::log(1.5)));
	const RieszResult one = riesz_weighted(Rational(1), fx().coeffs, quiet);
	CHECK(one.integral == 0.0);
	CHECK(one.t_r == 0.0);
	const RieszResult big = riesz_weighted(Rational(1'000'000), fx().coeffs, quiet);
	CHECK(std::abs(big.gap_over_x) < 5);
}

TEST_CASE("reports are reproducible with timing disabled")
{
	std::ostringstream a, b;
	write_csv(a, verify_main_theorem(xs({1000, 10'000}), fx().coeffs, {4, false}));
	write_csv(b, verify_main_theorem(xs({10'000, 1000}), fx().coeffs, {1, false}));
	CHECK(a.str() == b.str());
}

TEST_CASE("log slope")
{
	CHECK(log_slope({10, 100, 1000}, {1, 2, 3}) == doctest::Approx(1 / std::log(10.0)));
	CHECK(log_slope({10, 100}, {5, 5}) == doctest::Approx(0.0));
}
