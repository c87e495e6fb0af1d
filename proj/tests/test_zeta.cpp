#include <doctest.h>

#include <cmath>

#include "ftl/errors.hpp"
#include "ftl/zeta.hpp"

using namespace ftl;

namespace {

void check_close(const EvalResult& r, cplx expected, double tol)
{
	const double err = std::abs(r.value.c() - expected);
	CHECK(err <= tol);
	CHECK(r.err_bound >= 0.0);
	CHECK(r.terms_used >= 1);
}

}  // namespace

TEST_CASE("ComplexValue rejects non-finite components")
{
	CHECK_THROWS_AS(ComplexValue(std::nan(""), 0.0), domain_error);
	CHECK_THROWS_AS(ComplexValue(0.0, INFINITY), domain_error);
	const ComplexValue z(1.5, -2.0);
	CHECK(z.c() == cplx(1.5, -2.0));
}

TEST_CASE("zeta at classical points")
{
	check_close(zeta(2), {zeta2, 0}, 1e-12);
	check_close(zeta(0), {-0.5, 0}, 1e-12);
	check_close(zeta(-0.5), {-0.207886224977354566, 0}, 1e-12);
	check_close(zeta({2, 3}), {0.798021985146275721, -0.113744308052938500}, 1e-12);
	check_close(zeta({0.5, 20}), {0.429913860437843372, -1.06429144308058911}, 1e-11);
	check_close(zeta({1.5, 1000}, 1e-10), {0.955544581303411490, -0.0961324176515955107}, 1e-10);
	check_close(zeta({1.5, -1000}, 1e-10), {0.955544581303411490, 0.0961324176515955107}, 1e-10);
}

TEST_CASE("zeta near the first nontrivial zero")
{
	const EvalResult r = zeta({0.5, 14.134725});
	CHECK(std::abs(r.value.c()) < 1e-4);
	CHECK(std::abs(zeta({0.5, 14.134725141734693}).value.c()) < 1e-12);
}

TEST_CASE("zeta error bound honours tol")
{
	for (double tol : {1e-6, 1e-10, 1e-12})
	{
		const EvalResult r = zeta({0.75, 33.3}, tol);
		CHECK(r.err_bound <= tol);
	}
	CHECK(zeta(2, 1e-14).err_bound <= 1e-14);
	// at this height rounding in t log n alone is above 1e-14
	CHECK_THROWS_AS(zeta({0.75, 33.3}, 1e-14), convergence_error);
	const EvalResult loose = zeta_best_effort({0.75, 33.3}, 1e-14);
	CHECK(loose.err_bound > 1e-14);
	CHECK(loose.err_bound < 1e-12);
	CHECK_THROWS_AS(zeta(2, 1e-16), domain_error);
}

TEST_CASE("zeta domain and pole errors")
{
	CHECK_THROWS_AS(zeta(1), pole_error);
	CHECK_THROWS_AS(zeta(-1.5), domain_error);
	CHECK_THROWS_AS(zeta({0.5, 2e5}), domain_error);
}

TEST_CASE("zeta derivative")
{
	check_close(zeta_derivative(2), {-0.937548254315843753702574094568, 0}, 1e-11);
	check_close(zeta_derivative({0.5, 10}), {-0.360907373091571817, -0.00359344073563106562}, 1e-10);
	CHECK_THROWS_AS(zeta_derivative(1), pole_error);
}

TEST_CASE("regular part h(s) = zeta(s) - 1/(s-1)")
{
	check_close(laurent_h(1), {euler_gamma, 0}, 1e-12);
	check_close(laurent_h(1.001), {0.577288475901492732, 0}, 1e-11);
	check_close(laurent_h({0.5, 2}), {0.558192709164358852, 0.158941896858377922}, 1e-11);
	CHECK_THROWS_AS(laurent_h(-0.5), domain_error);
}

TEST_CASE("bound scan along the zero-free contour")
{
	const ZetaScan scan = zeta_bound_scan(100, 50, 0.1);
	REQUIRE(scan.rows.size() == 50);
	CHECK(scan.rows.front().t == doctest::Approx(0.875));
	CHECK(scan.rows.back().t == doctest::Approx(100));
	for (const auto& r : scan.rows)
	{
		CHECK(r.sigma == doctest::Approx(1 - 0.1 / (2 * std::log(r.t + 4))));
		CHECK(r.ratio == doctest::Approx(r.inv_abs_zeta / r.scale));
	}
	CHECK(scan.far_constant > 0.5);
	CHECK(scan.far_constant < 2.0);
	CHECK(scan.near_constant > 0.5);
	CHECK(scan.near_constant < 2.0);
	CHECK_THROWS_AS(zeta_bound_scan(100, 1), domain_error);
}
