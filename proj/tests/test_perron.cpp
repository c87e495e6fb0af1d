#include <doctest.h>

#include <cmath>

#include "ftl/arith.hpp"
#include "ftl/dirichlet.hpp"
#include "ftl/errors.hpp"
#include "ftl/perron.hpp"

using namespace ftl;

namespace {

struct Fixture
{
	TotientTable table = sieve_totients(1'000'000);
	PhiCoeff coeffs = phi_coeffs(1000, table);
	SeriesContext ctx{table};
};

const Fixture& fx()
{
	static const Fixture f;
	return f;
}

}  // namespace

TEST_CASE("kappa and main term")
{
	// gamma/(2 zeta(2)) - (3 + 2 log 2)/(4 zeta(2))
	CHECK(kappa() == doctest::Approx(-0.491184281554).epsilon(1e-10));
	CHECK(main_term(1000) == doctest::Approx(1000 * std::log(1000.0) / (2 * zeta2) + 1000 * kappa()));
	CHECK_THROWS_AS(main_term(1.5), domain_error);
}

TEST_CASE("truncation height")
{
	CHECK(truncation_height(100, 0.1) == doctest::Approx(std::exp(std::sqrt(0.1 * std::log(100.0)))));
	CHECK(truncation_height(2, 1.0) <= 2.0);
	CHECK(truncation_height(1e6, 0.1) >= 1.0);
	CHECK_THROWS_AS(truncation_height(100, 0), domain_error);
	CHECK_THROWS_AS(truncation_height(100, 1.5), domain_error);
}

TEST_CASE("weighted Perron at short heights tracks the exact sum")
{
	for (double x : {20.0, 50.0})
	{
		QuadratureSpec q;
		q.x = x;
		q.height_T = 50;
		const PerronResult p = weighted_perron(q, fx().ctx);
		const double exact = t_phi_weighted(Rational(std::int64_t(x)), fx().coeffs).to_double();
		CHECK(p.abscissa == doctest::Approx(1 + 1 / std::log(x)));
		CHECK(std::abs(p.imag_residual) < 1e-6);
		CHECK(p.truncation_note == doctest::Approx(x * std::log(50.0) / 50));
		CHECK(std::abs(p.value - exact) <= p.quad_err + 5 * p.truncation_note);
		CHECK(p.panels >= 1);
		CHECK(p.evals >= 65);
	}
}

TEST_CASE("Perron error shrinks as T grows")
{
	const double exact = t_phi_weighted(Rational(30), fx().coeffs).to_double();
	double prev = INFINITY;
	int shrinking = 0;
	for (double T : {10.0, 40.0, 160.0})
	{
		QuadratureSpec q;
		q.x = 30;
		q.height_T = T;
		const double gap = std::abs(weighted_perron(q, fx().ctx).value - exact);
		shrinking += gap < prev;
		prev = gap;
	}
	CHECK(shrinking >= 2);
	CHECK(prev < 0.5);
}

TEST_CASE("Perron input validation and panel budget")
{
	QuadratureSpec q;
	q.x = 1.5;
	CHECK_THROWS_AS(weighted_perron(q, fx().ctx), domain_error);
	q.x = 100;
	q.abscissa = 0.9;
	CHECK_THROWS_AS(weighted_perron(q, fx().ctx), domain_error);
	q.abscissa = 0;
	q.height_T = 500;
	q.max_panels = 2;
	CHECK_THROWS_AS(weighted_perron(q, fx().ctx), budget_exceeded);
}
