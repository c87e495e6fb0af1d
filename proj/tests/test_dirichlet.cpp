#include <doctest.h>

#include <cmath>
#include <random>

#include "ftl/arith.hpp"
#include "ftl/dirichlet.hpp"
#include "ftl/errors.hpp"

using namespace ftl;

namespace {

struct Fixture
{
	TotientTable table = sieve_totients(1'000'000);
	PhiCoeff coeffs = phi_coeffs(1'000'000, table);
	SeriesContext ctx{table};
};

const Fixture& fx()
{
	static const Fixture f;
	return f;
}

// D(s) from an independent high-precision evaluation of zeta(s-1) - zeta(s) G(s)
const cplx d3{0.0684425728022288348, 0.0};
const cplx d25_1{-0.0105936622894470474, -0.115185226860338991};
const cplx d3_10{-0.0107440525038466070, 0.0373573866368451751};

}  // namespace

TEST_CASE("remainder model of the totient sum")
{
	const SeriesContext& ctx = fx().ctx;
	CHECK(ctx.remainder(1000) == doctest::Approx(304192 - 3e6 / (M_PI * M_PI)).epsilon(1e-12));
	CHECK(ctx.rho(1000) > 0.5);
	CHECK(ctx.rho(1000) < 3.0);
	CHECK(ctx.rho(100) >= ctx.rho(10'000));
	CHECK(ctx.spf(97) == 97);
	CHECK(ctx.spf(91) == 7);
	CHECK(ctx.spf(1'000'000) == 2);
}

TEST_CASE("direct series")
{
	const EvalResult r = dphi_direct(3, fx().coeffs);
	CHECK(std::abs(r.value.c() - d3) < 1e-10);
	CHECK(std::abs(r.value.c() - d3) <= r.err_bound + 1e-12);
	const EvalResult q = dphi_direct({3, 10}, fx().coeffs);
	CHECK(std::abs(q.value.c() - d3_10) <= q.err_bound);
	const EvalResult p = dphi_direct({3, 10}, fx().coeffs, {.n_max = 100'000, .tail = TailMode::plain});
	CHECK(std::abs(p.value.c() - d3_10) <= p.err_bound);
	CHECK_THROWS_AS(dphi_direct(2, fx().coeffs), convergence_error);
	CHECK_THROWS_AS(dphi_direct({1.5, 3}, fx().coeffs), convergence_error);
}

TEST_CASE("convolution representation")
{
	const EvalResult r = dphi_convolution(3, 1'000'000, fx().ctx);
	CHECK(std::abs(r.value.c() - d3) < 1e-10);
	const EvalResult q = dphi_convolution({2.5, 1}, 1'000'000, fx().ctx);
	CHECK(std::abs(q.value.c() - d25_1) <= q.err_bound);
	CHECK(std::abs(q.value.c() - d25_1) < 1e-6);
	CHECK_THROWS_AS(dphi_convolution(2, 1000, fx().ctx), convergence_error);
}

TEST_CASE("binomial representation")
{
	const EvalResult r = dphi_binomial(3, fx().ctx);
	CHECK(std::abs(r.value.c() - d3) < 1e-10);
	const EvalResult q = dphi_binomial({2.5, 1}, fx().ctx);
	CHECK(std::abs(q.value.c() - d25_1) <= q.err_bound + 1e-12);
	CHECK(std::abs(q.value.c() - d25_1) < 1e-10);
	const EvalResult u = dphi_binomial({3, 10}, fx().ctx);
	CHECK(std::abs(u.value.c() - d3_10) < 1e-10);
	CHECK_THROWS_AS(dphi_binomial(1, fx().ctx), pole_error);
	CHECK_THROWS_AS(dphi_binomial(-0.5, fx().ctx), domain_error);
	CHECK_THROWS_AS(dphi_binomial(3, fx().ctx, {.n_max = 100, .tol = 1e-14}), convergence_error);
}

TEST_CASE("binomial inner sum: series and difference forms agree")
{
	// the smooth tail shrinks like N^{-sigma}, so reachable tolerances fall with sigma
	for (auto [s, tol] : {std::pair{cplx(2.2, 0), 1e-8}, {cplx(1.5, 4), 1e-7}, {cplx(0.8, 12), 1e-5}, {cplx(3, -7), 1e-8}})
	{
		const EvalResult a = dphi_binomial(s, fx().ctx, {.tol = tol, .inner = InnerSum::series});
		const EvalResult b = dphi_binomial(s, fx().ctx, {.tol = tol, .inner = InnerSum::difference});
		CHECK(std::abs(a.value.c() - b.value.c()) <= a.err_bound + b.err_bound);
		CHECK(a.err_bound <= tol);
	}
	CHECK_THROWS_AS(dphi_binomial({0.8, 12}, fx().ctx, {.tol = 1e-8}), convergence_error);
}

TEST_CASE("binomial continues below sigma = 2")
{
	// D(s) = zeta(s-1) - zeta(s) G(s) has no singularity at s = 2: the poles cancel
	const EvalResult a = dphi_binomial(2, fx().ctx, {.tol = 1e-8});
	const EvalResult b = dphi_binomial(2.0001, fx().ctx, {.tol = 1e-8});
	CHECK(std::abs(a.value.c() - b.value.c()) < 1e-3);
	CHECK(std::isfinite(a.value.re));
}

TEST_CASE("three representations agree at random points")
{
	std::mt19937_64 rng(11);
	std::uniform_real_distribution<double> sig(2.05, 3.5), tt(-20, 20);
	for (int i = 0; i < 5; ++i)
	{
		const ComplexValue s(sig(rng), tt(rng));
		const EvalResult a = dphi_direct(s, fx().coeffs);
		const EvalResult b = dphi_convolution(s, 1'000'000, fx().ctx);
		const EvalResult c = dphi_binomial(s, fx().ctx);
		CHECK(std::abs(a.value.c() - b.value.c()) <= a.err_bound + b.err_bound);
		CHECK(std::abs(a.value.c() - c.value.c()) <= a.err_bound + c.err_bound);
		CHECK(std::abs(b.value.c() - c.value.c()) <= b.err_bound + c.err_bound);
		CHECK(std::abs(a.value.c() - c.value.c()) <= 1e-6);
	}
}

TEST_CASE("g_phi shifted and unshifted forms")
{
	const EvalResult a = g_phi({3, 2}, 1'000'000, fx().ctx, GForm::shifted);
	const EvalResult b = g_phi({3, 2}, 1'000'000, fx().ctx, GForm::unshifted);
	CHECK(a.err_bound < 1e-8);
	CHECK(std::isfinite(b.value.re));
	const EvalResult p = g_phi({3, 2}, 1000, fx().ctx, GForm::shifted, TailMode::plain);
	CHECK(std::abs(p.value.c() - a.value.c()) <= p.err_bound + a.err_bound);
	CHECK_THROWS_AS(g_phi(2, 1000, fx().ctx), convergence_error);
	CHECK_THROWS_AS(g_phi(3, 5, fx().ctx), domain_error);
}

TEST_CASE("direct tail model")
{
	const DirectTailModel m = fit_direct_tail(fx().coeffs, 1'000'000);
	CHECK(m.a == doctest::Approx(1 / zeta2));
	CHECK(m.rho > 0);
	CHECK(m.rho < 5);
	CHECK_THROWS(fit_direct_tail(fx().coeffs, 10));
}

TEST_CASE("residue constant at s = 1")
{
	const ResidueResult r = residue_constant(1e-6, fx().ctx);
	CHECK(r.formula == doctest::Approx(-0.833963598860900774).epsilon(1e-10));
	CHECK(r.laurent_residue == doctest::Approx(-0.132153506244233033).epsilon(1e-9));
	CHECK(r.leading == doctest::Approx(1 / zeta2));
	CHECK(r.err_bound < 1e-9);
	CHECK(r.n_max == 1'000'000);
	CHECK_THROWS_AS(residue_constant(1e-12, fx().ctx), domain_error);
}

TEST_CASE("pole probe")
{
	const PoleProbe at1 = pole_probe(1, 0.25, 64, fx().ctx, 1e-8);
	CHECK(at1.order_estimate == 2);
	CHECK(at1.moments.at(1).re == doctest::Approx(1 / zeta2).epsilon(1e-6));
	CHECK(at1.residue_estimate.re == doctest::Approx(-0.132153506244).epsilon(1e-5));
	const PoleProbe at2 = pole_probe(2, 0.25, 64, fx().ctx, 1e-8);
	CHECK(at2.order_estimate == 0);
	const PoleProbe mid = pole_probe(1.5, 0.25, 64, fx().ctx, 1e-8);
	CHECK(mid.order_estimate == 0);
	CHECK_THROWS_AS(pole_probe(1.25, 0.25, 64, fx().ctx), domain_error);  // circle through s = 1
	CHECK_THROWS_AS(pole_probe(1, 0.25, 8, fx().ctx), domain_error);
	CHECK_THROWS_AS(pole_probe(0.2, 0.25, 64, fx().ctx), domain_error);
}
