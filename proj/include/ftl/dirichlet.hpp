#pragma once

// D(s) = sum_{n >= 1} Phi(n) n^{-s} through three independent routes:
//
//   direct       the series itself (sigma > 2)
//   convolution  zeta(s-1) - zeta(s) G(s),  G(s) = sum_{n >= 1} phi(n-1) n^{-s}
//   binomial     s zeta(s)^2/zeta(s+1) - zeta(s)(s + 2^{-s}) - zeta(s) sum_{n >= 2} phi(n) g_s(n),
//                g_s(n) = sum_{k >= 2} (-1)^k C(s+k-1, k) n^{-s-k}  (valid for sigma > 0)
//
// Truncated phi-sums are finished with a smooth tail: sum_{n > N} phi(n) g(n) is
// replaced by (6/pi^2) int_N^inf u g(u) du - R(N) g(N), with R(u) = sum_{n <= u} phi(n) - 3u^2/pi^2.
// The neglected part is at most rho int_N^inf u |g'(u)| du, where rho bounds |R(u)|/u.

#include <cstdint>
#include <vector>

#include "ftl/arith.hpp"
#include "ftl/zeta.hpp"

namespace ftl {

// Empirical error model of the totient summatory function, measured once per table.
class SeriesContext
{
public:
	explicit SeriesContext(const TotientTable& table);

	const TotientTable& table() const { return *table_; }
	std::uint64_t limit() const { return table_->limit(); }

	// R(N) = sum_{n <= N} phi(n) - 3N^2/pi^2
	double remainder(std::uint64_t n) const;
	// Bound on |R(u)|/u for u >= n: the largest dyadic-level maximum from the level
	// below n upward, doubled to cover the unmeasured range beyond the table.
	double rho(std::uint64_t n) const;

	// Smallest prime factor of 2 <= n <= limit, for building n^{-s} multiplicatively.
	std::uint32_t spf(std::uint64_t n) const { return spf_[n]; }

private:
	const TotientTable* table_;
	std::vector<double> level_max_;  // max |R(u)|/u over u in [2^l, 2^{l+1})
	std::vector<std::uint32_t> spf_;
};

enum class TailMode { plain, accelerated };

// G(s) = 1 + sum_{n >= 1} phi(n) (n+1)^{-s}, summed to n <= N.  Requires sigma > 2.
enum class GForm { shifted, unshifted };
EvalResult g_phi(ComplexValue s, std::uint64_t n_max, const SeriesContext& ctx, GForm form = GForm::shifted,
                 TailMode tail = TailMode::accelerated);

struct DirectOptions
{
	std::uint64_t n_max = 0;  // 0: the whole coefficient table
	TailMode tail = TailMode::accelerated;
};

// Partial sums of Phi modelled as a u log u + c u with a = 1/zeta(2); c and the
// bound on the residual |E(u)|/u are fitted on [N/2, N].
struct DirectTailModel
{
	std::uint64_t n = 0;
	double a = 0.0;
	double c = 0.0;
	double rho = 0.0;
};
DirectTailModel fit_direct_tail(const PhiCoeff& coeffs, std::uint64_t n);

EvalResult dphi_direct(ComplexValue s, const PhiCoeff& coeffs, const DirectOptions& options = {});
EvalResult dphi_direct(ComplexValue s, const PhiCoeff& coeffs, const DirectTailModel& model, const DirectOptions& options);

EvalResult dphi_convolution(ComplexValue s, std::uint64_t n_max, const SeriesContext& ctx, double tol = 1e-12);

// How the inner sum g_s(n) = sum_{k >= 2} (-1)^k C(s+k-1, k) n^{-s-k} is evaluated:
// term by term through the coefficient recurrence, or through its closed form
// (n+1)^{-s} - n^{-s} + s n^{-s-1} using a table of powers built from prime factors.
enum class InnerSum { series, difference };

struct BinomialOptions
{
	std::uint64_t n_max = 0;  // outer cutoff; 0 picks the smallest N meeting tol
	int k_max = 64;           // inner cutoff per n (series mode)
	double tol = 1e-10;
	InnerSum inner = InnerSum::difference;
};

// Throws pole_error at s = 1 and convergence_error when tol cannot be met with the
// table at hand (or the inner series needs more than k_max terms).
EvalResult dphi_binomial(ComplexValue s, const SeriesContext& ctx, const BinomialOptions& options = {});

struct ResidueResult
{
	double formula = 0.0;          // (zeta(2) - zeta'(2))/zeta(2)^2 - 1 - sum phi(n)/(n^2 (n+1))
	double laurent_residue = 0.0;  // formula + 2 gamma/zeta(2), the coefficient of (s-1)^{-1}
	double leading = 0.0;          // 1/zeta(2), the coefficient of (s-1)^{-2}
	double closed_part = 0.0;
	double series = 0.0;
	double err_bound = 0.0;
	std::uint64_t n_max = 0;
};

ResidueResult residue_constant(double tol, const SeriesContext& ctx);

struct PoleProbe
{
	ComplexValue center;
	double radius = 0.0;
	int nodes = 0;
	int order_estimate = 0;
	ComplexValue residue_estimate;
	std::vector<ComplexValue> moments;  // c_m, estimating the coefficient of (s-center)^{-m-1}
	double noise_floor = 0.0;
	double max_abs = 0.0;
};

PoleProbe pole_probe(ComplexValue center, double radius, int nodes, const SeriesContext& ctx, double tol = 1e-10);

}  // namespace ftl
