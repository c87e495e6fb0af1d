#pragma once

// Desk-scale checks of the asymptotic statements about S(x).  Every generator
// returns rows sorted by x; rows are computed independently (optionally on
// several threads) and assembled in a fixed order, so output is reproducible.

#include <cstdint>
#include <string>
#include <vector>

#include "ftl/arith.hpp"
#include "ftl/report.hpp"
#include "ftl/zeta.hpp"

namespace ftl {

struct ExperimentConfig
{
	unsigned threads = 1;
	bool include_timing = true;  // false writes elapsed_ms = 0 for byte-identical reruns
};

// exact = int_1^x S, predicted = x^2 log x/(2 zeta(2)), normalized_error = (exact - predicted)/x^2,
// ratio = exact/predicted (0 where predicted vanishes, i.e. x = 1).
std::vector<ReportRow> verify_main_theorem(std::vector<Rational> xs, const PhiCoeff& coeffs, const ExperimentConfig& cfg = {});

struct ConjectureRatio
{
	// exact = S(x), predicted = x log x/zeta(2), normalized_error = (exact - predicted)/x,
	// ratio = S(x) zeta(2)/(x log x)
	std::vector<ReportRow> pointwise;
	// exact = int_1^x S, predicted = x^2 log x/(2 zeta(2)), normalized_error = (exact - predicted)/x^2,
	// ratio = 2 zeta(2) int_1^x S/(x^2 log x)
	std::vector<ReportRow> averaged;
};
// Requires x > 1.
ConjectureRatio conjecture_ratio(std::vector<Rational> xs, const PhiCoeff& coeffs, const ExperimentConfig& cfg = {});

inline constexpr double bdhps_lower = 2629.0 / 4009.0 / zeta2;
inline constexpr double bdhps_upper = 2629.0 / 4009.0 / zeta2 + 1380.0 / 4009.0;

struct BdhpsReport
{
	// exact = S(x), predicted = lower constant * x log x, ratio = S(x)/(x log x),
	// normalized_error = (ratio - lower)/(upper - lower), inside the envelope iff in [0, 1]
	std::vector<ReportRow> rows;
	std::vector<std::string> violations;  // x values outside the envelope
};
// Requires x >= 3.
BdhpsReport bdhps_bounds(std::vector<Rational> xs, const TotientTable& table, const ExperimentConfig& cfg = {});

struct ScanResult
{
	std::uint64_t limit = 0;
	std::uint64_t extremal_n = 0;  // 0 when no Phi(n) < 0 occurs
	std::int64_t extremal_value = 0;
	double fitted_constant = 0.0;  // max over 3 <= n <= limit of -Phi(n)/log n
	bool doubtful = false;         // fitted constant above 10 within the range
	// running maximum at each power of two (and at limit): x = n, exact = fitted
	// constant so far, predicted = extremal n so far, ratio = constant / log n
	std::vector<ReportRow> checkpoints;
};
inline constexpr double phi_lower_doubt_threshold = 10.0;
ScanResult scan_phi_lower(std::uint64_t limit, const PhiCoeff& coeffs);

struct IncrementResult
{
	Rational x, h;
	Rational value;           // L = int_x^{x+h} (S(t) - S(x)) dt
	double over_h2_log = 0.0;  // L/(h^2 log x)
	double over_x2 = 0.0;      // L/x^2
};
// Requires 1 <= h < x and x > 1.
IncrementResult local_increment_L(const Rational& x, const Rational& h, const PhiCoeff& coeffs);

// Rows: exact = Re sum_{n <= x} phi(n) n^{-s}, predicted = Re of the two main terms,
// normalized_error = |difference|/(x^{1-sigma} log x), ratio = normalized_error over that of
// the previous row (1 for the first).  Requires sigma > 1, s != 2, x >= 2.
std::vector<ReportRow> apostol_check(ComplexValue s, std::vector<Rational> xs, const TotientTable& table,
                                     const ExperimentConfig& cfg = {});

// exact = sum_{n <= x} n(1 - n/x) - sum_{n <= x/2} n(1 - 2n/x), predicted = x^2/8,
// normalized_error = (exact - predicted)/x, ratio = exact/predicted.  Requires x >= 2.
ReportRow j31_identity(const Rational& x, const ExperimentConfig& cfg = {});
Rational j31_value(const Rational& x);

struct RieszResult
{
	double t_r = 0.0;       // sum_{n <= x} Phi(n) log(x/n)
	double integral = 0.0;  // int_1^x S(t)/t dt
	double predicted = 0.0;  // x log x/zeta(2)
	double ratio = 0.0;      // integral/predicted, 0 at x = 1
	double gap_over_x = 0.0;  // (integral - t_r)/x
	// exact = integral, predicted, normalized_error = gap_over_x, ratio
	ReportRow row;
};
RieszResult riesz_weighted(const Rational& x, const PhiCoeff& coeffs, const ExperimentConfig& cfg = {});

// Least-squares slope of ys against log xs.
double log_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace ftl
