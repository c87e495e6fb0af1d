#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ftl {

struct AcceptanceOptions
{
	std::uint64_t sieve_limit = 1'000'000;  // criteria 5, 7 and 8 need at least 10^6
	unsigned threads = 1;
	double perron_panel_tol = 1e-2;
	std::uint64_t seed = 20240601;  // random points of criterion 3
	std::vector<int> only;          // empty: all ten
};

struct CriterionResult
{
	int id = 0;
	std::string name;
	bool pass = false;
	std::string detail;
	double seconds = 0.0;
};

inline constexpr double published_residue = -0.8343893;

// Runs the acceptance criteria in order, printing one "PASS"/"FAIL" line per
// criterion to `out` as each finishes (when out is non-null).
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream* out);

std::string format_line(const CriterionResult& r);

}  // namespace ftl
