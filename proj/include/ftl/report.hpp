#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ftl/rational.hpp"

namespace ftl {

// One experiment record.  `x` and `exact` keep their exact decimal rendering
// for output; the *_value fields hold the same numbers as doubles for checks.
struct ReportRow
{
	std::string x;
	std::string exact;
	double predicted = 0.0;
	double normalized_error = 0.0;
	double ratio = 0.0;
	double elapsed_ms = 0.0;

	double x_value = 0.0;
	double exact_value = 0.0;
};

inline const char* const report_columns[] = {"x", "exact", "predicted", "normalized_error", "ratio", "elapsed_ms"};

// 12 significant digits
std::string format_real(double v);
// integers verbatim, other rationals truncated after 18 digits with '~' when inexact
std::string format_exact(const Rational& r);

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows);
nlohmann::ordered_json to_json(const ReportRow& row);
nlohmann::ordered_json to_json(const std::vector<ReportRow>& rows);

// Flat key/value records (for commands that do not produce rows): CSV gets a
// header of keys and one line of values, JSON the object itself.
void write_record_csv(std::ostream& out, const nlohmann::ordered_json& record);

}  // namespace ftl
