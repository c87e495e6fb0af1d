#include "ftl/report.hpp"

#include <ostream>

#include <fmt/format.h>

namespace ftl {

std::string format_real(double v) { return fmt::format("{:.12g}", v); }

std::string format_exact(const Rational& r) { return r.is_integer() ? to_string(r.num()) : r.to_decimal(18); }

namespace {

std::string csv_cell(const std::string& s)
{
	if (s.find_first_of(",\"\n") == std::string::npos) return s;
	std::string q = "\"";
	for (char c : s)
	{
		if (c == '"') q += '"';
		q += c;
	}
	return q + "\"";
}

std::string cell(const nlohmann::ordered_json& v)
{
	if (v.is_string()) return csv_cell(v.get<std::string>());
	if (v.is_number_float()) return format_real(v.get<double>());
	return csv_cell(v.dump());
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows)
{
	out << "x,exact,predicted,normalized_error,ratio,elapsed_ms\n";
	for (const auto& r : rows)
		out << csv_cell(r.x) << ',' << csv_cell(r.exact) << ',' << format_real(r.predicted) << ','
		    << format_real(r.normalized_error) << ',' << format_real(r.ratio) << ',' << format_real(r.elapsed_ms) << '\n';
}

// Numbers go out as the same 12-digit strings the CSV uses, so both formats
// carry identical data.
nlohmann::ordered_json to_json(const ReportRow& r)
{
	return {{"x", r.x},
	        {"exact", r.exact},
	        {"predicted", format_real(r.predicted)},
	        {"normalized_error", format_real(r.normalized_error)},
	        {"ratio", format_real(r.ratio)},
	        {"elapsed_ms", format_real(r.elapsed_ms)}};
}

nlohmann::ordered_json to_json(const std::vector<ReportRow>& rows)
{
	auto arr = nlohmann::ordered_json::array();
	for (const auto& r : rows) arr.push_back(to_json(r));
	return arr;
}

void write_record_csv(std::ostream& out, const nlohmann::ordered_json& record)
{
	bool first = true;
	for (const auto& [k, v] : record.items())
	{
		out << (first ? "" : ",") << csv_cell(k);
		first = false;
	}
	out << '\n';
	first = true;
	for (const auto& [k, v] : record.items())
	{
		out << (first ? "" : ",") << cell(v);
		first = false;
	}
	out << '\n';
}

}  // namespace ftl
