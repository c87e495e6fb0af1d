// Runs every acceptance criterion and prints one PASS/FAIL line each.
#include <iostream>

#include <CLI11.hpp>

#include "ftl/acceptance.hpp"

int main(int argc, char** argv)
{
	ftl::AcceptanceOptions opt;
	CLI::App app{"acceptance criteria"};
	app.add_option("--sieve-limit", opt.sieve_limit);
	app.add_option("--threads", opt.threads);
	app.add_option("--only", opt.only)->delimiter(',');
	CLI11_PARSE(app, argc, argv);

	const auto results = ftl::run_acceptance(opt, &std::cout);
	int failed = 0;
	for (const auto& r : results) failed += !r.pass;
	std::cout << results.size() - failed << " of " << results.size() << " criteria passed\n";
	return failed ? 1 : 0;
}
