// Standalone self-check runner: one PASS/FAIL/INCONCLUSIVE line per
// criterion, exit 0 only when everything passes.

#include <iostream>

#include <CLI11.hpp>

#include "erasim/acceptance.hpp"

int main(int argc, char** argv) {
    CLI::App app{"erasim acceptance suite"};
    erasim::AcceptanceOptions options;
    app.add_flag("--quick", options.quick, "fast subset: a1, a4, a6");
    app.add_option("--seed", options.master_seed, "master seed");
    app.add_option("--workers", options.workers, "worker threads, 0 = all");
    app.add_option("--only", options.only, "run only these criteria");
    app.add_option("--out", options.out_path, "write criterion records to this file");
    CLI11_PARSE(app, argc, argv);

    try {
        const erasim::AcceptanceOutcome outcome = erasim::run_acceptance(options, std::cout);
        std::size_t passed = 0;
        for (const auto& result : outcome.results) {
            if (result.status == erasim::CriterionStatus::pass) ++passed;
        }
        std::cout << passed << "/" << outcome.results.size() << " criteria passed\n";
        return outcome.all_pass ? 0 : 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
