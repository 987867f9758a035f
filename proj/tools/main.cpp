#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "erasim/acceptance.hpp"
#include "erasim/config.hpp"
#include "erasim/errors.hpp"
#include "erasim/results.hpp"
#include "erasim/runner.hpp"
#include "erasim/version.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 0;
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "configuration file")->required();
    cmd->add_option("--seed", flags.seed, "master seed (overrides the config)")
        ->each([&flags](const std::string&) { flags.seed_set = true; });
    cmd->add_option("--workers", flags.workers, "worker threads, 0 = all (speed only, results "
                                                "are worker-count independent)");
    cmd->add_option("--out", flags.out_path, "output file (overrides the config)");
}

erasim::RunConfig load(const CommonFlags& flags) {
    erasim::RunConfig config = erasim::load_config_file(flags.config_path);
    if (flags.seed_set) config.master_seed = flags.seed;
    if (!flags.out_path.empty()) config.out_path = flags.out_path;
    if (config.out_path.empty()) config.out_path = "results.jsonl";
    return config;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw erasim::usage_error("cannot open output file " + path);
    out << text;
    if (!out) throw erasim::usage_error("failed writing output file " + path);
}

// Shared by run and sweep; they differ only in which experiments they accept.
int execute(const CommonFlags& flags, bool sweep_command) {
    const erasim::RunConfig config = load(flags);
    if (erasim::is_sweep_experiment(config.experiment) != sweep_command) {
        throw erasim::usage_error(
            sweep_command
                ? "sweep: experiment '" + config.experiment + "' has no axis; use `run`"
                : "run: experiment '" + config.experiment + "' scans an axis; use `sweep`");
    }
    const erasim::RunOutput output = erasim::run_experiment(config, flags.workers);
    write_file(config.out_path, erasim::to_jsonl(output.records));
    std::cout << erasim::to_table(output.records);
    std::cout << "wrote " << output.records.size() << " record(s) to " << config.out_path << "\n";
    if (output.mfpt && output.mfpt->inconclusive) {
        std::cout << "fit inconclusive: too few crossings within the step budget\n";
        return 4;
    }
    return 0;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw erasim::usage_error("cannot open result file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"memory-erasure thermodynamics simulator"};
    app.set_version_flag("--version", erasim::kVersion);
    app.require_subcommand(1);

    CommonFlags run_flags;
    CLI::App* run_cmd = app.add_subcommand("run", "execute one experiment and persist records");
    add_common(run_cmd, run_flags);

    CommonFlags sweep_flags;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "execute a grid experiment and persist one record per point");
    add_common(sweep_cmd, sweep_flags);

    erasim::AcceptanceOptions validate_options;
    CLI::App* validate_cmd =
        app.add_subcommand("validate", "run the built-in self-check suite");
    validate_cmd->add_flag("--quick", validate_options.quick,
                           "fast subset: a1, a4, a6 (skips the rerun comparison)");
    validate_cmd->add_option("--seed", validate_options.master_seed, "master seed");
    validate_cmd->add_option("--workers", validate_options.workers,
                             "worker threads, 0 = all");
    validate_cmd->add_option("--out", validate_options.out_path,
                             "write all criterion records to this file");
    validate_cmd->add_option("--only", validate_options.only,
                             "run only these criteria (e.g. --only a1 --only a5)");

    std::string report_path;
    std::string report_format = "full";
    CLI::App* report_cmd = app.add_subcommand("report", "render a persisted result file");
    report_cmd->add_option("file", report_path, "JSONL result file")->required();
    report_cmd->add_option("--format", report_format, "table | csv | plot (default: table plus "
                                                      "plot columns)")
        ->check(CLI::IsMember({"table", "csv", "plot", "full"}));

    try {
        app.parse(argc, argv);

        if (*run_cmd) return execute(run_flags, false);
        if (*sweep_cmd) return execute(sweep_flags, true);
        if (*validate_cmd) {
            const erasim::AcceptanceOutcome outcome =
                erasim::run_acceptance(validate_options, std::cout);
            return outcome.all_pass ? 0 : 4;
        }
        if (*report_cmd) {
            const auto records = erasim::parse_jsonl(read_file(report_path));
            if (report_format == "table") {
                std::cout << erasim::to_table(records);
            } else if (report_format == "csv") {
                std::cout << erasim::to_csv(records);
            } else if (report_format == "plot") {
                std::cout << erasim::to_plot(records);
            } else {
                std::cout << erasim::to_table(records) << "\n" << erasim::to_plot(records);
            }
            return 0;
        }
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;  // --help and --version exit 0
    } catch (const erasim::integration_blowup& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const erasim::precision_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const erasim::usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
