#include <string>

#include "doctest.h"
#include "erasim/config.hpp"
#include "erasim/errors.hpp"

using namespace erasim;

namespace {

// Runs the parser and hands back the usage_error text (empty if it parsed).
std::string parse_failure(const std::string& text) {
    try {
        parse_config(text);
    } catch (const usage_error& e) {
        return e.what();
    }
    return {};
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("config") {
    TEST_CASE("minimal passive config picks the documented defaults") {
        const RunConfig config = parse_config("[run]\nexperiment = passive_ite\n");
        CHECK(config.experiment == "passive_ite");
        CHECK(config.backend == Backend::langevin);
        CHECK(config.bath.kbt == 1.0);
        CHECK(config.bath.gamma == 1.0);
        CHECK(config.potential.barrier_height == 10.0);
        CHECK(config.potential.well_halfwidth == 1.0);
        CHECK(config.n_trajectories == 10000);
        CHECK(config.master_seed == 1);
        CHECK(config.wait_multiplier == 20.0);
        CHECK(config.dt == 0.0);   // auto
        CHECK(config.tau0 == 0.0); // auto
        CHECK(config.resolved_initial_p1() == 1.0);
    }

    TEST_CASE("reset config parses typed values") {
        const RunConfig config = parse_config(
            "# driven reset\n"
            "[run]\n"
            "experiment = reset\n"
            "n = 500\n"
            "seed = 77\n"
            "out = custom.jsonl\n"
            "[bath]\n"
            "kbt = 2.0\n"
            "[potential]\n"
            "barrier_height = 6\n"
            "[protocol]\n"
            "duration = 40\n"
            "lower_fraction = 0.8\n"
            "tilt_peak = 9\n"
            "initial_p1 = 0.25\n"
            "[step]\n"
            "dt = 0.0005\n");
        CHECK(config.experiment == "reset");
        CHECK(config.n_trajectories == 500);
        CHECK(config.master_seed == 77);
        CHECK(config.out_path == "custom.jsonl");
        CHECK(config.bath.kbt == 2.0);
        CHECK(config.potential.barrier_height == 6.0);
        CHECK(config.duration == 40.0);
        CHECK(config.lower_fraction == 0.8);
        CHECK(config.tilt_peak == 9.0);
        CHECK(config.resolved_initial_p1() == 0.25);
        CHECK(config.dt == 0.0005);
    }

    TEST_CASE("reset default initial occupation is a fair coin") {
        const RunConfig config = parse_config("[run]\nexperiment = reset\n");
        CHECK(config.resolved_initial_p1() == 0.5);
    }

    TEST_CASE("unknown keys are named with their line") {
        const std::string msg = parse_failure(
            "[run]\n"
            "experiment = reset\n"
            "[potental]\n"
            "barrier_height = 4\n");
        CHECK(msg == "config line 4: unknown key potental.barrier_height");
    }

    TEST_CASE("misplaced and malformed lines are rejected") {
        CHECK(contains(parse_failure("experiment = reset\n"),
                       "appears before any [section] header"));
        CHECK(contains(parse_failure("[run\nexperiment = reset\n"),
                       "malformed section header"));
        CHECK(contains(parse_failure("[run]\nexperiment reset\n"), "expected key = value"));
        CHECK(contains(parse_failure("[run]\n= reset\n"), "empty key"));
        CHECK(contains(parse_failure("[run]\nexperiment = reset\nn = 2\nn = 3\n"),
                       "line 4: duplicate key run.n"));
        CHECK(contains(parse_failure(""), "missing required key run.experiment"));
        CHECK(contains(parse_failure("[run]\nexperiment = anneal\n"), "run.experiment"));
    }

    TEST_CASE("numeric fields reject junk") {
        CHECK(contains(parse_failure("[run]\nexperiment = reset\n[bath]\nkbt = warm\n"),
                       "not a finite number"));
        CHECK(contains(parse_failure("[run]\nexperiment = reset\n[bath]\nkbt = 1.2.3\n"),
                       "not a finite number"));
        CHECK(contains(parse_failure("[run]\nexperiment = reset\n[bath]\nkbt = inf\n"),
                       "not a finite number"));
        CHECK(contains(parse_failure("[run]\nexperiment = reset\nn = -5\n"),
                       "not a nonnegative integer"));
        CHECK(contains(parse_failure("[run]\nexperiment = reset\nn = 1\n"),
                       "run.n must be >= 2"));
    }

    TEST_CASE("lower_fraction bound names the control invariant it protects") {
        const std::string msg = parse_failure(
            "[run]\nexperiment = reset\n[protocol]\nlower_fraction = 1.5\n");
        CHECK(contains(msg, "lower_fraction"));
        CHECK(contains(msg, "barrier_scale"));
        CHECK(parse_failure("[run]\nexperiment = reset\n[protocol]\nlower_fraction = -0.1\n") !=
              "");
    }

    TEST_CASE("step size must be positive and stable") {
        CHECK(contains(parse_failure("[run]\nexperiment = reset\n[step]\ndt = -0.001\n"),
                       "step.dt must be positive"));
        CHECK(contains(parse_failure("[run]\nexperiment = reset\n[step]\ndt = 0.01\n"),
                       "dt"));  // past the 0.001 guard at the default barrier 10
        CHECK_NOTHROW(parse_config("[run]\nexperiment = reset\n[step]\ndt = 0.0009\n"));
    }

    TEST_CASE("experiment and backend must agree") {
        CHECK(contains(parse_failure("[run]\nexperiment = capacitor_ite\nbackend = langevin\n"),
                       "requires run.backend = capacitor"));
        CHECK(contains(parse_failure("[run]\nexperiment = reset\nbackend = two-state\n"),
                       "requires run.backend = langevin"));
        CHECK(contains(parse_failure("[run]\nexperiment = mfpt\nbackend = capacitor\n"),
                       "requires run.backend = langevin"));
        CHECK(contains(parse_failure("[run]\nexperiment = passive_ite\nbackend = capacitor\n"),
                       "langevin or two-state"));
        CHECK(contains(parse_failure("[run]\nexperiment = reset\nbackend = quantum\n"),
                       "run.backend"));
        // capacitor_ite defaults its backend instead of requiring the key.
        const RunConfig config = parse_config("[run]\nexperiment = capacitor_ite\n");
        CHECK(config.backend == Backend::capacitor);
        // two-state passive erasure is legal with both spellings.
        CHECK(parse_config("[run]\nexperiment = passive_ite\nbackend = two-state\n").backend ==
              Backend::two_state);
        CHECK(parse_config("[run]\nexperiment = passive_ite\nbackend = two_state\n").backend ==
              Backend::two_state);
    }

    TEST_CASE("capacitor settle must cover the transient") {
        CHECK(contains(parse_failure("[run]\nexperiment = capacitor_ite\n[protocol]\n"
                                     "settle_multiplier = 5\n"),
                       "settle_multiplier must be >= 10"));
    }

    TEST_CASE("sweep defaults fill in per experiment") {
        RunConfig mfpt = parse_config("[run]\nexperiment = mfpt\n");
        CHECK(mfpt.sweep_axis == "barrier");
        CHECK(mfpt.sweep_values == std::vector<double>{4, 5, 6, 7, 8});

        RunConfig evd = parse_config("[run]\nexperiment = error_vs_dissipation\n");
        CHECK(evd.sweep_axis == "duration");
        CHECK(evd.sweep_values == std::vector<double>{0.02, 0.0632, 0.2, 0.632, 2.0});

        RunConfig custom = parse_config(
            "[run]\nexperiment = mfpt\n[sweep]\naxis = barrier\nvalues = 3, 4.5, 6\n");
        CHECK(custom.sweep_values == std::vector<double>{3.0, 4.5, 6.0});
    }

    TEST_CASE("sweep constraints") {
        CHECK(contains(parse_failure("[run]\nexperiment = mfpt\n[sweep]\naxis = duration\n"),
                       "sweep.axis must be 'barrier'"));
        CHECK(contains(parse_failure("[run]\nexperiment = error_vs_dissipation\n[sweep]\n"
                                     "axis = barrier\n"),
                       "sweep.axis must be 'duration'"));
        CHECK(contains(parse_failure("[run]\nexperiment = mfpt\n[sweep]\naxis = barrier\n"
                                     "values = 5, 5\n"),
                       "strictly increasing"));
        CHECK(contains(parse_failure("[run]\nexperiment = mfpt\n[sweep]\naxis = barrier\n"
                                     "values = 6, 4\n"),
                       "strictly increasing"));
        CHECK(contains(parse_failure("[run]\nexperiment = mfpt\n[sweep]\naxis = barrier\n"
                                     "values = 4,, 6\n"),
                       "empty list entry"));
        CHECK(contains(parse_failure("[run]\nexperiment = reset\n[sweep]\naxis = duration\n"),
                       "only valid for mfpt and"));
    }

    TEST_CASE("comments, blank lines, and spacing are tolerated") {
        const RunConfig config = parse_config(
            "; file header\n"
            "\n"
            "[run]\n"
            "  experiment   =   reset  \n"
            "# trailing note\n"
            "\n"
            "[bath]\n"
            "kbt=0.5\n");
        CHECK(config.experiment == "reset");
        CHECK(config.bath.kbt == 0.5);
    }

    TEST_CASE("physical parameter validation still applies") {
        CHECK_THROWS_AS(parse_config("[run]\nexperiment = reset\n[bath]\nkbt = 0\n"),
                        usage_error);
        CHECK_THROWS_AS(parse_config("[run]\nexperiment = reset\n[bath]\ngamma = -1\n"),
                        usage_error);
        CHECK_THROWS_AS(
            parse_config("[run]\nexperiment = reset\n[potential]\nbarrier_height = 0\n"),
            usage_error);
        CHECK_THROWS_AS(
            parse_config("[run]\nexperiment = capacitor_ite\n[capacitor]\ncapacitance = 0\n"),
            usage_error);
        CHECK_THROWS_AS(parse_config("[run]\nexperiment = passive_ite\nbackend = two-state\n"
                                     "[two_state]\nrate = 0\n"),
                        usage_error);
        CHECK_THROWS_AS(
            parse_config("[run]\nexperiment = reset\n[protocol]\ninitial_p1 = 1.2\n"),
            usage_error);
        CHECK_THROWS_AS(
            parse_config("[run]\nexperiment = reset\n[protocol]\nduration = 0\n"),
            usage_error);
        CHECK_THROWS_AS(
            parse_config("[run]\nexperiment = mfpt\n[protocol]\nbudget_steps = 0\n"),
            usage_error);
    }

    TEST_CASE("missing config file is a usage error") {
        CHECK_THROWS_AS(load_config_file("/nonexistent/path/run.cfg"), usage_error);
    }
}
