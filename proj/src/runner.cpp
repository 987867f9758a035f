#include "erasim/runner.hpp"

#include <utility>

#include "erasim/dynamics.hpp"
#include "erasim/errors.hpp"
#include "erasim/version.hpp"

namespace erasim {
namespace {

// Materializes every auto field so the embedded config reproduces the run
// without knowledge of the defaults.
RunConfig resolve(const RunConfig& config) {
    RunConfig r = config;
    if (r.experiment == "passive_ite") {
        if (r.backend == Backend::langevin) {
            if (r.dt == 0.0) r.dt = default_step_dt(r.potential, r.bath);
            if (r.tau0 == 0.0) r.tau0 = quartic_kramers_prefactor(r.potential, r.bath);
        } else {
            if (r.dt == 0.0) r.dt = 0.05 / r.two_state.rate;
            if (r.tau0 == 0.0) r.tau0 = 1.0 / r.two_state.rate;
        }
    } else if (r.experiment == "reset" || r.experiment == "error_vs_dissipation") {
        if (r.dt == 0.0) r.dt = default_step_dt(r.potential, r.bath);
        if (r.tilt_peak == 0.0) r.tilt_peak = 2.0 * r.potential.barrier_height;
    } else if (r.experiment == "capacitor_ite") {
        if (r.dt == 0.0) r.dt = r.settle_multiplier * r.capacitor.rc() / 8.0;
    } else if (r.experiment == "mfpt") {
        // dt varies per barrier height; the guard fraction is what is fixed.
        r.dt = config.dt;
    }
    return r;
}

RunOutput run_passive_ite(const RunConfig& config, int workers) {
    PassiveIteParams params;
    params.potential = config.potential;
    params.bath = config.bath;
    params.tau0 = AttemptTime{config.tau0};
    params.wait_multiplier = config.wait_multiplier;
    params.initial_p1 = config.resolved_initial_p1();
    params.dt = config.dt;
    params.n_trajectories = config.n_trajectories;
    params.backend = config.backend;
    params.two_state = config.two_state;

    RunOutput out;
    out.experiment = passive_ite_experiment(params, config.master_seed, workers);
    out.records.push_back(make_record(config.experiment, config.master_seed,
                                      config.n_trajectories, &out.experiment->stats,
                                      &out.experiment->report, std::nullopt,
                                      config_to_json(config)));
    return out;
}

RunOutput run_reset(const RunConfig& config, int workers) {
    ResetParams params;
    params.potential = config.potential;
    params.bath = config.bath;
    params.duration = config.duration;
    params.lower_fraction = config.lower_fraction;
    params.tilt_peak = config.tilt_peak;
    params.initial_p1 = config.resolved_initial_p1();
    params.dt = config.dt;
    params.n_trajectories = config.n_trajectories;

    RunOutput out;
    out.experiment = reset_experiment(params, config.master_seed, workers);
    out.records.push_back(make_record(config.experiment, config.master_seed,
                                      config.n_trajectories, &out.experiment->stats,
                                      &out.experiment->report, std::nullopt,
                                      config_to_json(config)));
    return out;
}

RunOutput run_capacitor_ite(const RunConfig& config, int workers) {
    RunOutput out;
    out.experiment = capacitor_experiment(config.capacitor, config.bath,
                                          config.settle_multiplier, config.n_trajectories,
                                          config.master_seed, workers);
    out.records.push_back(make_record(config.experiment, config.master_seed,
                                      config.n_trajectories, &out.experiment->stats,
                                      &out.experiment->report, std::nullopt,
                                      config_to_json(config)));
    return out;
}

RunOutput run_mfpt(const RunConfig& config, int workers) {
    MfptParams params;
    params.barriers = config.sweep_values;
    params.potential = config.potential;
    params.bath = config.bath;
    params.n_per_point = config.n_trajectories;
    params.budget_steps = config.budget_steps;

    RunOutput out;
    out.mfpt = mfpt_experiment(params, config.master_seed, workers);
    const auto config_json = config_to_json(config);
    for (const MfptRow& row : out.mfpt->rows) {
        auto record = make_record("mfpt", config.master_seed, row.n_total, nullptr, nullptr,
                                  std::make_pair(std::string("barrier"), row.barrier),
                                  config_json);
        // Splice the passage-time fields in ahead of the config block.
        nlohmann::ordered_json augmented;
        for (auto it = record.begin(); it != record.end(); ++it) {
            if (it.key() == "config") {
                augmented["mean_fpt"] = row.inconclusive ? nlohmann::ordered_json(nullptr)
                                                         : nlohmann::ordered_json(row.mean_fpt);
                augmented["stderr_fpt"] = row.inconclusive
                                              ? nlohmann::ordered_json(nullptr)
                                              : nlohmann::ordered_json(row.stderr_fpt);
                augmented["tau0"] = row.tau0;
                augmented["n_crossed"] = row.n_crossed;
                augmented["inconclusive"] = row.inconclusive;
            }
            augmented[it.key()] = it.value();
        }
        out.records.push_back(std::move(augmented));
    }
    nlohmann::ordered_json fit;
    fit["experiment"] = "mfpt_fit";
    fit["seed"] = config.master_seed;
    fit["inconclusive"] = out.mfpt->inconclusive;
    if (out.mfpt->inconclusive) {
        fit["slope"] = nullptr;
        fit["intercept"] = nullptr;
        fit["slope_stderr"] = nullptr;
    } else {
        fit["slope"] = out.mfpt->fit.slope;
        fit["intercept"] = out.mfpt->fit.intercept;
        fit["slope_stderr"] = out.mfpt->fit.slope_stderr;
    }
    fit["config"] = config_json;
    fit["version"] = kVersion;
    out.records.push_back(std::move(fit));
    return out;
}

RunOutput run_error_vs_dissipation(const RunConfig& config, int workers) {
    ErrorVsDissipationParams params;
    params.durations = config.sweep_values;
    params.reset.potential = config.potential;
    params.reset.bath = config.bath;
    params.reset.lower_fraction = config.lower_fraction;
    params.reset.tilt_peak = config.tilt_peak;
    params.reset.initial_p1 = config.resolved_initial_p1();
    params.reset.dt = config.dt;
    params.reset.n_trajectories = config.n_trajectories;

    RunOutput out;
    out.sweep = error_vs_dissipation_experiment(params, config.master_seed, workers);
    const auto config_json = config_to_json(config);
    for (const SweepRow& row : out.sweep->rows) {
        out.records.push_back(make_record(config.experiment, config.master_seed,
                                          config.n_trajectories, &row.stats, nullptr,
                                          std::make_pair(out.sweep->axis, row.axis_value),
                                          config_json));
    }
    return out;
}

}  // namespace

bool is_sweep_experiment(const std::string& experiment) {
    return experiment == "mfpt" || experiment == "error_vs_dissipation";
}

RunOutput run_experiment(const RunConfig& config, int workers) {
    RunConfig checked = config;
    validate_config(checked);
    const RunConfig resolved = resolve(checked);
    if (resolved.experiment == "passive_ite") return run_passive_ite(resolved, workers);
    if (resolved.experiment == "reset") return run_reset(resolved, workers);
    if (resolved.experiment == "capacitor_ite") return run_capacitor_ite(resolved, workers);
    if (resolved.experiment == "mfpt") return run_mfpt(resolved, workers);
    if (resolved.experiment == "error_vs_dissipation") {
        return run_error_vs_dissipation(resolved, workers);
    }
    throw usage_error("unknown experiment: " + resolved.experiment);
}

}  // namespace erasim
