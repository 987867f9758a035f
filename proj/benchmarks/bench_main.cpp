// Times the OpenMP ensemble against the single-threaded reference and checks
// they agree bitwise, since the parallel path must never change results.

#include <chrono>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "erasim/harness.hpp"

using namespace erasim;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ensemble throughput benchmark"};
    std::size_t n = 2000;
    double duration = 20.0;
    double barrier = 4.0;
    std::uint64_t seed = 7;
    int workers = 0;
    app.add_option("--n", n, "trajectories");
    app.add_option("--duration", duration, "protocol duration");
    app.add_option("--barrier", barrier, "barrier height in kbt");
    app.add_option("--seed", seed, "master seed");
    app.add_option("--workers", workers, "threads for the parallel run, 0 = all");
    CLI11_PARSE(app, argc, argv);

    EnsembleSpec spec;
    spec.physics.backend = Backend::langevin;
    spec.physics.potential = {barrier, 1.0};
    spec.schedule = ProtocolSchedule::constant_hold({1.0, 0.0}, duration);
    spec.step.dt = default_step_dt(spec.physics.potential, spec.bath);
    spec.initial = {InitialKind::gibbs_in_well, 0.0, 0.5};
    spec.n_trajectories = n;

    const double steps = duration / spec.step.dt * static_cast<double>(n);

    auto start = std::chrono::steady_clock::now();
    const EnsembleStats serial = run_ensemble_serial(spec, seed);
    const double serial_s = seconds_since(start);

    start = std::chrono::steady_clock::now();
    const EnsembleStats parallel = run_ensemble(spec, seed, workers);
    const double parallel_s = seconds_since(start);

    const bool identical = serial.mean_work == parallel.mean_work &&
                           serial.stderr_work == parallel.stderr_work &&
                           serial.mean_heat_to_bath == parallel.mean_heat_to_bath &&
                           serial.stderr_heat_to_bath == parallel.stderr_heat_to_bath &&
                           serial.final_p1 == parallel.final_p1;

    std::printf("trajectories        %zu x %.0f steps\n", n, duration / spec.step.dt);
    std::printf("serial              %8.3f s  (%.2e steps/s)\n", serial_s, steps / serial_s);
    std::printf("openmp              %8.3f s  (%.2e steps/s, speedup %.2fx)\n", parallel_s,
                steps / parallel_s, serial_s / parallel_s);
    std::printf("bitwise identical   %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
