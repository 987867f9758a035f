#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace erasim {

// Bad call-level input: empty sample sets, mismatched sizes, out-of-range
// experiment parameters. Maps to CLI exit code 2.
class usage_error : public std::runtime_error {
public:
    explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

// A step was asked to operate outside its accuracy regime (e.g. the
// first-order jump propagator with rate*dt > 0.1). The caller must subdivide.
class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite state produced by an integrator. Carries enough context to
// replay the offending trajectory: (master seed, trajectory index, step).
class integration_blowup : public std::runtime_error {
public:
    integration_blowup(const std::string& what, std::uint64_t master_seed,
                       std::uint64_t trajectory_index, std::int64_t step)
        : std::runtime_error(what),
          master_seed(master_seed),
          trajectory_index(trajectory_index),
          step(step) {}

    std::uint64_t master_seed = 0;
    std::uint64_t trajectory_index = 0;
    std::int64_t step = -1;
};

}  // namespace erasim
