#include "erasim/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "erasim/errors.hpp"

namespace erasim {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
        --end;
    }
    return s.substr(begin, end - begin);
}

struct RawConfig {
    // key = "section.name", kept with the line it came from for messages
    std::map<std::string, std::pair<std::string, int>> entries;

    bool take(const std::string& key, std::string& out) {
        auto it = entries.find(key);
        if (it == entries.end()) {
            return false;
        }
        out = it->second.first;
        entries.erase(it);
        return true;
    }
};

RawConfig tokenize(const std::string& text) {
    RawConfig raw;
    std::istringstream stream(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') {
            continue;
        }
        if (t.front() == '[') {
            if (t.back() != ']' || t.size() < 3) {
                throw usage_error("config line " + std::to_string(line_no) +
                                  ": malformed section header '" + t + "'");
            }
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw usage_error("config line " + std::to_string(line_no) +
                              ": expected key = value, got '" + t + "'");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) {
            throw usage_error("config line " + std::to_string(line_no) + ": empty key");
        }
        if (section.empty()) {
            throw usage_error("config line " + std::to_string(line_no) + ": key '" + key +
                              "' appears before any [section] header");
        }
        const std::string path = section + "." + key;
        if (raw.entries.count(path)) {
            throw usage_error("config line " + std::to_string(line_no) + ": duplicate key " +
                              path);
        }
        raw.entries.emplace(path, std::make_pair(value, line_no));
    }
    return raw;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument("trailing characters");
        }
        if (!std::isfinite(v)) {
            throw std::invalid_argument("not finite");
        }
        return v;
    } catch (const std::exception&) {
        throw usage_error("config: " + key + " = '" + value + "' is not a finite number");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t v = 0;
    const auto* first = value.data();
    const auto* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw usage_error("config: " + key + " = '" + value +
                          "' is not a nonnegative integer");
    }
    return v;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::string item;
    std::istringstream stream(value);
    while (std::getline(stream, item, ',')) {
        const std::string t = trim(item);
        if (t.empty()) {
            throw usage_error("config: " + key + " has an empty list entry");
        }
        out.push_back(parse_double(key, t));
    }
    if (out.empty()) {
        throw usage_error("config: " + key + " must list at least one value");
    }
    return out;
}

Backend parse_backend(const std::string& value) {
    if (value == "langevin") {
        return Backend::langevin;
    }
    if (value == "two-state" || value == "two_state") {
        return Backend::two_state;
    }
    if (value == "capacitor") {
        return Backend::capacitor;
    }
    throw usage_error("config: run.backend = '" + value +
                      "' (expected langevin, two-state, or capacitor)");
}

}  // namespace

double RunConfig::resolved_initial_p1() const {
    if (initial_p1 >= 0.0) {
        return initial_p1;
    }
    return experiment == "passive_ite" ? 1.0 : 0.5;
}

RunConfig parse_config(const std::string& text) {
    RawConfig raw = tokenize(text);
    RunConfig config;
    std::string value;

    if (!raw.take("run.experiment", value)) {
        throw usage_error("config: missing required key run.experiment");
    }
    config.experiment = value;
    const bool known = config.experiment == "passive_ite" || config.experiment == "reset" ||
                       config.experiment == "capacitor_ite" || config.experiment == "mfpt" ||
                       config.experiment == "error_vs_dissipation";
    if (!known) {
        throw usage_error("config: run.experiment = '" + config.experiment +
                          "' (expected passive_ite, reset, capacitor_ite, mfpt, or "
                          "error_vs_dissipation)");
    }

    if (config.experiment == "capacitor_ite") {
        config.backend = Backend::capacitor;
    }
    if (raw.take("run.backend", value)) {
        config.backend = parse_backend(value);
    }
    if (raw.take("run.n", value)) {
        config.n_trajectories = parse_u64("run.n", value);
    }
    if (raw.take("run.seed", value)) {
        config.master_seed = parse_u64("run.seed", value);
    }
    if (raw.take("run.out", value)) {
        config.out_path = value;
    }

    if (raw.take("bath.kbt", value)) {
        config.bath.kbt = parse_double("bath.kbt", value);
    }
    if (raw.take("bath.gamma", value)) {
        config.bath.gamma = parse_double("bath.gamma", value);
    }
    if (raw.take("potential.barrier_height", value)) {
        config.potential.barrier_height = parse_double("potential.barrier_height", value);
    }
    if (raw.take("potential.well_halfwidth", value)) {
        config.potential.well_halfwidth = parse_double("potential.well_halfwidth", value);
    }
    if (raw.take("capacitor.capacitance", value)) {
        config.capacitor.capacitance = parse_double("capacitor.capacitance", value);
    }
    if (raw.take("capacitor.resistance", value)) {
        config.capacitor.resistance = parse_double("capacitor.resistance", value);
    }
    if (raw.take("capacitor.setpoint_voltage", value)) {
        config.capacitor.setpoint_voltage = parse_double("capacitor.setpoint_voltage", value);
    }
    if (raw.take("capacitor.switch_cost", value)) {
        config.capacitor.switch_cost = parse_double("capacitor.switch_cost", value);
    }
    if (raw.take("two_state.rate", value)) {
        config.two_state.rate = parse_double("two_state.rate", value);
    }
    if (raw.take("step.dt", value)) {
        config.dt = parse_double("step.dt", value);
        if (!(config.dt > 0.0)) {
            throw usage_error("config: step.dt must be positive, got " + value);
        }
    }
    if (raw.take("protocol.wait_multiplier", value)) {
        config.wait_multiplier = parse_double("protocol.wait_multiplier", value);
        if (!(config.wait_multiplier > 0.0)) {
            throw usage_error("config: protocol.wait_multiplier must be positive");
        }
    }
    if (raw.take("protocol.tau0", value)) {
        config.tau0 = parse_double("protocol.tau0", value);
        if (!(config.tau0 > 0.0)) {
            throw usage_error("config: protocol.tau0 must be positive");
        }
    }
    if (raw.take("protocol.duration", value)) {
        config.duration = parse_double("protocol.duration", value);
        if (!(config.duration > 0.0)) {
            throw usage_error("config: protocol.duration must be positive");
        }
    }
    if (raw.take("protocol.lower_fraction", value)) {
        config.lower_fraction = parse_double("protocol.lower_fraction", value);
        if (config.lower_fraction < 0.0 || config.lower_fraction > 1.0) {
            throw usage_error("config: protocol.lower_fraction must lie in [0, 1] (it maps to "
                              "the schedule's barrier_scale = 1 - lower_fraction)");
        }
    }
    if (raw.take("protocol.tilt_peak", value)) {
        config.tilt_peak = parse_double("protocol.tilt_peak", value);
    }
    if (raw.take("protocol.settle_multiplier", value)) {
        config.settle_multiplier = parse_double("protocol.settle_multiplier", value);
    }
    if (raw.take("protocol.initial_p1", value)) {
        config.initial_p1 = parse_double("protocol.initial_p1", value);
        if (config.initial_p1 < 0.0 || config.initial_p1 > 1.0) {
            throw usage_error("config: protocol.initial_p1 must lie in [0, 1]");
        }
    }
    if (raw.take("protocol.budget_steps", value)) {
        config.budget_steps = parse_u64("protocol.budget_steps", value);
        if (config.budget_steps == 0) {
            throw usage_error("config: protocol.budget_steps must be positive");
        }
    }
    if (raw.take("sweep.axis", value)) {
        config.sweep_axis = value;
    }
    if (raw.take("sweep.values", value)) {
        config.sweep_values = parse_double_list("sweep.values", value);
    }

    if (!raw.entries.empty()) {
        const auto& [key, where] = *raw.entries.begin();
        throw usage_error("config line " + std::to_string(where.second) + ": unknown key " + key);
    }

    validate_config(config);
    return config;
}

// Cross-field validation lives outside the parser so programmatically built
// configs go through the same gate. Fills in sweep defaults.
void validate_config(RunConfig& config) {
    const bool known = config.experiment == "passive_ite" || config.experiment == "reset" ||
                       config.experiment == "capacitor_ite" || config.experiment == "mfpt" ||
                       config.experiment == "error_vs_dissipation";
    if (!known) {
        throw usage_error("config: run.experiment = '" + config.experiment +
                          "' (expected passive_ite, reset, capacitor_ite, mfpt, or "
                          "error_vs_dissipation)");
    }
    config.bath.validate();
    config.potential.validate();
    config.capacitor.validate();
    config.two_state.validate();
    if (config.n_trajectories < 2) {
        throw usage_error("config: run.n must be >= 2");
    }
    if (config.experiment == "capacitor_ite" && config.backend != Backend::capacitor) {
        throw usage_error("config: capacitor_ite requires run.backend = capacitor");
    }
    if ((config.experiment == "reset" || config.experiment == "mfpt" ||
         config.experiment == "error_vs_dissipation") &&
        config.backend != Backend::langevin) {
        throw usage_error("config: " + config.experiment + " requires run.backend = langevin");
    }
    if (config.experiment == "passive_ite" && config.backend == Backend::capacitor) {
        throw usage_error("config: passive_ite requires run.backend = langevin or two-state");
    }
    if (config.experiment == "capacitor_ite" && !(config.settle_multiplier >= 10.0)) {
        throw usage_error("config: protocol.settle_multiplier must be >= 10");
    }
    if (config.backend == Backend::langevin && config.dt != 0.0) {
        StepParams step;
        step.dt = config.dt;
        check_langevin_stability(step, config.potential, config.bath);
    }
    const bool needs_sweep =
        config.experiment == "mfpt" || config.experiment == "error_vs_dissipation";
    if (needs_sweep) {
        const std::string expected_axis =
            config.experiment == "mfpt" ? "barrier" : "duration";
        if (config.sweep_axis.empty() && config.sweep_values.empty()) {
            // Defaults below; an explicit axis must still match.
        } else if (config.sweep_axis != expected_axis) {
            throw usage_error("config: sweep.axis must be '" + expected_axis + "' for " +
                              config.experiment);
        }
        if (config.sweep_values.empty()) {
            config.sweep_values = config.experiment == "mfpt"
                                      ? std::vector<double>{4, 5, 6, 7, 8}
                                      : std::vector<double>{0.02, 0.0632, 0.2, 0.632, 2.0};
        }
        config.sweep_axis = expected_axis;
        for (std::size_t i = 1; i < config.sweep_values.size(); ++i) {
            if (!(config.sweep_values[i] > config.sweep_values[i - 1])) {
                throw usage_error("config: sweep.values must be strictly increasing");
            }
        }
    } else if (!config.sweep_axis.empty() || !config.sweep_values.empty()) {
        throw usage_error("config: [sweep] keys are only valid for mfpt and "
                          "error_vs_dissipation");
    }
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw usage_error("config: cannot open file " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace erasim
