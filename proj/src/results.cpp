#include "erasim/results.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "erasim/errors.hpp"
#include "erasim/version.hpp"

namespace erasim {
namespace {

const char* backend_name(Backend backend) {
    switch (backend) {
        case Backend::langevin: return "langevin";
        case Backend::capacitor: return "capacitor";
        case Backend::two_state: return "two-state";
    }
    return "langevin";
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

// Pulls a stable-field value out of a record for the flat renderers.
std::string csv_cell(const nlohmann::ordered_json& record, const char* key) {
    if (!record.contains(key) || record.at(key).is_null()) {
        return (std::string(key) == "experiment" || std::string(key) == "verdict") ? "" : "nan";
    }
    const auto& value = record.at(key);
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_float()) return format_double(value.get<double>());
    std::ostringstream out;
    out << value;
    return out.str();
}

}  // namespace

nlohmann::ordered_json config_to_json(const RunConfig& config) {
    nlohmann::ordered_json j;
    j["experiment"] = config.experiment;
    j["backend"] = backend_name(config.backend);
    j["n"] = config.n_trajectories;
    j["seed"] = config.master_seed;
    j["bath"] = {{"kbt", config.bath.kbt}, {"gamma", config.bath.gamma}};
    j["potential"] = {{"barrier_height", config.potential.barrier_height},
                      {"well_halfwidth", config.potential.well_halfwidth}};
    j["capacitor"] = {{"capacitance", config.capacitor.capacitance},
                      {"resistance", config.capacitor.resistance},
                      {"setpoint_voltage", config.capacitor.setpoint_voltage},
                      {"switch_cost", config.capacitor.switch_cost}};
    j["two_state"] = {{"rate", config.two_state.rate}};
    j["step"] = {{"dt", config.dt}};
    j["protocol"] = {{"wait_multiplier", config.wait_multiplier},
                     {"tau0", config.tau0},
                     {"duration", config.duration},
                     {"lower_fraction", config.lower_fraction},
                     {"tilt_peak", config.tilt_peak},
                     {"settle_multiplier", config.settle_multiplier},
                     {"initial_p1", config.resolved_initial_p1()},
                     {"budget_steps", config.budget_steps}};
    j["sweep"] = {{"axis", config.sweep_axis}, {"values", config.sweep_values}};
    return j;
}

nlohmann::ordered_json make_record(const std::string& experiment, std::uint64_t seed,
                                   std::size_t n, const EnsembleStats* stats,
                                   const ErasureReport* report,
                                   const std::optional<std::pair<std::string, double>>& axis,
                                   const nlohmann::ordered_json& config_json) {
    nlohmann::ordered_json j;
    j["experiment"] = experiment;
    j["seed"] = seed;
    j["n"] = n;
    if (stats != nullptr) {
        j["mean_work"] = stats->mean_work;
        j["stderr_work"] = stats->stderr_work;
        j["mean_heat"] = stats->mean_heat_to_bath;
        j["stderr_heat"] = stats->stderr_heat_to_bath;
        j["final_p1"] = stats->final_p1 ? nlohmann::ordered_json(*stats->final_p1)
                                        : nlohmann::ordered_json(nullptr);
        j["stderr_p1"] = stats->stderr_final_p1 ? nlohmann::ordered_json(*stats->stderr_final_p1)
                                                : nlohmann::ordered_json(nullptr);
        j["error_prob"] = stats->error_probability
                              ? nlohmann::ordered_json(*stats->error_probability)
                              : nlohmann::ordered_json(nullptr);
    } else {
        j["mean_work"] = nullptr;
        j["stderr_work"] = nullptr;
        j["mean_heat"] = nullptr;
        j["stderr_heat"] = nullptr;
        j["final_p1"] = nullptr;
        j["stderr_p1"] = nullptr;
        j["error_prob"] = nullptr;
    }
    if (report != nullptr) {
        j["delta_s_info_bits"] = report->delta_s_info_bits;
        j["landauer_min_heat"] = report->landauer_min_heat;
        j["verdict"] = to_string(report->verdict);
    } else {
        j["delta_s_info_bits"] = nullptr;
        j["landauer_min_heat"] = nullptr;
        j["verdict"] = nullptr;
    }
    if (axis) {
        j["axis"] = axis->first;
        j["axis_value"] = axis->second;
    }
    j["config"] = config_json;
    j["version"] = kVersion;
    return j;
}

std::string to_jsonl(const std::vector<nlohmann::ordered_json>& records) {
    std::string out;
    for (const auto& record : records) {
        out += record.dump();
        out += '\n';
    }
    return out;
}

std::vector<nlohmann::ordered_json> parse_jsonl(const std::string& text) {
    std::vector<nlohmann::ordered_json> records;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            records.push_back(nlohmann::ordered_json::parse(line));
        } catch (const nlohmann::json::parse_error& e) {
            throw usage_error("result line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!records.back().is_object()) {
            throw usage_error("result line " + std::to_string(line_no) + ": not a record object");
        }
    }
    return records;
}

std::string to_csv(const std::vector<nlohmann::ordered_json>& records) {
    static const char* kColumns[] = {"experiment",  "seed",       "n",
                                     "mean_work",   "stderr_work", "mean_heat",
                                     "stderr_heat", "final_p1",    "stderr_p1",
                                     "error_prob",  "delta_s_info_bits",
                                     "landauer_min_heat", "verdict"};
    std::string out;
    bool first = true;
    for (const char* column : kColumns) {
        if (!first) out += ',';
        out += column;
        first = false;
    }
    out += '\n';
    for (const auto& record : records) {
        first = true;
        for (const char* column : kColumns) {
            if (!first) out += ',';
            out += csv_cell(record, column);
            first = false;
        }
        out += '\n';
    }
    return out;
}

std::string to_table(const std::vector<nlohmann::ordered_json>& records) {
    std::ostringstream out;
    char line[512];
    std::snprintf(line, sizeof(line), "%-22s %-10s %8s %12s %12s %10s %10s %-15s\n", "experiment",
                  "axis", "n", "mean_work", "mean_heat", "final_p1", "error", "verdict");
    out << line;
    for (const auto& record : records) {
        std::string axis = "-";
        if (record.contains("axis_value") && !record.at("axis_value").is_null()) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.4g", record.at("axis_value").get<double>());
            axis = buf;
        }
        auto number = [&record](const char* key) -> std::string {
            if (!record.contains(key) || record.at(key).is_null()) return "-";
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.5g", record.at(key).get<double>());
            return buf;
        };
        std::string verdict = "-";
        if (record.contains("verdict") && record.at("verdict").is_string()) {
            verdict = record.at("verdict").get<std::string>();
        }
        std::string n_text = "-";
        if (record.contains("n") && record.at("n").is_number()) {
            n_text = std::to_string(record.at("n").get<std::uint64_t>());
        }
        std::snprintf(line, sizeof(line), "%-22s %-10s %8s %12s %12s %10s %10s %-15s\n",
                      record.value("experiment", std::string("-")).c_str(), axis.c_str(),
                      n_text.c_str(), number("mean_work").c_str(), number("mean_heat").c_str(),
                      number("final_p1").c_str(), number("error_prob").c_str(), verdict.c_str());
        out << line;
    }
    return out.str();
}

std::string to_plot(const std::vector<nlohmann::ordered_json>& records) {
    // First-passage sweeps carry their own columns; everything else plots the
    // energy ledger against the sweep axis (or the record index).
    bool mfpt_style = false;
    for (const auto& record : records) {
        if (record.contains("mean_fpt")) {
            mfpt_style = true;
            break;
        }
    }
    std::string out;
    auto cell = [](const nlohmann::ordered_json& record, const char* key) -> std::string {
        if (!record.contains(key) || record.at(key).is_null()) return "nan";
        return format_double(record.at(key).get<double>());
    };
    if (mfpt_style) {
        out += "# barrier mean_fpt stderr_fpt tau0 ln_mfpt_over_tau0 ln_err\n";
        for (const auto& record : records) {
            if (!record.contains("mean_fpt") || record.at("mean_fpt").is_null()) continue;
            const double mean = record.at("mean_fpt").get<double>();
            const double se = record.at("stderr_fpt").get<double>();
            const double tau0 = record.at("tau0").get<double>();
            out += cell(record, "axis_value") + ' ' + cell(record, "mean_fpt") + ' ' +
                   cell(record, "stderr_fpt") + ' ' + cell(record, "tau0") + ' ' +
                   format_double(std::log(mean / tau0)) + ' ' + format_double(se / mean) + '\n';
        }
        return out;
    }
    out += "# axis_value mean_work stderr_work mean_heat stderr_heat error_prob\n";
    std::size_t index = 0;
    for (const auto& record : records) {
        std::string axis;
        if (record.contains("axis_value") && !record.at("axis_value").is_null()) {
            axis = format_double(record.at("axis_value").get<double>());
        } else {
            axis = std::to_string(index);
        }
        out += axis + ' ' + cell(record, "mean_work") + ' ' + cell(record, "stderr_work") + ' ' +
               cell(record, "mean_heat") + ' ' + cell(record, "stderr_heat") + ' ' +
               cell(record, "error_prob") + '\n';
        ++index;
    }
    return out;
}

}  // namespace erasim
