#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "erasim/config.hpp"
#include "erasim/ensemble.hpp"
#include "erasim/entropy.hpp"

namespace erasim {

// Resolved configuration as embedded in every persisted record: auto fields
// (dt, tau0, tilt_peak, initial_p1) are materialized so the record alone
// reproduces the run.
nlohmann::ordered_json config_to_json(const RunConfig& config);

// One line-delimited record with the stable field set (experiment, seed, n,
// mean_work, stderr_work, mean_heat, stderr_heat, final_p1, stderr_p1,
// error_prob, delta_s_info_bits, landauer_min_heat, verdict), optional sweep
// axis fields, the resolved config, and the artifact version. Absent
// quantities are null.
nlohmann::ordered_json make_record(const std::string& experiment, std::uint64_t seed,
                                   std::size_t n, const EnsembleStats* stats,
                                   const ErasureReport* report,
                                   const std::optional<std::pair<std::string, double>>& axis,
                                   const nlohmann::ordered_json& config_json);

std::string to_jsonl(const std::vector<nlohmann::ordered_json>& records);
std::vector<nlohmann::ordered_json> parse_jsonl(const std::string& text);

// CSV with a header row, the stable fields in documented order, and floats
// at 17 significant digits (round-trip exact). Missing numerics render as
// nan, missing strings as empty.
std::string to_csv(const std::vector<nlohmann::ordered_json>& records);

// Human-readable alignment of the headline numbers.
std::string to_table(const std::vector<nlohmann::ordered_json>& records);

// Whitespace-separated numeric columns (with a # header) for direct use by
// plotting tools; the column set adapts to the record kind.
std::string to_plot(const std::vector<nlohmann::ordered_json>& records);

}  // namespace erasim
