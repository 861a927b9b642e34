#pragma once

#include "core/simulation.hpp"

#include <span>
#include <string>
#include <vector>

namespace alertsim {

// Canonical JSON serialization for every externally visible record. Keys are
// camelCase and sorted, doubles render shortest-round-trip, so equal values
// always produce equal bytes.

std::string alert_to_json(const Alert& alert);
Alert alert_from_json(const std::string& text);
std::string shelter_to_json(const Shelter& shelter);
Shelter shelter_from_json(const std::string& text);

// One record per line.
std::string alerts_to_jsonl(std::span<const Alert> alerts);
std::vector<Alert> alerts_from_jsonl(const std::string& text);

std::string sim_config_to_json(const SimConfig& config);
// Missing fields take the baseline defaults; a "scenario.name" alone applies
// that preset before field overrides.
SimConfig sim_config_from_json(const std::string& text);

std::string metrics_report_to_json(const MetricsReport& report);
MetricsReport metrics_report_from_json(const std::string& text);

std::string run_result_to_json(const RunResult& result);
RunResult run_result_from_json(const std::string& text);

// Hex FNV-1a fingerprints over the canonical serializations.
std::string config_hash_hex(const SimConfig& config);
std::string stream_hash_hex(std::span<const Alert> alerts);

// Shortest round-trip decimal form (std::to_chars).
std::string format_double(double value);

// Timeline as CSV: time,cacheSize,hits,misses,hitRate.
std::string timeline_to_csv(const RunResult& result);

} // namespace alertsim
