#pragma once

#include "core/simulation.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace alertsim {

// One persisted run. Records are immutable once written; `config` is always
// stored so a metrics-only record can be re-executed, and `full_results`
// optionally embeds the entire run for instant replay.
struct RunRecord {
    std::string id;
    std::string scenario;
    std::string policy;
    std::string seed_text;
    std::uint32_t derived_seed = 0;
    std::uint32_t replicate = 0;
    std::int64_t timestamp = 0; // unix seconds at log time
    MetricsReport metrics;
    std::uint64_t samples_count = 0;
    std::optional<std::string> experiment_name;
    std::optional<std::string> notes;
    SimConfig config;
    std::optional<RunResult> full_results;

    bool operator==(const RunRecord&) const = default;
};

std::string run_record_to_json(const RunRecord& record);
RunRecord run_record_from_json(const std::string& text);

struct RunFilter {
    std::optional<std::string> scenario;
    std::optional<std::string> policy;
    std::optional<std::string> experiment_name;
};

// Append-only run history in <dir>/runs.jsonl with an in-memory index built
// on open. Appends take an exclusive advisory lock, so a single writer and
// any number of readers can share the directory.
class RunStore {
public:
    explicit RunStore(std::string directory);

    // Appends durably and returns the stored id. Assigns a sequential id
    // when record.id is empty; a duplicate id is an error.
    std::string log_run(RunRecord record);

    // Stable sort by timestamp; the filter is conjunctive.
    std::vector<RunRecord> list_runs(const RunFilter& filter = {}) const;

    std::optional<RunRecord> get(const std::string& id) const;
    std::size_t size() const { return records_.size(); }
    const std::string& directory() const { return directory_; }

    // Stored full results when present; otherwise re-runs the stored config
    // under the recorded seed and verifies the stored metrics match exactly.
    RunResult replay(const std::string& id) const;

private:
    std::string directory_;
    std::string data_path_;
    std::vector<RunRecord> records_;
};

RunRecord make_run_record(const RunResult& result, const SimConfig& config,
                          std::optional<std::string> experiment_name = std::nullopt,
                          std::optional<std::string> notes = std::nullopt,
                          bool include_full_results = true);

} // namespace alertsim
