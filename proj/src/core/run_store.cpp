#include "core/run_store.hpp"

#include "core/json_io.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace alertsim {

using nlohmann::json;

std::string run_record_to_json(const RunRecord& record) {
    json j;
    j["id"] = record.id;
    j["scenario"] = record.scenario;
    j["policy"] = record.policy;
    j["seedText"] = record.seed_text;
    j["seed"] = record.derived_seed;
    j["replicate"] = record.replicate;
    j["timestamp"] = record.timestamp;
    j["metrics"] = json::parse(metrics_report_to_json(record.metrics));
    j["samplesCount"] = record.samples_count;
    if (record.experiment_name) j["experimentName"] = *record.experiment_name;
    if (record.notes) j["notes"] = *record.notes;
    j["config"] = json::parse(sim_config_to_json(record.config));
    if (record.full_results) {
        j["fullResults"] = json::parse(run_result_to_json(*record.full_results));
    }
    return j.dump();
}

RunRecord run_record_from_json(const std::string& text) {
    const json j = json::parse(text);
    RunRecord record;
    record.id = j.at("id").get<std::string>();
    record.scenario = j.at("scenario").get<std::string>();
    record.policy = j.at("policy").get<std::string>();
    record.seed_text = j.at("seedText").get<std::string>();
    record.derived_seed = j.at("seed").get<std::uint32_t>();
    record.replicate = j.at("replicate").get<std::uint32_t>();
    record.timestamp = j.at("timestamp").get<std::int64_t>();
    record.metrics = metrics_report_from_json(j.at("metrics").dump());
    record.samples_count = j.at("samplesCount").get<std::uint64_t>();
    if (j.contains("experimentName")) {
        record.experiment_name = j["experimentName"].get<std::string>();
    }
    if (j.contains("notes")) record.notes = j["notes"].get<std::string>();
    record.config = sim_config_from_json(j.at("config").dump());
    if (j.contains("fullResults")) {
        record.full_results = run_result_from_json(j["fullResults"].dump());
    }
    return record;
}

namespace {

// RAII flock on the data file for the append window.
class FileLock {
public:
    explicit FileLock(const std::string& path) {
        file_ = std::fopen(path.c_str(), "a");
        if (!file_) {
            throw std::runtime_error("cannot open run store file: " + path);
        }
        if (flock(fileno(file_), LOCK_EX) != 0) {
            std::fclose(file_);
            throw std::runtime_error("cannot lock run store file: " + path);
        }
    }

    ~FileLock() {
        if (file_) {
            flock(fileno(file_), LOCK_UN);
            std::fclose(file_);
        }
    }

    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

    void append_line(const std::string& line) {
        std::fwrite(line.data(), 1, line.size(), file_);
        std::fputc('\n', file_);
        std::fflush(file_);
    }

private:
    std::FILE* file_ = nullptr;
};

} // namespace

RunStore::RunStore(std::string directory) : directory_(std::move(directory)) {
    namespace fs = std::filesystem;
    fs::create_directories(directory_);
    data_path_ = (fs::path(directory_) / "runs.jsonl").string();
    const fs::path meta = fs::path(directory_) / "store.json";
    if (!fs::exists(meta)) {
        std::ofstream out(meta);
        out << json{{"format", "alertsim-run-store"}, {"version", 1}}.dump() << "\n";
    }
    if (fs::exists(data_path_)) {
        std::ifstream in(data_path_);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty()) {
                records_.push_back(run_record_from_json(line));
            }
        }
    }
}

std::string RunStore::log_run(RunRecord record) {
    if (record.id.empty()) {
        record.id = fmt::format("run-{:06}", records_.size() + 1);
    }
    if (get(record.id)) {
        throw std::invalid_argument("duplicate run id: " + record.id);
    }
    FileLock lock(data_path_);
    lock.append_line(run_record_to_json(record));
    records_.push_back(std::move(record));
    return records_.back().id;
}

std::vector<RunRecord> RunStore::list_runs(const RunFilter& filter) const {
    std::vector<RunRecord> out;
    for (const RunRecord& record : records_) {
        if (filter.scenario && record.scenario != *filter.scenario) continue;
        if (filter.policy && record.policy != *filter.policy) continue;
        if (filter.experiment_name &&
            record.experiment_name.value_or("") != *filter.experiment_name) {
            continue;
        }
        out.push_back(record);
    }
    std::stable_sort(out.begin(), out.end(), [](const RunRecord& a, const RunRecord& b) {
        return a.timestamp < b.timestamp;
    });
    return out;
}

std::optional<RunRecord> RunStore::get(const std::string& id) const {
    for (const RunRecord& record : records_) {
        if (record.id == id) {
            return record;
        }
    }
    return std::nullopt;
}

RunResult RunStore::replay(const std::string& id) const {
    const std::optional<RunRecord> record = get(id);
    if (!record) {
        throw std::invalid_argument("unknown run id: " + id);
    }
    if (record->full_results) {
        return *record->full_results;
    }
    RunResult rerun =
        run_simulation_with_seed(record->config, record->derived_seed, record->replicate);
    if (!(rerun.metrics == record->metrics)) {
        throw std::runtime_error("replay mismatch: re-executed metrics differ for " + id);
    }
    return rerun;
}

RunRecord make_run_record(const RunResult& result, const SimConfig& config,
                          std::optional<std::string> experiment_name,
                          std::optional<std::string> notes, bool include_full_results) {
    RunRecord record;
    record.scenario = result.scenario;
    record.policy = result.policy_name;
    record.seed_text = result.seed_text;
    record.derived_seed = result.derived_seed;
    record.replicate = result.replicate;
    record.timestamp = std::chrono::duration_cast<std::chrono::seconds>(
                           std::chrono::system_clock::now().time_since_epoch())
                           .count();
    record.metrics = result.metrics;
    record.samples_count = result.samples_count;
    record.experiment_name = std::move(experiment_name);
    record.notes = std::move(notes);
    record.config = config;
    if (include_full_results) {
        record.full_results = result;
    }
    return record;
}

} // namespace alertsim
