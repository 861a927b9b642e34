// Operator entry point. All simulation work goes through the C API in
// alertsim/alertsim.h; this file only parses flags, assembles config JSON,
// and renders tables. Human output goes to stdout, diagnostics to stderr,
// machine output (JSON / CSV) to files.

#include "alertsim/alertsim.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct StringDeleter {
    void operator()(char* s) const { alertsim_string_free(s); }
};
using CapiString = std::unique_ptr<char, StringDeleter>;

struct RunDeleter {
    void operator()(alertsim_run* r) const { alertsim_run_free(r); }
};
using RunHandle = std::unique_ptr<alertsim_run, RunDeleter>;

struct BatchDeleter {
    void operator()(alertsim_batch* b) const { alertsim_batch_free(b); }
};
using BatchHandle = std::unique_ptr<alertsim_batch, BatchDeleter>;

struct StoreDeleter {
    void operator()(alertsim_store* s) const { alertsim_store_close(s); }
};
using StoreHandle = std::unique_ptr<alertsim_store, StoreDeleter>;

[[noreturn]] void die(alertsim_status status, const std::string& context) {
    std::cerr << "error (" << alertsim_status_name(status) << "): " << context;
    const char* detail = alertsim_last_error();
    if (detail && *detail) {
        std::cerr << ": " << detail;
    }
    std::cerr << "\n";
    std::exit(1);
}

void check(alertsim_status status, const std::string& context) {
    if (status != ALERTSIM_OK) {
        die(status, context);
    }
}

// Flag values for one simulation config. Defaults mirror the baseline run
// configuration; --reliability only overrides the scenario preset when the
// operator passes it explicitly.
struct ConfigFlags {
    std::string scenario = "Urban";
    std::string policy = "priorityfresh";
    std::size_t cache_size = 128;
    double reliability = 0.85;
    bool reliability_set = false;
    std::uint32_t alerts = 400;
    double duration = 900.0;
    double query_rate = 60.0;
    std::string seed = "FISHDINNER";
    std::string seed_mode = "fixed";
    std::uint32_t replicates = 1;
    std::string weights = "4,5,5";
    double lambda = 1.0 / 600.0;
    double retry_interval = 1.0;
    std::uint32_t max_attempts = 10;
    std::uint32_t push_rate = 0;
    double dedup_window = 30.0;
    double threshold = 25.0;

    void add_common(CLI::App* cmd) {
        cmd->add_option("--scenario", scenario, "Scenario preset: Urban|Rural|Disaster|Perfect")
            ->capture_default_str();
        cmd->add_option("--cache-size", cache_size, "Cache capacity in entries")
            ->capture_default_str();
        cmd->add_option("--reliability", reliability,
                        "Baseline network reliability in [0,1] (default: scenario preset)");
        cmd->add_option("--alerts", alerts, "Number of alerts to generate")
            ->capture_default_str();
        cmd->add_option("--duration", duration, "Run duration in seconds")
            ->capture_default_str();
        cmd->add_option("--query-rate", query_rate, "Cache queries per minute")
            ->capture_default_str();
        cmd->add_option("--seed", seed, "Seed text")->capture_default_str();
        cmd->add_option("--seed-mode", seed_mode, "fixed | perReplicate")
            ->capture_default_str();
        cmd->add_option("--replicates", replicates, "Replicates per configuration")
            ->capture_default_str();
        cmd->add_option("--weights", weights, "Score weights wS,wU,wF")->capture_default_str();
        cmd->add_option("--lambda", lambda, "Freshness decay rate per second")
            ->capture_default_str();
        cmd->add_option("--retry-interval", retry_interval, "Delivery retry interval seconds")
            ->capture_default_str();
        cmd->add_option("--max-attempts", max_attempts, "Delivery attempts per alert")
            ->capture_default_str();
        cmd->add_option("--push-rate", push_rate, "Push rate limit per minute (0 disables)")
            ->capture_default_str();
        cmd->add_option("--dedup-window", dedup_window, "Push dedup window seconds")
            ->capture_default_str();
        cmd->add_option("--threshold", threshold, "Push score threshold")
            ->capture_default_str();
    }

    void finalize(CLI::App* cmd) { reliability_set = cmd->count("--reliability") > 0; }

    json to_config_json() const {
        std::array<double, 3> w{};
        std::stringstream stream(weights);
        std::string part;
        for (double& value : w) {
            if (!std::getline(stream, part, ',')) {
                std::cerr << "error: --weights expects wS,wU,wF\n";
                std::exit(1);
            }
            value = std::stod(part);
        }
        json scenario_obj;
        scenario_obj["name"] = scenario;
        scenario_obj["alertCount"] = alerts;
        scenario_obj["durationSec"] = duration;
        scenario_obj["queryRatePerMin"] = query_rate;
        if (reliability_set) {
            scenario_obj["baseReliability"] = reliability;
        }
        json config;
        config["scenario"] = scenario_obj;
        config["policy"] = policy;
        config["cacheCapacity"] = cache_size;
        config["weights"] = json{{"wS", w[0]}, {"wU", w[1]}, {"wF", w[2]}};
        config["lambda"] = lambda;
        config["retryIntervalSec"] = retry_interval;
        config["maxAttempts"] = max_attempts;
        config["push"] = json{{"ratePerMinute", push_rate},
                              {"dedupWindowSec", dedup_window},
                              {"threshold", threshold}};
        config["seed"] = json{{"seedText", seed},
                              {"mode", seed_mode},
                              {"replicates", replicates}};
        return config;
    }
};

std::string default_store_dir() {
    const char* env = std::getenv("ALERTSIM_STORE");
    return env && *env ? env : "alertsim-store";
}

std::string now_stamp() {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    return std::to_string(std::chrono::duration_cast<std::chrono::seconds>(now).count());
}

void print_metrics_header() {
    std::printf("%-13s %4s %-10s %9s %8s %9s %7s %8s %8s %9s\n", "policy", "rep", "seed",
                "delivery", "hitRate", "freshness", "stale", "action.", "timely", "redund.");
}

void print_metrics_row(const std::string& policy, std::uint32_t replicate,
                       std::uint32_t seed, const json& metrics) {
    std::printf("%-13s %4u %-10u %9.4f %8.4f %9.4f %7.4f %8.4f %8.4f %9.4f\n", policy.c_str(),
                replicate, seed, metrics["deliveryRate"].get<double>(),
                metrics["cacheHitRate"].get<double>(), metrics["avgFreshness"].get<double>(),
                metrics["staleAccessRate"].get<double>(),
                metrics["actionabilityFirstRatio"].get<double>(),
                metrics["timelinessConsistency"].get<double>(),
                metrics["redundancyRate"].get<double>());
}

int cmd_run(const ConfigFlags& flags, const std::string& store_dir, bool no_store,
            const std::string& out_path, const std::string& experiment) {
    const std::string config_json = flags.to_config_json().dump();

    StoreHandle store;
    if (!no_store) {
        alertsim_store* raw = nullptr;
        check(alertsim_store_open(store_dir.c_str(), &raw), "open store " + store_dir);
        store.reset(raw);
    }

    std::ofstream out;
    if (!out_path.empty()) {
        out.open(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write --out file " << out_path << "\n";
            return 1;
        }
    }

    print_metrics_header();
    for (std::uint32_t k = 0; k < flags.replicates; ++k) {
        alertsim_run* raw_run = nullptr;
        check(alertsim_run_simulation(config_json.c_str(), k, &raw_run), "run simulation");
        RunHandle run(raw_run);

        char* metrics_raw = nullptr;
        check(alertsim_run_metrics_json(run.get(), &metrics_raw), "extract metrics");
        CapiString metrics_str(metrics_raw);
        const json metrics = json::parse(metrics_str.get());

        char* result_raw = nullptr;
        check(alertsim_run_result_json(run.get(), &result_raw), "serialize result");
        CapiString result_str(result_raw);
        const json result = json::parse(result_str.get());

        print_metrics_row(flags.policy, k, result["derivedSeed"].get<std::uint32_t>(),
                          metrics);
        if (out.is_open()) {
            out << result_str.get() << "\n";
        }
        if (store) {
            char* id_raw = nullptr;
            check(alertsim_store_log_run(store.get(), run.get(),
                                         experiment.empty() ? nullptr : experiment.c_str(),
                                         nullptr, /*include_full=*/1, &id_raw),
                  "log run");
            CapiString id(id_raw);
            std::cerr << "logged " << id.get() << " to " << store_dir << "\n";
        }
    }
    return 0;
}

// Short policy codes used in winner grids.
std::string winner_code(const std::string& winner) {
    if (winner == "lru") return "LRU";
    if (winner == "ttlonly") return "TTL";
    if (winner == "priorityfresh") return "PRI";
    if (winner == "paftinylfu") return "PAF";
    return winner; // ANY
}

void print_winner_grids(const json& summary) {
    const json& winners = summary["winners"];
    if (winners.empty()) {
        return;
    }
    // Axis values in grid order.
    std::vector<std::size_t> sizes;
    std::vector<double> reliabilities;
    for (const auto& point : summary["grid"]) {
        const auto size = point["cacheSize"].get<std::size_t>();
        const auto rel = point["reliability"].get<double>();
        if (std::find(sizes.begin(), sizes.end(), size) == sizes.end()) sizes.push_back(size);
        if (std::find(reliabilities.begin(), reliabilities.end(), rel) == reliabilities.end()) {
            reliabilities.push_back(rel);
        }
    }
    for (const auto& [metric, cells] : winners.items()) {
        std::map<std::string, int> tally;
        for (const auto& cell : cells) {
            tally[cell["winner"].get<std::string>()] += 1;
        }
        std::printf("\n%s winners:", metric.c_str());
        for (const auto& [winner, count] : tally) {
            std::printf(" %s=%d", winner_code(winner).c_str(), count);
        }
        std::printf("\n");
        std::printf("%8s", "cache\\rel");
        for (double rel : reliabilities) {
            std::printf(" %6.2f", rel);
        }
        std::printf("\n");
        for (std::size_t size : sizes) {
            std::printf("%8zu", size);
            for (double rel : reliabilities) {
                std::string code = "-";
                for (const auto& cell : cells) {
                    if (cell["cacheSize"].get<std::size_t>() == size &&
                        cell["reliability"].get<double>() == rel) {
                        code = winner_code(cell["winner"].get<std::string>());
                        break;
                    }
                }
                std::printf(" %6s", code.c_str());
            }
            std::printf("\n");
        }
    }
}

int cmd_sweep(const ConfigFlags& flags, const std::string& store_dir, bool no_store,
              const std::string& kind, const std::string& cache_sizes,
              const std::string& reliabilities, const std::string& policies,
              double tie_epsilon, const std::string& out_dir, const std::string& stamp,
              unsigned jobs, const std::string& experiment) {
    json batch;
    batch["kind"] = kind;
    batch["base"] = flags.to_config_json();
    batch["tieEpsilon"] = tie_epsilon;
    batch["jobs"] = jobs;
    const auto parse_list = [](const std::string& csv, auto convert) {
        std::vector<decltype(convert(std::string{}))> out;
        std::stringstream stream(csv);
        std::string part;
        while (std::getline(stream, part, ',')) {
            out.push_back(convert(part));
        }
        return out;
    };
    if (!cache_sizes.empty()) {
        batch["cacheSizes"] = parse_list(cache_sizes, [](const std::string& s) {
            return static_cast<std::size_t>(std::stoull(s));
        });
    }
    if (!reliabilities.empty()) {
        batch["reliabilities"] =
            parse_list(reliabilities, [](const std::string& s) { return std::stod(s); });
    }
    if (!policies.empty()) {
        batch["policies"] = parse_list(policies, [](const std::string& s) { return s; });
    }

    StoreHandle store;
    if (!no_store) {
        alertsim_store* raw = nullptr;
        check(alertsim_store_open(store_dir.c_str(), &raw), "open store " + store_dir);
        store.reset(raw);
    }

    alertsim_batch* raw_batch = nullptr;
    check(alertsim_run_batch(batch.dump().c_str(), store.get(),
                             experiment.empty() ? nullptr : experiment.c_str(), &raw_batch),
          "run batch");
    BatchHandle handle(raw_batch);

    char* paths_raw = nullptr;
    check(alertsim_batch_write_csv(handle.get(), out_dir.c_str(), stamp.c_str(), &paths_raw),
          "write CSVs");
    CapiString paths_str(paths_raw);
    for (const auto& path : json::parse(paths_str.get())) {
        std::cerr << "wrote " << path.get<std::string>() << "\n";
    }

    char* summary_raw = nullptr;
    check(alertsim_batch_summary_json(handle.get(), &summary_raw), "summarize batch");
    CapiString summary_str(summary_raw);
    const json summary = json::parse(summary_str.get());

    std::printf("batch %s: %zu grid points, %zu rows\n", kind.c_str(),
                summary["grid"].size(), summary["rows"].size());
    print_metrics_header();
    for (const auto& row : summary["rows"]) {
        print_metrics_row(row["policy"].get<std::string>() + "@" +
                              std::to_string(row["cacheSize"].get<std::size_t>()),
                          row["replicate"].get<std::uint32_t>(),
                          row["seed"].get<std::uint32_t>(), row["metrics"]);
    }
    print_winner_grids(summary);
    return 0;
}

int cmd_history(const std::string& store_dir, const std::string& scenario,
                const std::string& policy, const std::string& experiment) {
    alertsim_store* raw = nullptr;
    check(alertsim_store_open(store_dir.c_str(), &raw), "open store " + store_dir);
    StoreHandle store(raw);

    json filter;
    if (!scenario.empty()) filter["scenario"] = scenario;
    if (!policy.empty()) filter["policy"] = policy;
    if (!experiment.empty()) filter["experimentName"] = experiment;

    char* list_raw = nullptr;
    check(alertsim_store_list_json(store.get(),
                                   filter.empty() ? nullptr : filter.dump().c_str(), &list_raw),
          "list runs");
    CapiString list_str(list_raw);
    const json records = json::parse(list_str.get());

    std::printf("%-12s %-11s %-9s %-13s %-10s %9s %8s %8s\n", "id", "timestamp", "scenario",
                "policy", "seed", "delivery", "hitRate", "action.");
    for (const auto& record : records) {
        const json& metrics = record["metrics"];
        std::printf("%-12s %-11lld %-9s %-13s %-10u %9.4f %8.4f %8.4f\n",
                    record["id"].get<std::string>().c_str(),
                    static_cast<long long>(record["timestamp"].get<std::int64_t>()),
                    record["scenario"].get<std::string>().c_str(),
                    record["policy"].get<std::string>().c_str(),
                    record["seed"].get<std::uint32_t>(),
                    metrics["deliveryRate"].get<double>(),
                    metrics["cacheHitRate"].get<double>(),
                    metrics["actionabilityFirstRatio"].get<double>());
    }
    std::printf("%zu run(s)\n", records.size());
    return 0;
}

int cmd_replay(const std::string& store_dir, const std::string& id) {
    alertsim_store* raw = nullptr;
    check(alertsim_store_open(store_dir.c_str(), &raw), "open store " + store_dir);
    StoreHandle store(raw);

    alertsim_run* raw_run = nullptr;
    check(alertsim_store_replay(store.get(), id.c_str(), &raw_run), "replay " + id);
    RunHandle run(raw_run);

    char* metrics_raw = nullptr;
    check(alertsim_run_metrics_json(run.get(), &metrics_raw), "extract metrics");
    CapiString metrics_str(metrics_raw);
    const json metrics = json::parse(metrics_str.get());

    char* result_raw = nullptr;
    check(alertsim_run_result_json(run.get(), &result_raw), "serialize result");
    CapiString result_str(result_raw);
    const json result = json::parse(result_str.get());

    std::printf("replayed %s\n", id.c_str());
    print_metrics_header();
    print_metrics_row(result["policy"].get<std::string>(),
                      result["replicate"].get<std::uint32_t>(),
                      result["derivedSeed"].get<std::uint32_t>(), metrics);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"alertsim: deterministic emergency-alert cache simulator"};
    app.require_subcommand(1);

    std::string store_dir = default_store_dir();
    bool no_store = false;
    app.add_option("--store", store_dir, "Run store directory (env ALERTSIM_STORE)")
        ->capture_default_str();
    app.add_flag("--no-store", no_store, "Do not log runs to the store");

    // run
    auto* run_cmd = app.add_subcommand("run", "Execute one configuration");
    ConfigFlags run_flags;
    run_flags.add_common(run_cmd);
    run_cmd->add_option("--policy", run_flags.policy,
                        "Cache policy: lru|ttlonly|priorityfresh|paftinylfu")
        ->capture_default_str();
    std::string run_out;
    std::string run_experiment;
    run_cmd->add_option("--out", run_out, "Write full run results (one JSON per line)");
    run_cmd->add_option("--experiment", run_experiment, "Experiment name for the store");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a batch design");
    ConfigFlags sweep_flags;
    sweep_flags.add_common(sweep_cmd);
    std::string kind;
    sweep_cmd->add_option("--kind", kind, "baseline|cache|network|joint|extreme")->required();
    std::string cache_sizes;
    std::string reliabilities;
    std::string policies;
    double tie_epsilon = 0.005;
    std::string out_dir = "results";
    std::string stamp;
    unsigned jobs = 0;
    std::string sweep_experiment;
    sweep_cmd->add_option("--cache-sizes", cache_sizes, "Capacities, e.g. 32,64,128");
    sweep_cmd->add_option("--reliabilities", reliabilities, "Reliabilities, e.g. 0.3,0.85,1");
    sweep_cmd->add_option("--policies", policies, "Policies to compare (default: all four)");
    sweep_cmd->add_option("--tie-epsilon", tie_epsilon, "Winner tie tolerance")
        ->capture_default_str();
    sweep_cmd->add_option("--out-dir", out_dir, "CSV output directory")->capture_default_str();
    sweep_cmd->add_option("--stamp", stamp, "Filename stamp (default: current unix time)");
    sweep_cmd->add_option("--jobs", jobs, "Parallel runs (0 = logical CPU count)")
        ->capture_default_str();
    sweep_cmd->add_option("--experiment", sweep_experiment, "Experiment name for the store");

    // history
    auto* history_cmd = app.add_subcommand("history", "List stored runs");
    std::string h_scenario;
    std::string h_policy;
    std::string h_experiment;
    history_cmd->add_option("--scenario", h_scenario, "Filter by scenario");
    history_cmd->add_option("--policy", h_policy, "Filter by policy");
    history_cmd->add_option("--experiment", h_experiment, "Filter by experiment name");

    // replay
    auto* replay_cmd = app.add_subcommand("replay", "Replay a stored run");
    std::string replay_id;
    replay_cmd->add_option("--id", replay_id, "Run id to replay")->required();

    CLI11_PARSE(app, argc, argv);

    if (run_cmd->parsed()) {
        run_flags.finalize(run_cmd);
        return cmd_run(run_flags, store_dir, no_store, run_out, run_experiment);
    }
    if (sweep_cmd->parsed()) {
        sweep_flags.finalize(sweep_cmd);
        return cmd_sweep(sweep_flags, store_dir, no_store, kind, cache_sizes, reliabilities,
                         policies, tie_epsilon, out_dir, stamp.empty() ? now_stamp() : stamp,
                         jobs, sweep_experiment);
    }
    if (history_cmd->parsed()) {
        return cmd_history(store_dir, h_scenario, h_policy, h_experiment);
    }
    if (replay_cmd->parsed()) {
        return cmd_replay(store_dir, replay_id);
    }
    return 1;
}
