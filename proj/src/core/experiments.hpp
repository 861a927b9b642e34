#pragma once

#include "core/run_store.hpp"
#include "core/simulation.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace alertsim {

enum class BatchKind { Baseline, CacheSweep, NetworkSweep, JointSweep, ExtremeCorners };

std::string_view batch_kind_name(BatchKind kind);
BatchKind batch_kind_from_name(std::string_view name);

// The four corner configurations: best case, good device / poor network,
// budget device / good network, and worst case.
inline constexpr std::pair<std::size_t, double> kExtremeCorners[] = {
    {1024, 1.0}, {1024, 0.3}, {32, 0.85}, {32, 0.3}};

struct BatchSpec {
    BatchKind kind = BatchKind::Baseline;
    std::vector<std::size_t> cache_sizes{32, 64, 128, 256, 512, 1024};
    std::vector<double> reliabilities{0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.85, 0.9, 1.0};
    std::vector<std::string> policies{"lru", "ttlonly", "priorityfresh", "paftinylfu"};
    double tie_epsilon = 0.005;
    SimConfig base; // overridden per grid point and policy
};

struct GridPoint {
    std::size_t cache_size = 0;
    double reliability = 0.0;

    bool operator==(const GridPoint&) const = default;
    auto operator<=>(const GridPoint&) const = default;
};

struct BatchRow {
    std::string policy;
    GridPoint point;
    std::uint32_t derived_seed = 0;
    std::uint32_t replicate = 0;
    MetricsReport metrics;
    std::string stream_hash;
};

struct BatchResult {
    BatchSpec spec;
    std::vector<GridPoint> grid;
    std::vector<BatchRow> rows; // sorted by (cacheSize, reliability, policy, replicate)
    std::vector<std::string> stored_run_ids;
};

// Runs every (policy x grid point x replicate). Replicate k of every policy
// and grid point shares the derived seed seed_for_replicate(k), so policies
// face identical alert streams and delivery draws. `jobs` = 0 picks the
// hardware thread count; results are ordered deterministically regardless of
// schedule. When a store is given, every run is persisted (metrics + config,
// without embedded full results).
BatchResult run_batch(const BatchSpec& spec, unsigned jobs = 0, RunStore* store = nullptr,
                      const std::optional<std::string>& experiment_name = std::nullopt);

inline constexpr std::string_view kMetricColumns[] = {
    "deliveryRate",         "cacheHitRate",          "avgFreshness",   "staleAccessRate",
    "actionabilityFirstRatio", "timelinessConsistency", "redundancyRate"};

double metric_value(const MetricsReport& report, std::string_view metric);

// True for metrics where smaller is better.
bool metric_lower_is_better(std::string_view metric);

inline constexpr std::string_view kAnyWinner = "ANY";

struct WinnerCell {
    std::string metric;
    GridPoint point;
    std::string winner; // policy name, or ANY on a tie
    double margin = 0.0; // max - min across policies at this point
};

// Per grid point: mean metric across replicates per policy, argmax (or
// argmin for lower-is-better metrics); ANY when max - min <= tieEpsilon.
// Missing grid cells are an error.
std::vector<WinnerCell> winner_matrix(const BatchResult& batch, std::string_view metric,
                                      double tie_epsilon);

// One row per (policy, grid point, replicate) with the stable header
// policy,cacheSize,reliability,seed,replicate,<metrics...>,<counts...>.
std::string batch_rows_csv(const BatchResult& batch);
std::string winner_matrix_csv(const std::vector<WinnerCell>& cells);

// Writes <prefix>-comparison-<stamp>.csv plus winner-<metric>-<stamp>.csv
// per metric (grid kinds only); returns the written paths.
std::vector<std::string> emit_csv(const BatchResult& batch, const std::string& out_dir,
                                  const std::string& stamp);

} // namespace alertsim
