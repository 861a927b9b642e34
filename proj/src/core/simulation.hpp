#pragma once

#include "core/alert.hpp"
#include "core/events.hpp"
#include "core/metrics.hpp"
#include "core/policies.hpp"
#include "core/push_guard.hpp"
#include "core/rng.hpp"
#include "core/scenario.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace alertsim {

// Full run configuration. Defaults mirror the baseline tables: Urban
// scenario, cache 128, 400 alerts over 900 s, weights (4, 5, 5),
// reliability 0.85, seed FISHDINNER fixed, 60 queries/min, retry every
// second up to 10 attempts, pushes disabled.
struct SimConfig {
    ScenarioSpec scenario;
    GeneratorParams generator;
    std::string policy_name = "priorityfresh";
    Weights weights = kExperimentWeights;
    double lambda = kDefaultLambda;
    std::size_t cache_capacity = 128;
    double retry_interval_sec = 1.0;
    std::uint32_t max_attempts = 10;
    PushConfig push;
    SeedSpec seed;
    double timeline_resolution_sec = 5.0;
    MetricsConfig metrics;

    bool operator==(const SimConfig&) const = default;
};

// Throws std::invalid_argument naming the offending field.
void validate(const SimConfig& config);

struct DeliveryResult {
    bool delivered = false;
    double delivery_time = 0.0;
    std::uint32_t attempts = 0;
};

// Bernoulli-per-attempt retry delivery. Attempt k runs at
// now + (k-1) * retryIntervalSec with success probability
// clamp(baseReliability * region.multiplier, 0, 1), forced to 0 inside
// outage windows. Always consumes exactly maxAttempts draws so that runs
// sharing a seed stay aligned across policies and reliabilities (and
// delivery is pathwise nondecreasing in reliability).
DeliveryResult attempt_delivery(Rng& rng, const Alert& alert, const Region& region,
                                const ScenarioSpec& spec, double retry_interval_sec,
                                std::uint32_t max_attempts, double now);

// Urgency-first biased draw over the current residents; nullopt when empty
// (no rng draw is consumed in that case).
std::optional<Alert> sample_query(Rng& rng, const std::vector<const Alert*>& residents);

struct TimelinePoint {
    double time = 0.0;
    std::uint64_t cache_size = 0;
    std::uint64_t cumulative_hits = 0;
    std::uint64_t cumulative_misses = 0;
    double hit_rate = 0.0;

    bool operator==(const TimelinePoint&) const = default;
};

struct RegionStat {
    std::uint64_t attempted = 0;
    std::uint64_t delivered = 0;

    bool operator==(const RegionStat&) const = default;
};

struct RunResult {
    std::string config_hash;   // fingerprint of the canonical config serialization
    std::string stream_hash;   // fingerprint of the generated alert stream
    std::string policy_name;
    std::string scenario;
    std::string seed_text;
    std::uint32_t derived_seed = 0;
    std::uint32_t replicate = 0;
    MetricsReport metrics;
    std::map<std::string, RegionStat> per_region;
    std::vector<TimelinePoint> timeline;
    std::vector<SimEvent> events;
    std::uint64_t samples_count = 0;       // total cache retrievals (hits + misses)
    std::uint64_t expired_insert_count = 0;

    bool operator==(const RunResult&) const = default;
};

// Deterministic function of (config, replicate): replicate k runs with seed
// config.seed.seed_for_replicate(k).
RunResult run_simulation(const SimConfig& config, std::uint32_t replicate = 0);

// Same loop with the derived seed supplied directly (replays use the seed
// recorded in the run store).
RunResult run_simulation_with_seed(const SimConfig& config, std::uint32_t derived_seed,
                                   std::uint32_t replicate = 0);

} // namespace alertsim
