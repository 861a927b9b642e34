#pragma once

#include "core/alert.hpp"
#include "core/events.hpp"

#include <cstdint>
#include <span>

namespace alertsim {

// Evaluation windows, fixed per batch for comparability.
struct MetricsConfig {
    double timeliness_window_sec = 60.0; // delta: first surface within this of issue
    double redundancy_window_sec = 30.0; // W: same-thread repeats inside count as duplicates

    bool operator==(const MetricsConfig&) const = default;
};

// Raw counts backing every ratio; denominators are recorded even when zero.
struct MetricCounts {
    std::uint64_t arrivals = 0;
    std::uint64_t delivered = 0;
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t stale_accesses = 0;
    std::uint64_t threads_surfaced = 0;
    std::uint64_t actionable_first = 0;
    std::uint64_t timely_first = 0;
    std::uint64_t duplicate_hits = 0;

    bool operator==(const MetricCounts&) const = default;
};

// Zero-denominator ratios report 0 with the matching flag set, so CSV output
// stays NaN-free while staying auditable.
struct MetricsReport {
    double delivery_rate = 0.0;
    double cache_hit_rate = 0.0;
    double avg_freshness = 0.0;
    double stale_access_rate = 0.0;
    double actionability_first_ratio = 0.0;
    double timeliness_consistency = 0.0;
    double redundancy_rate = 0.0;
    MetricCounts counts;
    bool no_arrivals = false;
    bool no_retrievals = false;
    bool no_hits = false;
    bool no_threads_surfaced = false;

    bool operator==(const MetricsReport&) const = default;
};

double delivery_rate(std::span<const SimEvent> events);
double cache_hit_rate(std::span<const SimEvent> events);
double avg_freshness(std::span<const SimEvent> events, double lambda = kDefaultLambda);
double stale_access_rate(std::span<const SimEvent> events);

// Fraction of threads with at least one hit whose earliest hit is actionable.
double actionability_first(std::span<const SimEvent> events);

// Fraction of surfaced threads whose first hit happened within delta seconds
// of that alert's issue time.
double timeliness_consistency(std::span<const SimEvent> events, double delta);

// Fraction of hits whose same-thread predecessor hit is < window seconds
// earlier (duplicate-event counting).
double redundancy_rate(std::span<const SimEvent> events, double window);

MetricsReport compute_metrics(std::span<const SimEvent> events, double lambda,
                              const MetricsConfig& config);

} // namespace alertsim
