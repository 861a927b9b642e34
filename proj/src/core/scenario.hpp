#pragma once

#include "core/alert.hpp"
#include "core/rng.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace alertsim {

struct OutageWindow {
    double start = 0.0;
    double end = 0.0;

    bool contains(double t) const { return t >= start && t < end; }

    bool operator==(const OutageWindow&) const = default;
};

enum class ScenarioName { Urban, Rural, Disaster, Perfect };

std::string_view scenario_name(ScenarioName name);
ScenarioName scenario_from_name(std::string_view name);

// Environment and workload of one run: alert volume, run length, query rate,
// baseline reliability, outages, and the first-delivery SLA target.
struct ScenarioSpec {
    ScenarioName name = ScenarioName::Urban;
    double base_reliability = 0.85;
    std::uint32_t alert_count = 400;
    double duration_sec = 900.0;
    double query_rate_per_min = 60.0;
    std::vector<OutageWindow> outage_windows;
    double first_delivery_sla_sec = 60.0;

    bool operator==(const ScenarioSpec&) const = default;
};

// Presets: Urban 0.85, Perfect 1.0, Rural 0.6, Disaster 0.3 plus one
// mid-run outage. Everything else stays at the defaults above.
ScenarioSpec scenario_preset(ScenarioName name);

// Reliability zone tiling a slice of the unit square. Effective reliability
// of a delivery attempt is clamp(baseReliability * multiplier, 0, 1).
struct Region {
    std::string id;
    double reliability_multiplier = 1.0;
    std::array<double, 4> bounds{0.0, 0.0, 1.0, 1.0}; // lon0, lat0, lon1, lat1
    std::string geokey;

    bool operator==(const Region&) const = default;
};

struct GeneratorParams {
    std::vector<std::string> event_types{"Flood", "Shelter", "Storm", "Evacuation"};
    // Categorical weights indexed by the Severity / Urgency enum order.
    std::array<double, 5> severity_weights{3.0, 4.0, 2.0, 1.0, 0.5};   // Minor..Unknown
    std::array<double, 5> urgency_weights{2.0, 3.0, 2.0, 1.0, 0.5};    // Immediate..Unknown
    std::array<double, 2> ttl_range_sec{300.0, 1800.0};
    double update_probability = 0.35;
    std::uint32_t region_count = 4;

    bool operator==(const GeneratorParams&) const = default;
};

// regionCount regions tiling a unit-square grid, multipliers uniform in
// [0.7, 1.0]. Fully determined by the rng.
std::vector<Region> generate_environment(Rng& rng, const GeneratorParams& params);

// Exactly alertCount alerts, issue times sorted uniform integer draws over
// [0, durationSec). Each alert joins a uniformly chosen existing thread with
// probability updateProbability (inheriting threadKey, eventType, geokey, and
// region; severity/urgency re-drawn to model escalation) or starts a new one.
// TTLs are uniform over ttlRange.
std::vector<Alert> generate_alert_stream(Rng& rng, const ScenarioSpec& spec,
                                         const GeneratorParams& params,
                                         const std::vector<Region>& regions);

// Index into `regions` for an alert, by geokey. Generated alerts always carry
// a region geokey.
std::size_t region_index_for(const Alert& alert, const std::vector<Region>& regions);

} // namespace alertsim
