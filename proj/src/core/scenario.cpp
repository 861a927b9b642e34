#include "core/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>
#include <stdexcept>

namespace alertsim {

std::string_view scenario_name(ScenarioName name) {
    switch (name) {
        case ScenarioName::Urban: return "Urban";
        case ScenarioName::Rural: return "Rural";
        case ScenarioName::Disaster: return "Disaster";
        case ScenarioName::Perfect: return "Perfect";
    }
    return "Urban";
}

ScenarioName scenario_from_name(std::string_view name) {
    if (name == "Urban") return ScenarioName::Urban;
    if (name == "Rural") return ScenarioName::Rural;
    if (name == "Disaster") return ScenarioName::Disaster;
    if (name == "Perfect") return ScenarioName::Perfect;
    throw std::invalid_argument("unknown scenario: " + std::string(name));
}

ScenarioSpec scenario_preset(ScenarioName name) {
    ScenarioSpec spec;
    spec.name = name;
    switch (name) {
        case ScenarioName::Urban:
            spec.base_reliability = 0.85;
            break;
        case ScenarioName::Perfect:
            spec.base_reliability = 1.0;
            break;
        case ScenarioName::Rural:
            spec.base_reliability = 0.6;
            break;
        case ScenarioName::Disaster:
            spec.base_reliability = 0.3;
            spec.outage_windows.push_back(OutageWindow{360.0, 540.0});
            break;
    }
    return spec;
}

std::vector<Region> generate_environment(Rng& rng, const GeneratorParams& params) {
    if (params.region_count == 0) {
        throw std::invalid_argument("regionCount must be at least 1");
    }
    const std::size_t count = params.region_count;
    const std::size_t cols = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(count))));
    const std::size_t rows = (count + cols - 1) / cols;
    const double cell_w = 1.0 / static_cast<double>(cols);
    const double cell_h = 1.0 / static_cast<double>(rows);

    std::vector<Region> regions;
    regions.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t row = i / cols;
        const std::size_t col = i % cols;
        Region region;
        region.id = fmt::format("region-{}", i);
        region.geokey = fmt::format("gk-{}-{}", row, col);
        region.reliability_multiplier = rng.next_range(0.7, 1.0);
        region.bounds = {static_cast<double>(col) * cell_w, static_cast<double>(row) * cell_h,
                         static_cast<double>(col + 1) * cell_w,
                         static_cast<double>(row + 1) * cell_h};
        regions.push_back(std::move(region));
    }
    return regions;
}

std::vector<Alert> generate_alert_stream(Rng& rng, const ScenarioSpec& spec,
                                         const GeneratorParams& params,
                                         const std::vector<Region>& regions) {
    if (spec.alert_count == 0) {
        throw std::invalid_argument("alertCount must be at least 1");
    }
    if (regions.empty()) {
        throw std::invalid_argument("generate_alert_stream requires regions");
    }
    if (!(params.ttl_range_sec[0] > 0.0) || params.ttl_range_sec[0] > params.ttl_range_sec[1]) {
        throw std::invalid_argument("ttlRange must satisfy 0 < lo <= hi");
    }

    // Issue times first: sorted uniform draws floored to whole seconds.
    // Ties keep generation order (stable sort).
    std::vector<std::int64_t> issue_times(spec.alert_count);
    for (auto& t : issue_times) {
        t = static_cast<std::int64_t>(rng.next_float() * spec.duration_sec);
    }
    std::stable_sort(issue_times.begin(), issue_times.end());

    struct ThreadInfo {
        std::string key;
        std::string event_type;
        std::string geokey;
    };
    std::vector<ThreadInfo> threads;
    threads.reserve(spec.alert_count);

    std::vector<Alert> alerts;
    alerts.reserve(spec.alert_count);
    for (std::uint32_t i = 0; i < spec.alert_count; ++i) {
        Alert alert;
        alert.id = fmt::format("a-{:05}", i);
        alert.issued_at = issue_times[i];

        const bool joins_thread =
            !threads.empty() && rng.next_float() < params.update_probability;
        if (joins_thread) {
            const auto pick = static_cast<std::size_t>(rng.next_float() *
                                                       static_cast<double>(threads.size()));
            const ThreadInfo& thread = threads[std::min(pick, threads.size() - 1)];
            alert.thread_key = thread.key;
            alert.event_type = thread.event_type;
            alert.geokey = thread.geokey;
        } else {
            const auto type_pick = static_cast<std::size_t>(
                rng.next_float() * static_cast<double>(params.event_types.size()));
            alert.event_type = params.event_types[std::min(type_pick,
                                                           params.event_types.size() - 1)];
            const auto region_pick = static_cast<std::size_t>(
                rng.next_float() * static_cast<double>(regions.size()));
            alert.geokey = regions[std::min(region_pick, regions.size() - 1)].geokey;
            // New threads key on the founding alert's id.
            threads.push_back(ThreadInfo{alert.id, alert.event_type, *alert.geokey});
        }

        alert.severity = static_cast<Severity>(rng.next_choice(params.severity_weights));
        alert.urgency = static_cast<Urgency>(rng.next_choice(params.urgency_weights));
        const double ttl = rng.next_range(params.ttl_range_sec[0], params.ttl_range_sec[1]);
        alert.expires_at = alert.issued_at + static_cast<std::int64_t>(ttl);
        alert.headline = fmt::format("{} ({}/{})", alert.event_type,
                                     severity_name(alert.severity),
                                     urgency_name(alert.urgency));
        alert.size_bytes = 200 + static_cast<std::int64_t>(rng.next_float() * 1848.0);
        alerts.push_back(std::move(alert));
    }
    return alerts;
}

std::size_t region_index_for(const Alert& alert, const std::vector<Region>& regions) {
    if (alert.geokey) {
        for (std::size_t i = 0; i < regions.size(); ++i) {
            if (regions[i].geokey == *alert.geokey) {
                return i;
            }
        }
    }
    return 0;
}

} // namespace alertsim
