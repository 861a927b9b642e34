#include "core/json_io.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace alertsim {

using nlohmann::json;

namespace {

json alert_json(const Alert& alert) {
    json j;
    j["id"] = alert.id;
    j["eventType"] = alert.event_type;
    j["severity"] = severity_name(alert.severity);
    j["urgency"] = urgency_name(alert.urgency);
    j["issuedAt"] = alert.issued_at;
    j["expiresAt"] = alert.expires_at;
    if (alert.headline) j["headline"] = *alert.headline;
    if (alert.instruction) j["instruction"] = *alert.instruction;
    if (alert.size_bytes) j["sizeBytes"] = *alert.size_bytes;
    if (alert.geokey) j["geokey"] = *alert.geokey;
    if (alert.polygon) j["polygon"] = *alert.polygon;
    if (alert.thread_key) j["threadKey"] = *alert.thread_key;
    return j;
}

Alert parse_alert(const json& j) {
    Alert alert;
    alert.id = j.at("id").get<std::string>();
    alert.event_type = j.at("eventType").get<std::string>();
    alert.severity = severity_from_name(j.at("severity").get<std::string>());
    alert.urgency = urgency_from_name(j.at("urgency").get<std::string>());
    alert.issued_at = j.at("issuedAt").get<std::int64_t>();
    alert.expires_at = j.at("expiresAt").get<std::int64_t>();
    if (j.contains("headline")) alert.headline = j["headline"].get<std::string>();
    if (j.contains("instruction")) alert.instruction = j["instruction"].get<std::string>();
    if (j.contains("sizeBytes")) alert.size_bytes = j["sizeBytes"].get<std::int64_t>();
    if (j.contains("geokey")) alert.geokey = j["geokey"].get<std::string>();
    if (j.contains("polygon")) alert.polygon = j["polygon"].get<std::vector<LonLat>>();
    if (j.contains("threadKey")) alert.thread_key = j["threadKey"].get<std::string>();
    return alert;
}

json shelter_json(const Shelter& shelter) {
    json j;
    j["id"] = shelter.id;
    j["name"] = shelter.name;
    if (shelter.address) j["address"] = *shelter.address;
    j["coordinates"] = shelter.coordinates;
    if (shelter.capacity) j["capacity"] = *shelter.capacity;
    j["status"] = shelter_status_name(shelter.status);
    j["updatedAt"] = shelter.updated_at;
    if (shelter.geokey) j["geokey"] = *shelter.geokey;
    return j;
}

Shelter parse_shelter(const json& j) {
    Shelter shelter;
    shelter.id = j.at("id").get<std::string>();
    shelter.name = j.at("name").get<std::string>();
    if (j.contains("address")) shelter.address = j["address"].get<std::string>();
    shelter.coordinates = j.at("coordinates").get<LonLat>();
    if (j.contains("capacity")) shelter.capacity = j["capacity"].get<std::int64_t>();
    shelter.status = shelter_status_from_name(j.at("status").get<std::string>());
    shelter.updated_at = j.at("updatedAt").get<std::int64_t>();
    if (j.contains("geokey")) shelter.geokey = j["geokey"].get<std::string>();
    return shelter;
}

template <std::size_t N>
void load_weights_by_name(const json& j, std::array<double, N>& weights, auto index_of) {
    for (const auto& [key, value] : j.items()) {
        weights[static_cast<std::size_t>(index_of(key))] = value.template get<double>();
    }
}

json scenario_json(const ScenarioSpec& spec) {
    json j;
    j["name"] = scenario_name(spec.name);
    j["baseReliability"] = spec.base_reliability;
    j["alertCount"] = spec.alert_count;
    j["durationSec"] = spec.duration_sec;
    j["queryRatePerMin"] = spec.query_rate_per_min;
    json outages = json::array();
    for (const OutageWindow& w : spec.outage_windows) {
        outages.push_back(json::array({w.start, w.end}));
    }
    j["outageWindows"] = outages;
    j["firstDeliverySlaSec"] = spec.first_delivery_sla_sec;
    return j;
}

ScenarioSpec parse_scenario(const json& j) {
    ScenarioSpec spec;
    if (j.contains("name")) {
        spec = scenario_preset(scenario_from_name(j["name"].get<std::string>()));
    }
    if (j.contains("baseReliability")) spec.base_reliability = j["baseReliability"].get<double>();
    if (j.contains("alertCount")) spec.alert_count = j["alertCount"].get<std::uint32_t>();
    if (j.contains("durationSec")) spec.duration_sec = j["durationSec"].get<double>();
    if (j.contains("queryRatePerMin")) {
        spec.query_rate_per_min = j["queryRatePerMin"].get<double>();
    }
    if (j.contains("outageWindows")) {
        spec.outage_windows.clear();
        for (const auto& pair : j["outageWindows"]) {
            spec.outage_windows.push_back(
                OutageWindow{pair.at(0).get<double>(), pair.at(1).get<double>()});
        }
    }
    if (j.contains("firstDeliverySlaSec")) {
        spec.first_delivery_sla_sec = j["firstDeliverySlaSec"].get<double>();
    }
    return spec;
}

json generator_json(const GeneratorParams& params) {
    json j;
    j["eventTypes"] = params.event_types;
    json severity;
    json urgency;
    for (std::size_t i = 0; i < params.severity_weights.size(); ++i) {
        severity[std::string(severity_name(static_cast<Severity>(i)))] =
            params.severity_weights[i];
        urgency[std::string(urgency_name(static_cast<Urgency>(i)))] = params.urgency_weights[i];
    }
    j["severityWeights"] = severity;
    j["urgencyWeights"] = urgency;
    j["ttlRangeSec"] = params.ttl_range_sec;
    j["updateProbability"] = params.update_probability;
    j["regionCount"] = params.region_count;
    return j;
}

GeneratorParams parse_generator(const json& j) {
    GeneratorParams params;
    if (j.contains("eventTypes")) {
        params.event_types = j["eventTypes"].get<std::vector<std::string>>();
    }
    if (j.contains("severityWeights")) {
        load_weights_by_name(j["severityWeights"], params.severity_weights,
                             [](const std::string& n) {
                                 return static_cast<std::size_t>(severity_from_name(n));
                             });
    }
    if (j.contains("urgencyWeights")) {
        load_weights_by_name(j["urgencyWeights"], params.urgency_weights,
                             [](const std::string& n) {
                                 return static_cast<std::size_t>(urgency_from_name(n));
                             });
    }
    if (j.contains("ttlRangeSec")) params.ttl_range_sec = j["ttlRangeSec"].get<std::array<double, 2>>();
    if (j.contains("updateProbability")) {
        params.update_probability = j["updateProbability"].get<double>();
    }
    if (j.contains("regionCount")) params.region_count = j["regionCount"].get<std::uint32_t>();
    return params;
}

json metrics_json(const MetricsReport& report) {
    json counts;
    counts["arrivals"] = report.counts.arrivals;
    counts["delivered"] = report.counts.delivered;
    counts["hits"] = report.counts.hits;
    counts["misses"] = report.counts.misses;
    counts["staleAccesses"] = report.counts.stale_accesses;
    counts["threadsSurfaced"] = report.counts.threads_surfaced;
    counts["actionableFirst"] = report.counts.actionable_first;
    counts["timelyFirst"] = report.counts.timely_first;
    counts["duplicateHits"] = report.counts.duplicate_hits;

    json flags;
    flags["noArrivals"] = report.no_arrivals;
    flags["noRetrievals"] = report.no_retrievals;
    flags["noHits"] = report.no_hits;
    flags["noThreadsSurfaced"] = report.no_threads_surfaced;

    json j;
    j["deliveryRate"] = report.delivery_rate;
    j["cacheHitRate"] = report.cache_hit_rate;
    j["avgFreshness"] = report.avg_freshness;
    j["staleAccessRate"] = report.stale_access_rate;
    j["actionabilityFirstRatio"] = report.actionability_first_ratio;
    j["timelinessConsistency"] = report.timeliness_consistency;
    j["redundancyRate"] = report.redundancy_rate;
    j["counts"] = counts;
    j["flags"] = flags;
    return j;
}

MetricsReport parse_metrics(const json& j) {
    MetricsReport report;
    report.delivery_rate = j.at("deliveryRate").get<double>();
    report.cache_hit_rate = j.at("cacheHitRate").get<double>();
    report.avg_freshness = j.at("avgFreshness").get<double>();
    report.stale_access_rate = j.at("staleAccessRate").get<double>();
    report.actionability_first_ratio = j.at("actionabilityFirstRatio").get<double>();
    report.timeliness_consistency = j.at("timelinessConsistency").get<double>();
    report.redundancy_rate = j.at("redundancyRate").get<double>();
    const json& counts = j.at("counts");
    report.counts.arrivals = counts.at("arrivals").get<std::uint64_t>();
    report.counts.delivered = counts.at("delivered").get<std::uint64_t>();
    report.counts.hits = counts.at("hits").get<std::uint64_t>();
    report.counts.misses = counts.at("misses").get<std::uint64_t>();
    report.counts.stale_accesses = counts.at("staleAccesses").get<std::uint64_t>();
    report.counts.threads_surfaced = counts.at("threadsSurfaced").get<std::uint64_t>();
    report.counts.actionable_first = counts.at("actionableFirst").get<std::uint64_t>();
    report.counts.timely_first = counts.at("timelyFirst").get<std::uint64_t>();
    report.counts.duplicate_hits = counts.at("duplicateHits").get<std::uint64_t>();
    const json& flags = j.at("flags");
    report.no_arrivals = flags.at("noArrivals").get<bool>();
    report.no_retrievals = flags.at("noRetrievals").get<bool>();
    report.no_hits = flags.at("noHits").get<bool>();
    report.no_threads_surfaced = flags.at("noThreadsSurfaced").get<bool>();
    return report;
}

json event_json(const SimEvent& event) {
    json j;
    j["time"] = event.time;
    j["kind"] = event_kind_name(event.kind);
    j["alertId"] = event.alert_id;
    j["threadId"] = event.thread_id;
    if (event.detail) j["detail"] = *event.detail;
    j["issuedAt"] = event.issued_at;
    j["severity"] = severity_name(event.severity);
    j["urgency"] = urgency_name(event.urgency);
    return j;
}

SimEvent parse_event(const json& j) {
    SimEvent event;
    event.time = j.at("time").get<double>();
    event.kind = event_kind_from_name(j.at("kind").get<std::string>());
    event.alert_id = j.at("alertId").get<std::string>();
    event.thread_id = j.at("threadId").get<std::string>();
    if (j.contains("detail")) event.detail = j["detail"].get<std::string>();
    event.issued_at = j.at("issuedAt").get<std::int64_t>();
    event.severity = severity_from_name(j.at("severity").get<std::string>());
    event.urgency = urgency_from_name(j.at("urgency").get<std::string>());
    return event;
}

json run_result_json_obj(const RunResult& result) {
    json j;
    j["configHash"] = result.config_hash;
    j["streamHash"] = result.stream_hash;
    j["policy"] = result.policy_name;
    j["scenario"] = result.scenario;
    j["seedText"] = result.seed_text;
    j["derivedSeed"] = result.derived_seed;
    j["replicate"] = result.replicate;
    j["metrics"] = metrics_json(result.metrics);
    json regions;
    for (const auto& [id, stat] : result.per_region) {
        regions[id] = json{{"attempted", stat.attempted}, {"delivered", stat.delivered}};
    }
    j["perRegionStats"] = regions;
    json timeline = json::array();
    for (const TimelinePoint& point : result.timeline) {
        timeline.push_back(json{{"time", point.time},
                                {"cacheSize", point.cache_size},
                                {"cumulativeHits", point.cumulative_hits},
                                {"cumulativeMisses", point.cumulative_misses},
                                {"hitRate", point.hit_rate}});
    }
    j["timeline"] = timeline;
    json events = json::array();
    for (const SimEvent& event : result.events) {
        events.push_back(event_json(event));
    }
    j["events"] = events;
    j["samplesCount"] = result.samples_count;
    j["expiredInsertCount"] = result.expired_insert_count;
    return j;
}

} // namespace

std::string alert_to_json(const Alert& alert) { return alert_json(alert).dump(); }

Alert alert_from_json(const std::string& text) { return parse_alert(json::parse(text)); }

std::string shelter_to_json(const Shelter& shelter) { return shelter_json(shelter).dump(); }

Shelter shelter_from_json(const std::string& text) { return parse_shelter(json::parse(text)); }

std::string alerts_to_jsonl(std::span<const Alert> alerts) {
    std::string out;
    for (const Alert& alert : alerts) {
        out += alert_to_json(alert);
        out += '\n';
    }
    return out;
}

std::vector<Alert> alerts_from_jsonl(const std::string& text) {
    std::vector<Alert> alerts;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        if (!line.empty()) {
            alerts.push_back(alert_from_json(line));
        }
    }
    return alerts;
}

std::string sim_config_to_json(const SimConfig& config) {
    json j;
    j["scenario"] = scenario_json(config.scenario);
    j["generator"] = generator_json(config.generator);
    j["policy"] = config.policy_name;
    j["weights"] = json{{"wS", config.weights.severity},
                        {"wU", config.weights.urgency},
                        {"wF", config.weights.freshness}};
    j["lambda"] = config.lambda;
    j["cacheCapacity"] = config.cache_capacity;
    j["retryIntervalSec"] = config.retry_interval_sec;
    j["maxAttempts"] = config.max_attempts;
    j["push"] = json{{"ratePerMinute", config.push.rate_per_minute},
                     {"dedupWindowSec", config.push.dedup_window_sec},
                     {"threshold", config.push.threshold}};
    j["seed"] = json{{"seedText", config.seed.seed_text},
                     {"mode", seed_mode_name(config.seed.mode)},
                     {"replicates", config.seed.replicates}};
    j["timelineResolutionSec"] = config.timeline_resolution_sec;
    j["metrics"] = json{{"timelinessWindowSec", config.metrics.timeliness_window_sec},
                        {"redundancyWindowSec", config.metrics.redundancy_window_sec}};
    return j.dump();
}

SimConfig sim_config_from_json(const std::string& text) {
    const json j = json::parse(text);
    SimConfig config;
    if (j.contains("scenario")) config.scenario = parse_scenario(j["scenario"]);
    if (j.contains("generator")) config.generator = parse_generator(j["generator"]);
    if (j.contains("policy")) config.policy_name = j["policy"].get<std::string>();
    if (j.contains("weights")) {
        const json& w = j["weights"];
        if (w.contains("wS")) config.weights.severity = w["wS"].get<double>();
        if (w.contains("wU")) config.weights.urgency = w["wU"].get<double>();
        if (w.contains("wF")) config.weights.freshness = w["wF"].get<double>();
    }
    if (j.contains("lambda")) config.lambda = j["lambda"].get<double>();
    if (j.contains("cacheCapacity")) config.cache_capacity = j["cacheCapacity"].get<std::size_t>();
    if (j.contains("retryIntervalSec")) {
        config.retry_interval_sec = j["retryIntervalSec"].get<double>();
    }
    if (j.contains("maxAttempts")) config.max_attempts = j["maxAttempts"].get<std::uint32_t>();
    if (j.contains("push")) {
        const json& p = j["push"];
        if (p.contains("ratePerMinute")) {
            config.push.rate_per_minute = p["ratePerMinute"].get<std::uint32_t>();
        }
        if (p.contains("dedupWindowSec")) {
            config.push.dedup_window_sec = p["dedupWindowSec"].get<double>();
        }
        if (p.contains("threshold")) config.push.threshold = p["threshold"].get<double>();
    }
    if (j.contains("seed")) {
        const json& s = j["seed"];
        if (s.contains("seedText")) config.seed.seed_text = s["seedText"].get<std::string>();
        if (s.contains("mode")) {
            config.seed.mode = seed_mode_from_name(s["mode"].get<std::string>());
        }
        if (s.contains("replicates")) config.seed.replicates = s["replicates"].get<std::uint32_t>();
    }
    if (j.contains("timelineResolutionSec")) {
        config.timeline_resolution_sec = j["timelineResolutionSec"].get<double>();
    }
    if (j.contains("metrics")) {
        const json& m = j["metrics"];
        if (m.contains("timelinessWindowSec")) {
            config.metrics.timeliness_window_sec = m["timelinessWindowSec"].get<double>();
        }
        if (m.contains("redundancyWindowSec")) {
            config.metrics.redundancy_window_sec = m["redundancyWindowSec"].get<double>();
        }
    }
    return config;
}

std::string metrics_report_to_json(const MetricsReport& report) {
    return metrics_json(report).dump();
}

MetricsReport metrics_report_from_json(const std::string& text) {
    return parse_metrics(json::parse(text));
}

std::string run_result_to_json(const RunResult& result) {
    return run_result_json_obj(result).dump();
}

RunResult run_result_from_json(const std::string& text) {
    const json j = json::parse(text);
    RunResult result;
    result.config_hash = j.at("configHash").get<std::string>();
    result.stream_hash = j.at("streamHash").get<std::string>();
    result.policy_name = j.at("policy").get<std::string>();
    result.scenario = j.at("scenario").get<std::string>();
    result.seed_text = j.at("seedText").get<std::string>();
    result.derived_seed = j.at("derivedSeed").get<std::uint32_t>();
    result.replicate = j.at("replicate").get<std::uint32_t>();
    result.metrics = parse_metrics(j.at("metrics"));
    for (const auto& [id, stat] : j.at("perRegionStats").items()) {
        result.per_region[id] = RegionStat{stat.at("attempted").get<std::uint64_t>(),
                                           stat.at("delivered").get<std::uint64_t>()};
    }
    for (const auto& point : j.at("timeline")) {
        result.timeline.push_back(TimelinePoint{point.at("time").get<double>(),
                                                point.at("cacheSize").get<std::uint64_t>(),
                                                point.at("cumulativeHits").get<std::uint64_t>(),
                                                point.at("cumulativeMisses").get<std::uint64_t>(),
                                                point.at("hitRate").get<double>()});
    }
    for (const auto& event : j.at("events")) {
        result.events.push_back(parse_event(event));
    }
    result.samples_count = j.at("samplesCount").get<std::uint64_t>();
    result.expired_insert_count = j.at("expiredInsertCount").get<std::uint64_t>();
    return result;
}

std::string config_hash_hex(const SimConfig& config) {
    return fmt::format("{:016x}", fnv1a64(sim_config_to_json(config)));
}

std::string stream_hash_hex(std::span<const Alert> alerts) {
    return fmt::format("{:016x}", fnv1a64(alerts_to_jsonl(alerts)));
}

std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] =
        std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general);
    return std::string(buffer, ptr);
}

std::string timeline_to_csv(const RunResult& result) {
    std::string out = "time,cacheSize,hits,misses,hitRate\n";
    for (const TimelinePoint& point : result.timeline) {
        out += fmt::format("{},{},{},{},{}\n", format_double(point.time), point.cache_size,
                           point.cumulative_hits, point.cumulative_misses,
                           format_double(point.hit_rate));
    }
    return out;
}

} // namespace alertsim
