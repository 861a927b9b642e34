#include "core/simulation.hpp"

#include "core/json_io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alertsim {

void validate(const SimConfig& config) {
    const auto fail = [](const char* what) { throw std::invalid_argument(what); };
    if (config.scenario.base_reliability < 0.0 || config.scenario.base_reliability > 1.0) {
        fail("reliability must lie in [0, 1]");
    }
    if (config.scenario.alert_count == 0) fail("alerts must be at least 1");
    if (!(config.scenario.duration_sec > 0.0)) fail("duration must be positive");
    if (config.scenario.query_rate_per_min < 0.0) fail("query-rate must be nonnegative");
    for (const OutageWindow& window : config.scenario.outage_windows) {
        if (window.start > window.end || window.start < 0.0 ||
            window.end > config.scenario.duration_sec) {
            fail("outage windows must lie within [0, duration]");
        }
    }
    if (config.generator.event_types.empty()) fail("event types must be nonempty");
    if (!(config.generator.ttl_range_sec[0] > 0.0) ||
        config.generator.ttl_range_sec[0] > config.generator.ttl_range_sec[1]) {
        fail("ttl range must satisfy 0 < lo <= hi");
    }
    if (config.generator.update_probability < 0.0 || config.generator.update_probability > 1.0) {
        fail("update probability must lie in [0, 1]");
    }
    if (config.generator.region_count == 0) fail("region count must be at least 1");
    const bool known_policy =
        std::find(std::begin(kPolicyNames), std::end(kPolicyNames), config.policy_name) !=
        std::end(kPolicyNames);
    if (!known_policy) {
        throw std::invalid_argument("unknown policy: " + config.policy_name);
    }
    if (config.weights.severity < 0.0 || config.weights.urgency < 0.0 ||
        config.weights.freshness < 0.0) {
        fail("weights must be nonnegative");
    }
    if (!(config.lambda > 0.0)) fail("lambda must be positive");
    if (config.cache_capacity == 0) fail("cache-size must be at least 1");
    if (!(config.retry_interval_sec > 0.0)) fail("retry-interval must be positive");
    if (config.max_attempts == 0) fail("max-attempts must be at least 1");
    if (config.seed.seed_text.empty()) fail("seed must be nonempty");
    if (config.seed.replicates == 0) fail("replicates must be at least 1");
    if (!(config.timeline_resolution_sec > 0.0)) fail("timeline resolution must be positive");
    if (!(config.metrics.timeliness_window_sec > 0.0)) fail("timeliness window must be positive");
    if (!(config.metrics.redundancy_window_sec > 0.0)) fail("redundancy window must be positive");
}

DeliveryResult attempt_delivery(Rng& rng, const Alert& alert, const Region& region,
                                const ScenarioSpec& spec, double retry_interval_sec,
                                std::uint32_t max_attempts, double now) {
    if (max_attempts == 0) {
        throw std::invalid_argument("max attempts must be at least 1");
    }
    (void)alert;
    const double base_p =
        std::clamp(spec.base_reliability * region.reliability_multiplier, 0.0, 1.0);
    DeliveryResult result;
    result.attempts = max_attempts;
    for (std::uint32_t k = 0; k < max_attempts; ++k) {
        const double attempt_time = now + static_cast<double>(k) * retry_interval_sec;
        double p = base_p;
        for (const OutageWindow& window : spec.outage_windows) {
            if (window.contains(attempt_time)) {
                p = 0.0;
                break;
            }
        }
        const double draw = rng.next_float();
        // Draws continue past the first success to keep consumption fixed.
        if (!result.delivered && draw < p) {
            result.delivered = true;
            result.delivery_time = attempt_time;
            result.attempts = k + 1;
        }
    }
    return result;
}

std::optional<Alert> sample_query(Rng& rng, const std::vector<const Alert*>& residents) {
    if (residents.empty()) {
        return std::nullopt;
    }
    std::vector<double> weights;
    weights.reserve(residents.size());
    for (const Alert* alert : residents) {
        weights.push_back(urgency_code(alert->urgency));
    }
    return *residents[rng.next_choice(weights)];
}

namespace {

enum class Step : int {
    Arrival = 0,
    Retry = 1,
    DeliveryFailure = 2,
    DeliverySuccess = 3,
    Query = 4,
    TimelineSample = 5,
};

struct Scheduled {
    double time;
    Step step;
    std::uint64_t seq;
    std::size_t index; // alert index or query index
};

SimEvent alert_event(double time, EventKind kind, const Alert& alert) {
    SimEvent event;
    event.time = time;
    event.kind = kind;
    event.alert_id = alert.id;
    event.thread_id = alert.thread_id();
    event.issued_at = alert.issued_at;
    event.severity = alert.severity;
    event.urgency = alert.urgency;
    return event;
}

} // namespace

RunResult run_simulation(const SimConfig& config, std::uint32_t replicate) {
    return run_simulation_with_seed(config, config.seed.seed_for_replicate(replicate),
                                    replicate);
}

RunResult run_simulation_with_seed(const SimConfig& config, std::uint32_t derived_seed,
                                   std::uint32_t replicate) {
    validate(config);

    RunResult result;
    result.config_hash = config_hash_hex(config);
    result.policy_name = config.policy_name;
    result.scenario = std::string(scenario_name(config.scenario.name));
    result.seed_text = config.seed.seed_text;
    result.derived_seed = derived_seed;
    result.replicate = replicate;

    // All randomness flows through this one generator, consumed in fixed
    // phases: environment, alert stream, delivery draws, query schedule,
    // then query sampling inside the loop. The first four phases never
    // depend on the policy, so runs sharing a seed face identical streams
    // and delivery outcomes.
    Rng rng(derived_seed);

    const std::vector<Region> regions = generate_environment(rng, config.generator);
    const std::vector<Alert> alerts =
        generate_alert_stream(rng, config.scenario, config.generator, regions);
    result.stream_hash = stream_hash_hex(alerts);

    std::vector<DeliveryResult> deliveries;
    deliveries.reserve(alerts.size());
    std::vector<std::size_t> alert_region(alerts.size());
    for (std::size_t i = 0; i < alerts.size(); ++i) {
        alert_region[i] = region_index_for(alerts[i], regions);
        deliveries.push_back(attempt_delivery(rng, alerts[i], regions[alert_region[i]],
                                              config.scenario, config.retry_interval_sec,
                                              config.max_attempts,
                                              static_cast<double>(alerts[i].issued_at)));
    }

    std::vector<double> query_times;
    if (config.scenario.query_rate_per_min > 0.0) {
        const double mean_gap = 60.0 / config.scenario.query_rate_per_min;
        double t = 0.0;
        while (true) {
            t += -mean_gap * std::log(1.0 - rng.next_float());
            if (t > config.scenario.duration_sec) {
                break;
            }
            query_times.push_back(t);
        }
    }

    // Build the time-ordered schedule. Ties resolve by step rank, then by
    // creation order, so replays process identically.
    std::vector<Scheduled> schedule;
    std::uint64_t seq = 0;
    for (std::size_t i = 0; i < alerts.size(); ++i) {
        const double issued = static_cast<double>(alerts[i].issued_at);
        schedule.push_back(Scheduled{issued, Step::Arrival, seq++, i});
        const DeliveryResult& delivery = deliveries[i];
        for (std::uint32_t k = 1; k < delivery.attempts; ++k) {
            schedule.push_back(Scheduled{issued + static_cast<double>(k) *
                                                      config.retry_interval_sec,
                                         Step::Retry, seq++, i});
        }
        const double final_time =
            issued + static_cast<double>(delivery.attempts - 1) * config.retry_interval_sec;
        schedule.push_back(Scheduled{
            final_time, delivery.delivered ? Step::DeliverySuccess : Step::DeliveryFailure,
            seq++, i});
    }
    for (std::size_t q = 0; q < query_times.size(); ++q) {
        schedule.push_back(Scheduled{query_times[q], Step::Query, seq++, q});
    }
    const auto sample_count = static_cast<std::size_t>(config.scenario.duration_sec /
                                                       config.timeline_resolution_sec);
    for (std::size_t s = 1; s <= sample_count; ++s) {
        schedule.push_back(Scheduled{static_cast<double>(s) * config.timeline_resolution_sec,
                                     Step::TimelineSample, seq++, s});
    }
    std::sort(schedule.begin(), schedule.end(), [](const Scheduled& a, const Scheduled& b) {
        if (a.time != b.time) return a.time < b.time;
        if (a.step != b.step) return static_cast<int>(a.step) < static_cast<int>(b.step);
        return a.seq < b.seq;
    });

    auto policy =
        make_policy(config.policy_name, config.cache_capacity, config.weights, config.lambda);
    PushGuard push_guard(config.push);

    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    for (const Region& region : regions) {
        result.per_region.emplace(region.id, RegionStat{});
    }

    for (const Scheduled& item : schedule) {
        switch (item.step) {
            case Step::Arrival: {
                const Alert& alert = alerts[item.index];
                result.per_region[regions[alert_region[item.index]].id].attempted += 1;
                result.events.push_back(alert_event(item.time, EventKind::Arrival, alert));
                break;
            }
            case Step::Retry: {
                result.events.push_back(
                    alert_event(item.time, EventKind::Retry, alerts[item.index]));
                break;
            }
            case Step::DeliveryFailure: {
                SimEvent event =
                    alert_event(item.time, EventKind::DeliveryFailure, alerts[item.index]);
                event.detail = "undelivered after max attempts";
                result.events.push_back(std::move(event));
                break;
            }
            case Step::DeliverySuccess: {
                const Alert& alert = alerts[item.index];
                result.per_region[regions[alert_region[item.index]].id].delivered += 1;
                SimEvent event = alert_event(item.time, EventKind::DeliverySuccess, alert);
                event.detail = fmt::format("attempts={}", deliveries[item.index].attempts);
                result.events.push_back(std::move(event));

                const InsertOutcome outcome = policy->insert(alert, item.time);
                if (outcome.rejected_expired) {
                    result.expired_insert_count += 1;
                    break;
                }
                if (outcome.evicted_id) {
                    SimEvent evict;
                    evict.time = item.time;
                    evict.kind = EventKind::Evict;
                    evict.alert_id = *outcome.evicted_id;
                    result.events.push_back(std::move(evict));
                }

                const double score = base_score(alert, item.time, config.weights, config.lambda);
                const PushDecision decision = push_guard.decide(alert, score, item.time);
                SimEvent push_event = alert_event(
                    item.time, decision.pushed ? EventKind::Push : EventKind::Suppress, alert);
                if (!decision.pushed) {
                    push_event.detail = std::string(suppress_reason_name(*decision.reason));
                }
                result.events.push_back(std::move(push_event));
                break;
            }
            case Step::Query: {
                SimEvent query;
                query.time = item.time;
                query.kind = EventKind::Query;
                result.events.push_back(query);

                const auto residents = policy->contents(item.time);
                const std::optional<Alert> sampled = sample_query(rng, residents);
                if (!sampled) {
                    ++misses;
                    SimEvent miss;
                    miss.time = item.time;
                    miss.kind = EventKind::Miss;
                    miss.detail = "cache empty";
                    result.events.push_back(std::move(miss));
                    break;
                }
                const std::string id = sampled->id;
                const std::optional<Alert> fetched = policy->retrieve(id, item.time);
                if (fetched) {
                    ++hits;
                    result.events.push_back(alert_event(item.time, EventKind::Hit, *fetched));
                } else {
                    ++misses;
                    SimEvent miss = alert_event(item.time, EventKind::Miss, *sampled);
                    miss.detail = "sampled entry gone before retrieve";
                    result.events.push_back(std::move(miss));
                }
                break;
            }
            case Step::TimelineSample: {
                TimelinePoint point;
                point.time = item.time;
                point.cache_size = policy->contents(item.time).size();
                point.cumulative_hits = hits;
                point.cumulative_misses = misses;
                point.hit_rate =
                    static_cast<double>(hits) / static_cast<double>(std::max<std::uint64_t>(
                                                    1, hits + misses));
                result.timeline.push_back(point);
                break;
            }
        }
    }

    result.samples_count = hits + misses;
    result.metrics = compute_metrics(result.events, config.lambda, config.metrics);
    return result;
}

} // namespace alertsim
