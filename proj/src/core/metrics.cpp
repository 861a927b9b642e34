#include "core/metrics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace alertsim {

std::string_view event_kind_name(EventKind kind) {
    switch (kind) {
        case EventKind::Arrival: return "arrival";
        case EventKind::DeliverySuccess: return "deliverySuccess";
        case EventKind::DeliveryFailure: return "deliveryFailure";
        case EventKind::Retry: return "retry";
        case EventKind::Query: return "query";
        case EventKind::Hit: return "hit";
        case EventKind::Miss: return "miss";
        case EventKind::StaleAccess: return "staleAccess";
        case EventKind::Evict: return "evict";
        case EventKind::Push: return "push";
        case EventKind::Suppress: return "suppress";
    }
    return "arrival";
}

EventKind event_kind_from_name(std::string_view name) {
    if (name == "arrival") return EventKind::Arrival;
    if (name == "deliverySuccess") return EventKind::DeliverySuccess;
    if (name == "deliveryFailure") return EventKind::DeliveryFailure;
    if (name == "retry") return EventKind::Retry;
    if (name == "query") return EventKind::Query;
    if (name == "hit") return EventKind::Hit;
    if (name == "miss") return EventKind::Miss;
    if (name == "staleAccess") return EventKind::StaleAccess;
    if (name == "evict") return EventKind::Evict;
    if (name == "push") return EventKind::Push;
    if (name == "suppress") return EventKind::Suppress;
    throw std::invalid_argument("unknown event kind: " + std::string(name));
}

namespace {

struct FirstHit {
    double time = 0.0;
    std::int64_t issued_at = 0;
    bool actionable = false;
};

// Earliest hit per thread, in event-log order.
std::map<std::string, FirstHit> first_hits(std::span<const SimEvent> events) {
    std::map<std::string, FirstHit> firsts;
    for (const SimEvent& event : events) {
        if (event.kind != EventKind::Hit) {
            continue;
        }
        if (firsts.contains(event.thread_id)) {
            continue;
        }
        Alert probe;
        probe.severity = event.severity;
        probe.urgency = event.urgency;
        firsts.emplace(event.thread_id,
                       FirstHit{event.time, event.issued_at, is_actionable(probe)});
    }
    return firsts;
}

double ratio(std::uint64_t numerator, std::uint64_t denominator) {
    return denominator == 0 ? 0.0
                            : static_cast<double>(numerator) / static_cast<double>(denominator);
}

std::uint64_t count_kind(std::span<const SimEvent> events, EventKind kind) {
    std::uint64_t n = 0;
    for (const SimEvent& event : events) {
        n += event.kind == kind ? 1 : 0;
    }
    return n;
}

} // namespace

double delivery_rate(std::span<const SimEvent> events) {
    return ratio(count_kind(events, EventKind::DeliverySuccess),
                 count_kind(events, EventKind::Arrival));
}

double cache_hit_rate(std::span<const SimEvent> events) {
    const std::uint64_t hits = count_kind(events, EventKind::Hit);
    return ratio(hits, hits + count_kind(events, EventKind::Miss));
}

double avg_freshness(std::span<const SimEvent> events, double lambda) {
    double sum = 0.0;
    std::uint64_t hits = 0;
    for (const SimEvent& event : events) {
        if (event.kind != EventKind::Hit) {
            continue;
        }
        sum += std::exp(-lambda * (event.time - static_cast<double>(event.issued_at)));
        ++hits;
    }
    return hits == 0 ? 0.0 : sum / static_cast<double>(hits);
}

double stale_access_rate(std::span<const SimEvent> events) {
    const std::uint64_t stale = count_kind(events, EventKind::StaleAccess);
    const std::uint64_t retrievals =
        count_kind(events, EventKind::Hit) + count_kind(events, EventKind::Miss) + stale;
    return ratio(stale, retrievals);
}

double actionability_first(std::span<const SimEvent> events) {
    const auto firsts = first_hits(events);
    std::uint64_t actionable = 0;
    for (const auto& [thread, first] : firsts) {
        actionable += first.actionable ? 1 : 0;
    }
    return ratio(actionable, firsts.size());
}

double timeliness_consistency(std::span<const SimEvent> events, double delta) {
    if (!(delta > 0.0)) {
        throw std::invalid_argument("timeliness window must be positive");
    }
    const auto firsts = first_hits(events);
    std::uint64_t timely = 0;
    for (const auto& [thread, first] : firsts) {
        timely += (first.time - static_cast<double>(first.issued_at) <= delta) ? 1 : 0;
    }
    return ratio(timely, firsts.size());
}

double redundancy_rate(std::span<const SimEvent> events, double window) {
    if (!(window > 0.0)) {
        throw std::invalid_argument("redundancy window must be positive");
    }
    std::map<std::string, double> last_hit;
    std::uint64_t duplicates = 0;
    std::uint64_t hits = 0;
    for (const SimEvent& event : events) {
        if (event.kind != EventKind::Hit) {
            continue;
        }
        ++hits;
        if (auto it = last_hit.find(event.thread_id); it != last_hit.end()) {
            duplicates += (event.time - it->second < window) ? 1 : 0;
        }
        last_hit[event.thread_id] = event.time;
    }
    return ratio(duplicates, hits);
}

MetricsReport compute_metrics(std::span<const SimEvent> events, double lambda,
                              const MetricsConfig& config) {
    MetricsReport report;
    MetricCounts& counts = report.counts;
    counts.arrivals = count_kind(events, EventKind::Arrival);
    counts.delivered = count_kind(events, EventKind::DeliverySuccess);
    counts.hits = count_kind(events, EventKind::Hit);
    counts.misses = count_kind(events, EventKind::Miss);
    counts.stale_accesses = count_kind(events, EventKind::StaleAccess);

    const auto firsts = first_hits(events);
    counts.threads_surfaced = firsts.size();
    for (const auto& [thread, first] : firsts) {
        counts.actionable_first += first.actionable ? 1 : 0;
        counts.timely_first +=
            (first.time - static_cast<double>(first.issued_at) <= config.timeliness_window_sec)
                ? 1
                : 0;
    }

    std::map<std::string, double> last_hit;
    for (const SimEvent& event : events) {
        if (event.kind != EventKind::Hit) {
            continue;
        }
        if (auto it = last_hit.find(event.thread_id); it != last_hit.end()) {
            counts.duplicate_hits +=
                (event.time - it->second < config.redundancy_window_sec) ? 1 : 0;
        }
        last_hit[event.thread_id] = event.time;
    }

    report.delivery_rate = delivery_rate(events);
    report.cache_hit_rate = cache_hit_rate(events);
    report.avg_freshness = avg_freshness(events, lambda);
    report.stale_access_rate = stale_access_rate(events);
    report.actionability_first_ratio = actionability_first(events);
    report.timeliness_consistency = timeliness_consistency(events, config.timeliness_window_sec);
    report.redundancy_rate = redundancy_rate(events, config.redundancy_window_sec);
    report.no_arrivals = counts.arrivals == 0;
    report.no_retrievals = counts.hits + counts.misses + counts.stale_accesses == 0;
    report.no_hits = counts.hits == 0;
    report.no_threads_surfaced = counts.threads_surfaced == 0;
    return report;
}

} // namespace alertsim
