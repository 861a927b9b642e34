#pragma once

#include "core/alert.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace alertsim {

enum class EventKind {
    Arrival,
    DeliverySuccess,
    DeliveryFailure,
    Retry,
    Query,
    Hit,
    Miss,
    StaleAccess,
    Evict,
    Push,
    Suppress,
};

std::string_view event_kind_name(EventKind kind);
EventKind event_kind_from_name(std::string_view name);

// One simulator event. Hit events additionally carry the surfaced alert's
// issue time, severity, and urgency so the metric suite can be computed from
// the event log alone.
struct SimEvent {
    double time = 0.0;
    EventKind kind{};
    std::string alert_id;
    std::string thread_id;
    std::optional<std::string> detail;
    std::int64_t issued_at = 0;
    Severity severity = Severity::Unknown;
    Urgency urgency = Urgency::Unknown;

    bool operator==(const SimEvent&) const = default;
};

} // namespace alertsim
