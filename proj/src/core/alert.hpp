#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace alertsim {

// Decay rate of the freshness term, per second. Half-life ln(2)/lambda ~ 416 s.
inline constexpr double kDefaultLambda = 1.0 / 600.0;

enum class Severity { Minor, Moderate, Severe, Extreme, Unknown };
enum class Urgency { Immediate, Expected, Future, Past, Unknown };

// Ordinal encodings feeding the score. Total over the enum; Unknown maps to
// the middle of the scale so eviction order stays deterministic.
double severity_code(Severity severity);
double urgency_code(Urgency urgency);

std::string_view severity_name(Severity severity);
std::string_view urgency_name(Urgency urgency);
Severity severity_from_name(std::string_view name);
Urgency urgency_from_name(std::string_view name);

using LonLat = std::array<double, 2>;

// CAP-subset emergency report. Timestamps are integer seconds from scenario
// start; the simulator itself runs on continuous time.
struct Alert {
    std::string id;
    std::string event_type;
    Severity severity = Severity::Unknown;
    Urgency urgency = Urgency::Unknown;
    std::int64_t issued_at = 0;
    std::int64_t expires_at = 0;
    std::optional<std::string> headline;
    std::optional<std::string> instruction;
    std::optional<std::int64_t> size_bytes;
    std::optional<std::string> geokey;
    std::optional<std::vector<LonLat>> polygon;
    std::optional<std::string> thread_key;

    // Thread identity: threadKey if present, else the alert's own id.
    const std::string& thread_id() const { return thread_key ? *thread_key : id; }

    bool expired_at(double now) const { return static_cast<double>(expires_at) <= now; }

    bool operator==(const Alert&) const = default;
};

enum class ShelterStatus { Open, Full, Closed };

std::string_view shelter_status_name(ShelterStatus status);
ShelterStatus shelter_status_from_name(std::string_view name);

struct Shelter {
    std::string id;
    std::string name;
    std::optional<std::string> address;
    LonLat coordinates{0.0, 0.0};
    std::optional<std::int64_t> capacity;
    ShelterStatus status = ShelterStatus::Open;
    std::int64_t updated_at = 0;
    std::optional<std::string> geokey;

    bool operator==(const Shelter&) const = default;
};

// exp(-lambda * (now - issuedAt)), in (0, 1]. Requires now >= issuedAt;
// clock skew must be handled upstream.
double freshness(const Alert& alert, double now, double lambda = kDefaultLambda);

// True iff urgency is Immediate or severity is Severe/Extreme. Independent of
// freshness, TTL, and time.
bool is_actionable(const Alert& alert);

} // namespace alertsim
