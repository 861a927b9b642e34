#pragma once

#include "core/alert.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace alertsim {

// Push rules: R pushes per minute, a per-thread dedup window of D seconds,
// and a base-score threshold with fail-open for Extreme/Immediate alerts.
// R = 0 means push delivery is disabled.
struct PushConfig {
    std::uint32_t rate_per_minute = 0;
    double dedup_window_sec = 30.0;
    double threshold = 25.0;

    bool enabled() const { return rate_per_minute > 0; }

    bool operator==(const PushConfig&) const = default;
};

enum class SuppressReason { RateLimited, Duplicate, BelowThreshold };

std::string_view suppress_reason_name(SuppressReason reason);

struct PushDecision {
    bool pushed = false;
    std::optional<SuppressReason> reason;
};

struct SuppressionRecord {
    double time = 0.0;
    std::string alert_id;
    SuppressReason reason{};
};

// Single-owner per simulated device. A push happens only if all three
// conditions hold, evaluated in this order (the first failure is the logged
// reason): rate limit, thread dedup, then score threshold. Fail-open applies
// only to the threshold clause; high-impact alerts still obey rate and dedup.
class PushGuard {
public:
    explicit PushGuard(PushConfig config) : config_(config) {}

    PushDecision decide(const Alert& alert, double score, double now);

    const PushConfig& config() const { return config_; }
    const std::vector<SuppressionRecord>& suppressions() const { return suppressions_; }
    std::uint64_t push_count() const { return push_count_; }

private:
    PushConfig config_;
    std::deque<double> recent_push_times_; // within (now - 60, now]
    std::map<std::string, double> last_push_per_thread_;
    std::vector<SuppressionRecord> suppressions_;
    std::uint64_t push_count_ = 0;
};

} // namespace alertsim
