#include "core/push_guard.hpp"

namespace alertsim {

std::string_view suppress_reason_name(SuppressReason reason) {
    switch (reason) {
        case SuppressReason::RateLimited: return "rate_limited";
        case SuppressReason::Duplicate: return "duplicate";
        case SuppressReason::BelowThreshold: return "below_threshold";
    }
    return "rate_limited";
}

PushDecision PushGuard::decide(const Alert& alert, double score, double now) {
    const auto suppress = [&](SuppressReason reason) {
        suppressions_.push_back(SuppressionRecord{now, alert.id, reason});
        return PushDecision{false, reason};
    };

    // Window is half-open (now - 60, now]: a push exactly 60 s old no longer
    // counts against the limit.
    while (!recent_push_times_.empty() && recent_push_times_.front() <= now - 60.0) {
        recent_push_times_.pop_front();
    }
    if (recent_push_times_.size() >= config_.rate_per_minute) {
        return suppress(SuppressReason::RateLimited);
    }

    const std::string& thread = alert.thread_id();
    if (auto it = last_push_per_thread_.find(thread); it != last_push_per_thread_.end() &&
                                                      it->second > now - config_.dedup_window_sec) {
        return suppress(SuppressReason::Duplicate);
    }

    const bool high_impact =
        alert.severity == Severity::Extreme || alert.urgency == Urgency::Immediate;
    if (score < config_.threshold && !high_impact) {
        return suppress(SuppressReason::BelowThreshold);
    }

    recent_push_times_.push_back(now);
    last_push_per_thread_[thread] = now;
    ++push_count_;
    return PushDecision{true, std::nullopt};
}

} // namespace alertsim
