#pragma once

#include "core/alert.hpp"
#include "core/sketch.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace alertsim {

// Score weights for severity, urgency, and freshness. Code defaults are
// (2, 3, 4); the experiment setting is (4, 5, 5). Absolute scaling of all
// three leaves eviction order unchanged; the relative magnitudes matter.
struct Weights {
    double severity = 2.0;
    double urgency = 3.0;
    double freshness = 4.0;

    bool operator==(const Weights&) const = default;
};

inline constexpr Weights kExperimentWeights{4.0, 5.0, 5.0};

// base(a, t) = wS*s(a) + wU*u(a) + wF*f(a, t).
double base_score(const Alert& alert, double now, const Weights& weights,
                  double lambda = kDefaultLambda);

struct InsertOutcome {
    bool admitted = false;
    bool updated = false;        // existing id refreshed in place
    bool rejected_expired = false;
    std::optional<std::string> evicted_id;
};

// Uniform interface over the four eviction/admission policies. Every
// operation purges expired entries first; no call ever returns an alert with
// expiresAt <= now. Instances are single-owner and externally synchronized.
class CachePolicy {
public:
    virtual ~CachePolicy() = default;

    virtual InsertOutcome insert(const Alert& alert, double now) = 0;
    virtual std::optional<Alert> retrieve(std::string_view id, double now) = 0;

    // Unexpired residents in insertion order. Pointers stay valid until the
    // next mutating call.
    virtual std::vector<const Alert*> contents(double now) = 0;

    virtual std::string_view name() const = 0;
    virtual std::size_t size() const = 0;
    virtual std::size_t capacity() const = 0;
    virtual std::uint64_t expired_insert_count() const = 0;
};

inline constexpr std::string_view kPolicyNames[] = {"lru", "ttlonly", "priorityfresh",
                                                    "paftinylfu"};

// Policy by wire name: "lru" | "ttlonly" | "priorityfresh" | "paftinylfu".
// Throws std::invalid_argument on an unknown name or zero capacity.
std::unique_ptr<CachePolicy> make_policy(std::string_view name, std::size_t capacity,
                                         const Weights& weights = kExperimentWeights,
                                         double lambda = kDefaultLambda);

} // namespace alertsim
