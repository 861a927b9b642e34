#include "core/policies.hpp"

#include <algorithm>
#include <stdexcept>

namespace alertsim {

double base_score(const Alert& alert, double now, const Weights& weights, double lambda) {
    return weights.severity * severity_code(alert.severity) +
           weights.urgency * urgency_code(alert.urgency) +
           weights.freshness * freshness(alert, now, lambda);
}

namespace {

class BasePolicy : public CachePolicy {
public:
    BasePolicy(std::size_t capacity) : capacity_(capacity) {
        if (capacity == 0) {
            throw std::invalid_argument("cache capacity must be positive");
        }
    }

    std::size_t size() const override { return entries_.size(); }
    std::size_t capacity() const override { return capacity_; }
    std::uint64_t expired_insert_count() const override { return expired_rejects_; }

    InsertOutcome insert(const Alert& alert, double now) override {
        purge(now);
        InsertOutcome outcome;
        if (alert.expired_at(now)) {
            // Counted, not fatal: corrections can arrive past their expiry.
            ++expired_rejects_;
            outcome.rejected_expired = true;
            return outcome;
        }
        on_insert_attempt(alert);
        if (Entry* existing = find(alert.id)) {
            existing->alert = alert;
            existing->touched_seq = next_seq_++;
            outcome.admitted = true;
            outcome.updated = true;
            return outcome;
        }
        if (entries_.size() >= capacity_) {
            const std::size_t victim = victim_index(now);
            if (!admit_over(alert, entries_[victim].alert)) {
                return outcome; // newcomer rejected, victim kept
            }
            outcome.evicted_id = entries_[victim].alert.id;
            entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(victim));
        }
        entries_.push_back(Entry{alert, next_seq_, next_seq_});
        ++next_seq_;
        outcome.admitted = true;
        return outcome;
    }

    std::optional<Alert> retrieve(std::string_view id, double now) override {
        purge(now);
        on_lookup(id);
        if (Entry* entry = find(id)) {
            if (touch_on_hit()) {
                entry->touched_seq = next_seq_++;
            }
            return entry->alert;
        }
        return std::nullopt;
    }

    std::vector<const Alert*> contents(double now) override {
        purge(now);
        std::vector<const Alert*> out;
        out.reserve(entries_.size());
        for (const Entry& entry : entries_) {
            out.push_back(&entry.alert);
        }
        return out;
    }

protected:
    struct Entry {
        Alert alert;
        std::uint64_t inserted_seq;
        std::uint64_t touched_seq;
    };

    // Index of the entry to evict when full. Called only with entries present.
    virtual std::size_t victim_index(double now) const = 0;
    // Admission contest; every policy except PAFTinyLFU always admits.
    virtual bool admit_over(const Alert&, const Alert&) { return true; }
    virtual bool touch_on_hit() const { return false; }
    virtual void on_insert_attempt(const Alert&) {}
    virtual void on_lookup(std::string_view) {}

    void purge(double now) {
        std::erase_if(entries_, [now](const Entry& e) { return e.alert.expired_at(now); });
    }

    Entry* find(std::string_view id) {
        for (Entry& entry : entries_) {
            if (entry.alert.id == id) {
                return &entry;
            }
        }
        return nullptr;
    }

    std::size_t least_recently_touched() const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < entries_.size(); ++i) {
            if (entries_[i].touched_seq < entries_[best].touched_seq) {
                best = i;
            }
        }
        return best;
    }

    std::vector<Entry> entries_;
    std::size_t capacity_;
    std::uint64_t next_seq_ = 0;
    std::uint64_t expired_rejects_ = 0;
};

// Ties on the eviction key fall back to earlier issuedAt, then lexicographic
// id, so replays evict identically.
bool tie_before(const Alert& a, const Alert& b) {
    if (a.issued_at != b.issued_at) {
        return a.issued_at < b.issued_at;
    }
    return a.id < b.id;
}

class LruPolicy final : public BasePolicy {
public:
    using BasePolicy::BasePolicy;
    std::string_view name() const override { return "lru"; }

protected:
    std::size_t victim_index(double) const override { return least_recently_touched(); }
    bool touch_on_hit() const override { return true; }
};

class TtlOnlyPolicy final : public BasePolicy {
public:
    using BasePolicy::BasePolicy;
    std::string_view name() const override { return "ttlonly"; }

protected:
    // Keeps alerts until they expire; at capacity the entry closest to its
    // expiry goes first.
    std::size_t victim_index(double) const override {
        std::size_t best = 0;
        for (std::size_t i = 1; i < entries_.size(); ++i) {
            const Alert& candidate = entries_[i].alert;
            const Alert& incumbent = entries_[best].alert;
            if (candidate.expires_at < incumbent.expires_at ||
                (candidate.expires_at == incumbent.expires_at &&
                 tie_before(candidate, incumbent))) {
                best = i;
            }
        }
        return best;
    }
};

class PriorityFreshPolicy final : public BasePolicy {
public:
    PriorityFreshPolicy(std::size_t capacity, const Weights& weights, double lambda)
        : BasePolicy(capacity), weights_(weights), lambda_(lambda) {}

    std::string_view name() const override { return "priorityfresh"; }

protected:
    // Scores are recomputed at eviction time: freshness is time-varying.
    std::size_t victim_index(double now) const override {
        std::size_t best = 0;
        double best_score_value = base_score(entries_[0].alert, now, weights_, lambda_);
        for (std::size_t i = 1; i < entries_.size(); ++i) {
            const double score = base_score(entries_[i].alert, now, weights_, lambda_);
            if (score < best_score_value ||
                (score == best_score_value &&
                 tie_before(entries_[i].alert, entries_[best].alert))) {
                best = i;
                best_score_value = score;
            }
        }
        return best;
    }

private:
    Weights weights_;
    double lambda_;
};

class PafTinyLfuPolicy final : public BasePolicy {
public:
    PafTinyLfuPolicy(std::size_t capacity) : BasePolicy(capacity), sketch_(capacity) {}

    std::string_view name() const override { return "paftinylfu"; }

protected:
    std::size_t victim_index(double) const override { return least_recently_touched(); }

    bool admit_over(const Alert& newcomer, const Alert& victim) override {
        return sketch_.estimate(newcomer.id) > sketch_.estimate(victim.id);
    }

    bool touch_on_hit() const override { return true; }

    // The sketch counts both insert attempts and lookups.
    void on_insert_attempt(const Alert& alert) override { sketch_.increment(alert.id); }
    void on_lookup(std::string_view id) override { sketch_.increment(id); }

private:
    FrequencySketch sketch_;
};

} // namespace

std::unique_ptr<CachePolicy> make_policy(std::string_view name, std::size_t capacity,
                                         const Weights& weights, double lambda) {
    if (name == "lru") return std::make_unique<LruPolicy>(capacity);
    if (name == "ttlonly") return std::make_unique<TtlOnlyPolicy>(capacity);
    if (name == "priorityfresh") {
        return std::make_unique<PriorityFreshPolicy>(capacity, weights, lambda);
    }
    if (name == "paftinylfu") return std::make_unique<PafTinyLfuPolicy>(capacity);
    throw std::invalid_argument("unknown policy: " + std::string(name));
}

} // namespace alertsim
