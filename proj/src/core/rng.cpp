#include "core/rng.hpp"

#include <stdexcept>

namespace alertsim {

std::uint32_t fnv1a32(std::string_view bytes, std::uint32_t basis) {
    std::uint32_t hash = basis;
    for (unsigned char byte : bytes) {
        hash ^= byte;
        hash *= 16777619u;
    }
    return hash;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char byte : bytes) {
        hash ^= byte;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::uint32_t derive_seed(std::string_view seed_text) {
    if (seed_text.empty()) {
        throw std::invalid_argument("seed text must be nonempty");
    }
    return fnv1a32(seed_text);
}

std::uint32_t Rng::next_u32() {
    state_ += 0x6D2B79F5u;
    std::uint32_t t = state_;
    t = (t ^ (t >> 15)) * (t | 1u);
    t ^= t + (t ^ (t >> 7)) * (t | 61u);
    return t ^ (t >> 14);
}

double Rng::next_float() {
    return static_cast<double>(next_u32()) / 4294967296.0;
}

double Rng::next_range(double lo, double hi) {
    if (!(lo < hi)) {
        throw std::invalid_argument("next_range requires lo < hi");
    }
    return lo + next_float() * (hi - lo);
}

std::size_t Rng::next_choice(std::span<const double> weights) {
    if (weights.empty()) {
        throw std::invalid_argument("next_choice requires nonempty weights");
    }
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) {
            throw std::invalid_argument("next_choice weights must be nonnegative");
        }
        total += w;
    }
    if (total <= 0.0) {
        throw std::invalid_argument("next_choice weights must have positive sum");
    }
    const double r = next_float() * total;
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0.0) {
            cumulative += weights[i];
            last_positive = i;
            if (r < cumulative) {
                return i;
            }
        }
    }
    // Floating-point edge: r landed on the cumulative total.
    return last_positive;
}

std::uint32_t SeedSpec::seed_for_replicate(std::uint32_t k) const {
    const std::uint32_t base = derive_seed(seed_text);
    return mode == Mode::Fixed ? base : (base ^ k);
}

std::string_view seed_mode_name(SeedSpec::Mode mode) {
    return mode == SeedSpec::Mode::Fixed ? "fixed" : "perReplicate";
}

SeedSpec::Mode seed_mode_from_name(std::string_view name) {
    if (name == "fixed") return SeedSpec::Mode::Fixed;
    if (name == "perReplicate") return SeedSpec::Mode::PerReplicate;
    throw std::invalid_argument("unknown seed mode: " + std::string(name));
}

} // namespace alertsim
