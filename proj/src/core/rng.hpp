#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace alertsim {

// FNV-1a over UTF-8 bytes. The 32-bit variant turns seed strings into RNG
// seeds; the 64-bit variant fingerprints configs and alert streams.
std::uint32_t fnv1a32(std::string_view bytes, std::uint32_t basis = 2166136261u);
std::uint64_t fnv1a64(std::string_view bytes);

// Seed text -> 32-bit seed. Rejects the empty string.
std::uint32_t derive_seed(std::string_view seed_text);

// Mulberry32. Single 32-bit state word; every random draw in the simulator
// flows through one of these so runs replay bit-for-bit.
class Rng {
public:
    explicit Rng(std::uint32_t seed) : state_(seed) {}

    std::uint32_t next_u32();

    // next_u32 / 2^32, in [0, 1).
    double next_float();

    // Affine map of next_float onto [lo, hi). Requires lo < hi.
    double next_range(double lo, double hi);

    // Weighted index draw from a single next_float against the cumulative
    // distribution. Weights must be nonempty, nonnegative, positive sum.
    std::size_t next_choice(std::span<const double> weights);

    std::uint32_t state() const { return state_; }

private:
    std::uint32_t state_;
};

struct SeedSpec {
    enum class Mode { Fixed, PerReplicate };

    std::string seed_text = "FISHDINNER";
    Mode mode = Mode::Fixed;
    std::uint32_t replicates = 1;

    // Fixed mode: every replicate shares the derived seed.
    // PerReplicate: replicate k (from 0) uses derived_seed XOR k.
    std::uint32_t seed_for_replicate(std::uint32_t k) const;
};

std::string_view seed_mode_name(SeedSpec::Mode mode);
SeedSpec::Mode seed_mode_from_name(std::string_view name);

} // namespace alertsim
