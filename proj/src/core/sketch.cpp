#include "core/sketch.hpp"

#include "core/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace alertsim {

namespace {

std::size_t next_power_of_two(std::size_t v) {
    std::size_t p = 1;
    while (p < v) {
        p <<= 1;
    }
    return p;
}

} // namespace

FrequencySketch::FrequencySketch(std::size_t capacity) {
    if (capacity == 0) {
        throw std::invalid_argument("sketch capacity must be positive");
    }
    const std::size_t width = std::max<std::size_t>(8, next_power_of_two(capacity * 4));
    mask_ = static_cast<std::uint32_t>(width - 1);
    sample_size_ = static_cast<std::uint64_t>(capacity) * 10;
    for (auto& row : rows_) {
        row.assign(width / 8, 0u); // 8 packed counters per word
    }
}

std::uint32_t FrequencySketch::row_index(int row, std::string_view key) const {
    // FNV-1a seeded with the row salt so the four rows hash independently.
    std::uint32_t hash = fnv1a32(std::string_view(), 2166136261u);
    hash ^= static_cast<std::uint32_t>(row);
    hash *= 16777619u;
    hash = fnv1a32(key, hash);
    return hash & mask_;
}

std::uint32_t FrequencySketch::counter(int row, std::uint32_t index) const {
    const std::uint32_t word = rows_[static_cast<std::size_t>(row)][index / 8];
    const std::uint32_t shift = (index % 8) * 4;
    return (word >> shift) & kCounterMax;
}

void FrequencySketch::bump_counter(int row, std::uint32_t index) {
    std::uint32_t& word = rows_[static_cast<std::size_t>(row)][index / 8];
    const std::uint32_t shift = (index % 8) * 4;
    if (((word >> shift) & kCounterMax) < kCounterMax) {
        word += 1u << shift;
    }
}

void FrequencySketch::halve_all() {
    for (auto& row : rows_) {
        for (std::uint32_t& word : row) {
            word = (word >> 1) & 0x77777777u;
        }
    }
}

void FrequencySketch::increment(std::string_view key) {
    for (int row = 0; row < kDepth; ++row) {
        bump_counter(row, row_index(row, key));
    }
    if (++increments_ >= sample_size_) {
        halve_all();
        increments_ /= 2;
    }
}

std::uint32_t FrequencySketch::estimate(std::string_view key) const {
    std::uint32_t best = kCounterMax;
    for (int row = 0; row < kDepth; ++row) {
        best = std::min(best, counter(row, row_index(row, key)));
    }
    return best;
}

} // namespace alertsim
