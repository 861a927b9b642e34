#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace alertsim {

// Count-min sketch with 4 hash rows of 4-bit saturating counters, packed
// eight per 32-bit word. Row width is the next power of two >= 4 * capacity;
// after 10 * capacity increments every counter is halved (integer floor) and
// the increment count is halved with it. Estimates never undercount below
// the saturation cap of 15.
class FrequencySketch {
public:
    explicit FrequencySketch(std::size_t capacity);

    void increment(std::string_view key);
    std::uint32_t estimate(std::string_view key) const;

    std::size_t width() const { return mask_ + 1; }
    std::uint64_t sample_size() const { return sample_size_; }
    std::uint64_t increment_count() const { return increments_; }

private:
    static constexpr int kDepth = 4;
    static constexpr std::uint32_t kCounterMax = 15;

    std::uint32_t row_index(int row, std::string_view key) const;
    std::uint32_t counter(int row, std::uint32_t index) const;
    void bump_counter(int row, std::uint32_t index);
    void halve_all();

    std::array<std::vector<std::uint32_t>, kDepth> rows_;
    std::uint32_t mask_ = 0;
    std::uint64_t sample_size_ = 0;
    std::uint64_t increments_ = 0;
};

} // namespace alertsim
