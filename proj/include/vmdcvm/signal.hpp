#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vmdcvm {

/// Uniformly sampled, finite, real-valued series of at least kMinLength samples.
class Signal {
public:
    static constexpr std::size_t kMinLength = 8;

    /// Throws DataError when the series is too short or holds a non-finite sample.
    explicit Signal(std::vector<double> samples);

    [[nodiscard]] std::span<const double> samples() const noexcept { return samples_; }
    [[nodiscard]] const std::vector<double>& vector() const noexcept { return samples_; }
    [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return samples_[i]; }

    friend bool operator==(const Signal&, const Signal&) = default;

private:
    std::vector<double> samples_;
};

} // namespace vmdcvm
