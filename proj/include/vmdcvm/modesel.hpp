#pragma once

// Relevant-mode selection: CVM distance between each mode and the noisy
// signal's EDF, slopes of that distance curve, and the split into relevant
// (signal-bearing) and rejected (noise-only) modes.

#include <cstddef>
#include <span>
#include <vector>

#include "vmdcvm/signal.hpp"
#include "vmdcvm/vmd.hpp"

namespace vmdcvm {

/// Mode indices are 1-based, matching mode order by ascending center frequency.
struct ModePartition {
    std::vector<double> distances; ///< K values
    std::vector<double> slopes;    ///< K-1 values, |D[k+1] - D[k]|
    std::size_t k1 = 0;            ///< end of the transient region
    std::size_t k2 = 0;            ///< last relevant mode

    [[nodiscard]] std::size_t mode_count() const noexcept { return distances.size(); }
    [[nodiscard]] std::vector<std::size_t> relevant() const; ///< 1..k2
    [[nodiscard]] std::vector<std::size_t> rejected() const; ///< k2+1..K
};

/// CVM distance of every mode's samples against the EDF of y.
/// Throws DataError on a length mismatch.
[[nodiscard]] std::vector<double> mode_distances(const Signal& y, const ModeSet& m);

/// k1 = argmax of all slopes, k2 = argmax of the slopes after k1 (k2 = K-1
/// when k1 already is K-1). Ties go to the smallest index. Throws DataError
/// for fewer than 3 distances.
[[nodiscard]] ModePartition partition(std::span<const double> distances);

} // namespace vmdcvm
