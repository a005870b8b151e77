#include "vmdcvm/modesel.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "vmdcvm/errors.hpp"
#include "vmdcvm/gof.hpp"

namespace vmdcvm {
namespace {

// 0-based index of the first maximum in slopes[first, last).
std::size_t first_argmax(std::span<const double> slopes, std::size_t first, std::size_t last) {
    std::size_t best = first;
    for (std::size_t i = first + 1; i < last; ++i) {
        if (slopes[i] > slopes[best]) best = i;
    }
    return best;
}

} // namespace

std::vector<std::size_t> ModePartition::relevant() const {
    std::vector<std::size_t> out(k2);
    std::iota(out.begin(), out.end(), std::size_t{1});
    return out;
}

std::vector<std::size_t> ModePartition::rejected() const {
    std::vector<std::size_t> out(mode_count() - k2);
    std::iota(out.begin(), out.end(), k2 + 1);
    return out;
}

std::vector<double> mode_distances(const Signal& y, const ModeSet& m) {
    const Edf reference = edf_of(y.samples());
    std::vector<double> out;
    out.reserve(m.count());
    for (std::size_t k = 0; k < m.count(); ++k) {
        if (m.modes[k].size() != y.size()) {
            throw DataError("mode " + std::to_string(k + 1) + " has length " +
                            std::to_string(m.modes[k].size()) + ", signal has " +
                            std::to_string(y.size()));
        }
        out.push_back(cvm_distance(m.modes[k], reference).delta);
    }
    return out;
}

ModePartition partition(std::span<const double> distances) {
    const std::size_t k_modes = distances.size();
    if (k_modes < 3) {
        throw DataError("mode partition needs at least 3 modes, got " + std::to_string(k_modes));
    }
    for (double d : distances) {
        if (!std::isfinite(d)) throw DataError("mode distance is not finite");
    }

    ModePartition p;
    p.distances.assign(distances.begin(), distances.end());
    p.slopes.resize(k_modes - 1);
    for (std::size_t k = 0; k + 1 < k_modes; ++k) {
        p.slopes[k] = std::abs(distances[k + 1] - distances[k]);
    }

    // slopes[i] (0-based) is S_{i+1}; the 1-based mode index of S_k is k.
    const std::size_t i1 = first_argmax(p.slopes, 0, p.slopes.size());
    p.k1 = i1 + 1;
    p.k2 = (p.k1 == k_modes - 1) ? k_modes - 1
                                 : first_argmax(p.slopes, i1 + 1, p.slopes.size()) + 1;
    return p;
}

} // namespace vmdcvm
