#include "vmdcvm/signal.hpp"

#include <cmath>
#include <string>

#include "vmdcvm/errors.hpp"

namespace vmdcvm {

Signal::Signal(std::vector<double> samples) : samples_(std::move(samples)) {
    if (samples_.size() < kMinLength) {
        throw DataError("signal needs at least " + std::to_string(kMinLength) + " samples, got " +
                        std::to_string(samples_.size()));
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (!std::isfinite(samples_[i])) {
            throw DataError("signal sample " + std::to_string(i) + " is not finite");
        }
    }
}

} // namespace vmdcvm
