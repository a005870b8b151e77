#pragma once

// Variational mode decomposition: splits a signal into K band-limited modes
// by alternating-direction updates of the modes, their center frequencies
// and a Lagrange multiplier, all in the frequency domain.

#include <cstddef>
#include <vector>

#include "vmdcvm/signal.hpp"

namespace vmdcvm {

enum class OmegaInit {
    Zero,          ///< every center frequency starts at 0
    UniformSpread, ///< omega_k = 0.5 (k - 1/2) / K
};

struct VmdConfig {
    std::size_t k_modes = 10;
    double alpha = 2000.0;  ///< bandwidth penalty
    double tau = 0.0;       ///< dual ascent step; 0 relaxes exact reconstruction
    double tol = 1e-7;      ///< relative mode-change tolerance, in (0, 1)
    std::size_t max_iters = 500;
    OmegaInit init = OmegaInit::UniformSpread;

    /// Throws ConfigError on k_modes < 2, alpha <= 0, tau < 0, tol outside
    /// (0, 1) or max_iters == 0.
    void validate() const;
};

struct ModeSet {
    std::vector<std::vector<double>> modes; ///< K modes, ascending center frequency
    std::vector<double> center_freqs;       ///< cycles per sample, in [0, 0.5]
    std::vector<double> residual;           ///< input minus the sum of modes
    std::size_t iterations_used = 0;
    bool converged = false; ///< false when max_iters was exhausted

    [[nodiscard]] std::size_t count() const noexcept { return modes.size(); }
    [[nodiscard]] std::size_t length() const noexcept { return residual.size(); }
};

/// Decomposes `y` into cfg.k_modes modes. The record is mirror-extended by
/// half its length on each side before transforming and cropped afterwards.
/// Throws DataError when y is shorter than 2K.
[[nodiscard]] ModeSet decompose(const Signal& y, const VmdConfig& cfg);

/// Sum of all modes; the residual is not included.
[[nodiscard]] Signal reconstruct(const ModeSet& m);

} // namespace vmdcvm
