#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace vmdcvm::detail {

/// Real-to-half-complex transform pair of fixed length backed by FFTW.
/// Plan creation is serialized internally; execution is reentrant across
/// instances.
class RealFft {
public:
    explicit RealFft(std::size_t n);
    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t bins() const noexcept { return n_ / 2 + 1; }

    /// Unnormalized forward DFT of `in` (length n) into bins 0..n/2.
    void forward(std::span<const double> in, std::span<std::complex<double>> out);
    /// Inverse of forward, including the 1/n factor.
    void inverse(std::span<const std::complex<double>> in, std::span<double> out);

private:
    std::size_t n_;
    double* real_ = nullptr;
    void* spectrum_ = nullptr;
    void* forward_plan_ = nullptr;
    void* inverse_plan_ = nullptr;
};

} // namespace vmdcvm::detail
