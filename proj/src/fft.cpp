#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <new>

namespace vmdcvm::detail {
namespace {

// The FFTW planner is not thread-safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
    const std::lock_guard lock(planner_mutex());
    real_ = fftw_alloc_real(n_);
    auto* half = fftw_alloc_complex(bins());
    spectrum_ = half;
    if (real_ == nullptr || half == nullptr) {
        fftw_free(real_);
        fftw_free(half);
        throw std::bad_alloc();
    }
    const int len = static_cast<int>(n_);
    forward_plan_ = fftw_plan_dft_r2c_1d(len, real_, half, FFTW_ESTIMATE);
    inverse_plan_ = fftw_plan_dft_c2r_1d(len, half, real_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
    const std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
    fftw_free(real_);
    fftw_free(spectrum_);
}

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) {
    std::copy(in.begin(), in.end(), real_);
    fftw_execute(static_cast<fftw_plan>(forward_plan_));
    const auto* half = static_cast<const fftw_complex*>(spectrum_);
    for (std::size_t j = 0; j < bins(); ++j) out[j] = {half[j][0], half[j][1]};
}

void RealFft::inverse(std::span<const std::complex<double>> in, std::span<double> out) {
    auto* half = static_cast<fftw_complex*>(spectrum_);
    for (std::size_t j = 0; j < bins(); ++j) {
        half[j][0] = in[j].real();
        half[j][1] = in[j].imag();
    }
    // A real signal has purely real DC and Nyquist bins.
    half[0][1] = 0.0;
    if (n_ % 2 == 0) half[bins() - 1][1] = 0.0;
    fftw_execute(static_cast<fftw_plan>(inverse_plan_));
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = real_[i] * scale;
}

} // namespace vmdcvm::detail
