#include "vmdcvm/vmd.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>

#include "fft.hpp"
#include "vmdcvm/errors.hpp"

namespace vmdcvm {
namespace {

using cplx = std::complex<double>;

// Half-sample symmetric extension: [y(h-1..0), y, y(N-1..N-r)] with h = N/2,
// r = N - h, so the extended length is always 2N.
std::vector<double> mirror_extend(std::span<const double> y) {
    const std::size_t n = y.size();
    const std::size_t head = n / 2;
    const std::size_t tail = n - head;
    std::vector<double> ext;
    ext.reserve(2 * n);
    for (std::size_t i = 0; i < head; ++i) ext.push_back(y[head - 1 - i]);
    ext.insert(ext.end(), y.begin(), y.end());
    for (std::size_t i = 0; i < tail; ++i) ext.push_back(y[n - 1 - i]);
    return ext;
}

} // namespace

void VmdConfig::validate() const {
    if (k_modes < 2) throw ConfigError("VMD needs at least 2 modes");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("VMD alpha must be positive");
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw ConfigError("VMD tau must be non-negative");
    if (!(tol > 0.0 && tol < 1.0)) throw ConfigError("VMD tolerance must lie in (0, 1)");
    if (max_iters < 1) throw ConfigError("VMD max_iters must be at least 1");
}

ModeSet decompose(const Signal& y, const VmdConfig& cfg) {
    cfg.validate();
    const std::size_t n = y.size();
    const std::size_t k_modes = cfg.k_modes;
    if (n < 2 * k_modes) {
        throw DataError("VMD needs at least 2K = " + std::to_string(2 * k_modes) +
                        " samples, got " + std::to_string(n));
    }

    const std::vector<double> ext = mirror_extend(y.samples());
    const std::size_t len = ext.size();
    detail::RealFft fft(len);
    const std::size_t bins = fft.bins();

    std::vector<cplx> y_hat(bins);
    fft.forward(ext, y_hat);

    std::vector<double> freqs(bins);
    for (std::size_t j = 0; j < bins; ++j) {
        freqs[j] = static_cast<double>(j) / static_cast<double>(len);
    }

    std::vector<double> omega(k_modes, 0.0);
    if (cfg.init == OmegaInit::UniformSpread) {
        for (std::size_t k = 0; k < k_modes; ++k) {
            omega[k] = 0.5 * (static_cast<double>(k) + 0.5) / static_cast<double>(k_modes);
        }
    }

    std::vector<std::vector<cplx>> u_hat(k_modes, std::vector<cplx>(bins));
    std::vector<cplx> multiplier(bins);
    std::vector<cplx> mode_sum(bins);
    std::vector<cplx> updated(bins);

    std::size_t iter = 0;
    bool converged = false;
    while (iter < cfg.max_iters && !converged) {
        ++iter;
        std::fill(mode_sum.begin(), mode_sum.end(), cplx{});
        for (const auto& u : u_hat) {
            for (std::size_t j = 0; j < bins; ++j) mode_sum[j] += u[j];
        }

        double change = 0.0;
        for (std::size_t k = 0; k < k_modes; ++k) {
            auto& u = u_hat[k];
            double diff = 0.0;
            double prev = 0.0;
            double power = 0.0;
            double weighted = 0.0;
            for (std::size_t j = 0; j < bins; ++j) {
                const cplx others = mode_sum[j] - u[j];
                const double d = freqs[j] - omega[k];
                const cplx next =
                    (y_hat[j] - others + 0.5 * multiplier[j]) / (1.0 + 2.0 * cfg.alpha * d * d);
                diff += std::norm(next - u[j]);
                prev += std::norm(u[j]);
                const double p = std::norm(next);
                power += p;
                weighted += freqs[j] * p;
                mode_sum[j] = others + next;
                u[j] = next;
            }
            if (power > 0.0) omega[k] = weighted / power;
            if (prev > 0.0) {
                change += diff / prev;
            } else if (diff > 0.0) {
                change = std::numeric_limits<double>::infinity();
            }
        }

        if (cfg.tau > 0.0) {
            for (std::size_t j = 0; j < bins; ++j) multiplier[j] += cfg.tau * (y_hat[j] - mode_sum[j]);
        }
        converged = change < cfg.tol;
    }

    std::vector<std::size_t> order(k_modes);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return omega[a] < omega[b]; });

    const std::size_t head = n / 2;
    ModeSet out;
    out.iterations_used = iter;
    out.converged = converged;
    std::vector<double> full(len);
    for (std::size_t k : order) {
        fft.inverse(u_hat[k], full);
        std::vector<double> mode(full.begin() + static_cast<std::ptrdiff_t>(head),
                                 full.begin() + static_cast<std::ptrdiff_t>(head + n));
        out.modes.push_back(std::move(mode));
        out.center_freqs.push_back(omega[k]);
    }
    // Same summation order as reconstruct(), so reconstruct(m) + residual == y
    // up to a single rounding per sample.
    const Signal total = reconstruct(out);
    out.residual.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.residual[i] = y[i] - total[i];
    return out;
}

Signal reconstruct(const ModeSet& m) {
    std::vector<double> sum(m.modes.empty() ? 0 : m.modes.front().size(), 0.0);
    for (const auto& mode : m.modes) {
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += mode[i];
    }
    return Signal(std::move(sum));
}

} // namespace vmdcvm
