#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "qspkit/errors.hpp"

namespace qspkit {

using cd = std::complex<double>;

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 FFT with a precomputed twiddle table.
//
// Sign convention used throughout the library: forward() evaluates the
// polynomial sum_k a_k z^k at z_j = exp(+2*pi*i*j/N), i.e.
//   out[j] = sum_k in[k] * exp(+2*pi*i*j*k/N),
// and inverse() undoes that including the 1/N factor.  Twiddles are filled
// with std::polar per entry, so no phase error accumulates across the table.
class Radix2Fft {
public:
    explicit Radix2Fft(std::size_t n) : n_(n) {
        if (!is_power_of_two(n))
            throw ValidationError("fft size must be a power of two, got " + std::to_string(n));
        twiddles_.resize(n / 2);
        const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
        for (std::size_t k = 0; k < twiddles_.size(); ++k)
            twiddles_[k] = std::polar(1.0, step * static_cast<double>(k));
    }

    std::size_t size() const { return n_; }

    void forward(std::vector<cd>& data) const { transform(data, false); }

    void inverse(std::vector<cd>& data) const {
        transform(data, true);
        const double scale = 1.0 / static_cast<double>(n_);
        for (cd& x : data) x *= scale;
    }

private:
    void transform(std::vector<cd>& data, bool conjugate) const {
        if (data.size() != n_)
            throw ValidationError("fft buffer size does not match plan size");
        for (std::size_t i = 1, j = 0; i < n_; ++i) {
            std::size_t bit = n_ >> 1;
            for (; j & bit; bit >>= 1) j ^= bit;
            j ^= bit;
            if (i < j) std::swap(data[i], data[j]);
        }
        for (std::size_t len = 2; len <= n_; len <<= 1) {
            const std::size_t half = len >> 1;
            const std::size_t stride = n_ / len;
            for (std::size_t start = 0; start < n_; start += len) {
                for (std::size_t k = 0; k < half; ++k) {
                    cd w = twiddles_[k * stride];
                    if (conjugate) w = std::conj(w);
                    const cd u = data[start + k];
                    const cd v = data[start + k + half] * w;
                    data[start + k] = u + v;
                    data[start + k + half] = u - v;
                }
            }
        }
    }

    std::size_t n_;
    std::vector<cd> twiddles_;
};

}  // namespace qspkit
