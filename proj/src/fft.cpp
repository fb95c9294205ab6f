#include "wdmsim/fft.hpp"

#include <bit>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace wdmsim {

bool is_power_of_two(std::size_t n)
{
    return n != 0 && (n & (n - 1)) == 0;
}

std::size_t next_power_of_two(std::size_t n)
{
    std::size_t p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

FftPlan::FftPlan(std::size_t n) : n_(n)
{
    if (n < 2 || !is_power_of_two(n))
        throw std::invalid_argument("FFT size must be a power of two >= 2");
    log2n_ = static_cast<std::size_t>(std::countr_zero(n));

    twiddle_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        twiddle_[k] = {std::cos(phase), std::sin(phase)};
    }

    bitrev_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < log2n_; ++b)
            r |= ((i >> b) & 1u) << (log2n_ - 1 - b);
        bitrev_[i] = static_cast<std::uint32_t>(r);
    }
}

void FftPlan::forward(std::complex<double>* a) const
{
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t j = bitrev_[i];
        if (i < j)
            std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
        const std::size_t half = len >> 1;
        const std::size_t stride = n_ / len;
        for (std::size_t base = 0; base < n_; base += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const std::complex<double> w = twiddle_[k * stride];
                const std::complex<double> u = a[base + k];
                const std::complex<double> v = a[base + k + half] * w;
                a[base + k] = u + v;
                a[base + k + half] = u - v;
            }
        }
    }
}

void FftPlan::inverse(std::complex<double>* a) const
{
    for (std::size_t i = 0; i < n_; ++i)
        a[i] = std::conj(a[i]);
    forward(a);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i)
        a[i] = std::conj(a[i]) * scale;
}

void FftPlan::forward(std::vector<std::complex<double>>& data) const
{
    if (data.size() != n_)
        throw std::invalid_argument("FFT buffer size does not match plan");
    forward(data.data());
}

void FftPlan::inverse(std::vector<std::complex<double>>& data) const
{
    if (data.size() != n_)
        throw std::invalid_argument("FFT buffer size does not match plan");
    inverse(data.data());
}

long long signed_bin(std::size_t k, std::size_t n)
{
    const long long kk = static_cast<long long>(k);
    const long long nn = static_cast<long long>(n);
    return kk < nn / 2 ? kk : kk - nn;
}

std::size_t storage_bin(long long signed_index, std::size_t n)
{
    const long long nn = static_cast<long long>(n);
    if (signed_index < -nn / 2 || signed_index >= nn / 2)
        throw std::invalid_argument("signed bin index out of range");
    return static_cast<std::size_t>(signed_index >= 0 ? signed_index : signed_index + nn);
}

double bin_frequency(std::size_t k, std::size_t n, double dt)
{
    return static_cast<double>(signed_bin(k, n)) / (static_cast<double>(n) * dt);
}

} // namespace wdmsim
