#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace wdmsim {

/// In-place radix-2 FFT with precomputed twiddles. Sizes must be powers of
/// two. The forward transform uses the optics sign convention
/// X[k] = sum_n x[n] exp(+i 2 pi k n / N); the inverse carries the 1/N
/// factor. With this sign the usual dispersion propagator appears as
/// exp(+i (beta2/2) w^2 z) on the forward-transformed field, and bin k of a
/// field spectrum sits at carrier + bin_frequency(k).
///
/// Deliberately hand-rolled: results are byte-identical across runs, thread
/// counts and machines, which the reproducibility guarantees rely on.
class FftPlan {
public:
    explicit FftPlan(std::size_t n);

    void forward(std::complex<double>* data) const;
    void inverse(std::complex<double>* data) const;

    void forward(std::vector<std::complex<double>>& data) const;
    void inverse(std::vector<std::complex<double>>& data) const;

    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    std::size_t log2n_;
    std::vector<std::complex<double>> twiddle_; // exp(+i 2 pi k / n), k < n/2
    std::vector<std::uint32_t> bitrev_;
};

/// Signed frequency of FFT bin k on a grid of n samples spaced dt apart:
/// k in [0, n/2) maps to k/(n dt), k in [n/2, n) maps to (k - n)/(n dt).
double bin_frequency(std::size_t k, std::size_t n, double dt);

/// Signed bin index in [-n/2, n/2) for storage index k.
long long signed_bin(std::size_t k, std::size_t n);

/// Storage index for a signed bin index (must lie in [-n/2, n/2)).
std::size_t storage_bin(long long signed_index, std::size_t n);

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

} // namespace wdmsim
