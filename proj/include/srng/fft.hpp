#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace srng {

// In-place complex DFT backed by FFTW (any length, unnormalized).
// Plans are cached per (length, direction) and execution is thread-safe,
// so independent transforms may run concurrently with bit-identical
// results regardless of thread count.
void fft_inplace(std::vector<std::complex<double>>& data, bool inverse);

void fft_inplace(std::complex<double>* data, std::size_t n, bool inverse);

}  // namespace srng
