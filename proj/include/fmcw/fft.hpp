#pragma once

#include <complex>
#include <span>
#include <vector>

namespace fmcw::fft {

/// Forward complex DFT (FFTW convention: no normalization).
/// Input shorter than nfft is zero-padded. nfft must be >= input size.
std::vector<std::complex<double>> forward(std::span<const std::complex<double>> input,
                                          std::size_t nfft);

/// Forward DFT of a real sequence, full nfft bins returned.
std::vector<std::complex<double>> forward_real(std::span<const double> input, std::size_t nfft);

/// In-place forward DFT of `count` real rows of length `in_len`, each zero-padded
/// to nfft. Writes nfft complex bins per row into `out` (row-major). Buffers must
/// be preallocated; rows are independent, so callers may parallelize by row.
void forward_real_rows(const double* in, std::size_t count, std::size_t in_len,
                       std::size_t nfft, std::complex<double>* out, bool parallel);

std::size_t next_pow2(std::size_t n);

}  // namespace fmcw::fft
