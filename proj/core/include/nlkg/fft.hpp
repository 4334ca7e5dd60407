#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace nlkg {

// In-place radix-2 FFT, size must be a power of two. Forward uses the
// e^{-ik x} convention and is unnormalized; inverse scales by 1/n so that
// ifft(fft(v)) == v up to roundoff. Self-contained rather than planned:
// every size used here is a power of two, and identical inputs must give
// bit-identical outputs across runs for the regression baselines.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

// FFT along every axis of a row-major array with extents dims (each a
// power of two). dims.size() is the spatial dimension; the flat length of
// `a` must equal the product of the extents.
void fft_nd_inplace(std::vector<std::complex<double>>& a,
                    const std::vector<std::size_t>& dims, bool inverse);

// Type-I discrete sine transform of the interior values v_1 .. v_m of a
// function vanishing at both ends of a grid with m+1 intervals:
//   S_k = sum_{j=1}^m v_j sin(pi j k / (m+1)),  k = 1 .. m.
// Implemented by odd extension to length 2(m+1), so m+1 must be a power of
// two. Involutive up to the factor (m+1)/2; dst1_inverse applies the
// inverse normalization directly.
std::vector<double> dst1(const std::vector<double>& v);
std::vector<double> dst1_inverse(const std::vector<double>& s);

}  // namespace nlkg
