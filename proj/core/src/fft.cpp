#include "nlkg/fft.hpp"

#include <cmath>

#include "nlkg/errors.hpp"

namespace nlkg {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_pow2(n)) throw ParamOutOfRange("FFT size must be a power of two");
  if (n == 1) return;

  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        std::complex<double> u = a[i + j];
        std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }

  if (inverse) {
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& z : a) z *= inv;
  }
}

void fft_nd_inplace(std::vector<std::complex<double>>& a,
                    const std::vector<std::size_t>& dims, bool inverse) {
  std::size_t total = 1;
  for (auto m : dims) {
    if (!is_pow2(m)) throw ParamOutOfRange("FFT extents must be powers of two");
    total *= m;
  }
  if (a.size() != total)
    throw GridMismatch("array length does not match grid extents");

  // transform along each axis in turn; stride arithmetic for row-major
  // layout with dims[0] slowest
  std::size_t stride = total;
  for (std::size_t axis = 0; axis < dims.size(); ++axis) {
    const std::size_t m = dims[axis];
    stride /= m;  // stride between consecutive entries along this axis
    const std::size_t block = stride * m;
    std::vector<std::complex<double>> line(m);
    for (std::size_t base = 0; base < total; base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        for (std::size_t i = 0; i < m; ++i)
          line[i] = a[base + off + i * stride];
        fft_inplace(line, inverse);
        for (std::size_t i = 0; i < m; ++i)
          a[base + off + i * stride] = line[i];
      }
    }
  }
}

std::vector<double> dst1(const std::vector<double>& v) {
  const std::size_t m = v.size();
  if (!is_pow2(m + 1))
    throw ParamOutOfRange("DST-I needs m+1 to be a power of two");
  const std::size_t n = 2 * (m + 1);
  std::vector<std::complex<double>> a(n, {0.0, 0.0});
  for (std::size_t j = 0; j < m; ++j) {
    a[j + 1] = {v[j], 0.0};
    a[n - 1 - j] = {-v[j], 0.0};
  }
  fft_inplace(a, false);
  std::vector<double> s(m);
  // odd extension makes A_k purely imaginary: A_k = -2i S_k
  for (std::size_t k = 0; k < m; ++k) s[k] = -0.5 * a[k + 1].imag();
  return s;
}

std::vector<double> dst1_inverse(const std::vector<double>& s) {
  std::vector<double> v = dst1(s);
  const double scale = 2.0 / static_cast<double>(s.size() + 1);
  for (auto& x : v) x *= scale;
  return v;
}

}  // namespace nlkg
