#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wavekit/common.hpp"

namespace wavekit::fft {

using Complex = std::complex<double>;

/// DFT output under the synthesis-flavored convention: with w = e^{2 pi i / n},
/// entry (j,k) of the transform matrix is w^{+jk}. Many references call the
/// conjugate of this map the forward transform; the sign here matches the
/// filter symbol convention used across the library.
struct ComplexSpectrum {
  std::vector<Complex> values;
  static constexpr int exponent_sign = +1;

  std::size_t size() const { return values.size(); }
  const Complex& operator[](std::size_t i) const { return values[i]; }
};

/// Multiplication counter for the fast transforms. Only complex
/// multiplications by the diagonal twiddle factors are counted (n/2 per
/// combine level, including the trivial w^0 = 1 entries), giving exactly
/// (n/2) log2(n) in total.
struct OpCount {
  std::size_t multiplications = 0;
  std::vector<std::size_t> stage_breakdown;  // per combine level
};

/// Direct evaluation y_j = sum_k a_k w^{jk}; quadratic cost, any length.
/// Serves as the oracle for the fast transform.
inline ComplexSpectrum dft_naive(std::span<const Complex> a) {
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("dft_naive: empty input");
  // One period of w^m; w^{jk} = table[(j*k) mod n] keeps the angles exact.
  std::vector<Complex> table(n);
  for (std::size_t m = 0; m < n; ++m)
    table[m] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) /
                                   static_cast<double>(n));
  ComplexSpectrum out;
  out.values.assign(n, Complex{0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) {
    Complex acc{0.0, 0.0};
    std::size_t idx = 0;
    for (std::size_t k = 0; k < n; ++k) {
      acc += a[k] * table[idx];
      idx += j;
      if (idx >= n) idx -= n;
    }
    out.values[j] = acc;
  }
  return out;
}

inline ComplexSpectrum dft_naive(const std::vector<Complex>& a) {
  return dft_naive(std::span<const Complex>(a));
}

namespace detail {

inline void bit_reverse_permute(std::vector<Complex>& v) {
  const std::size_t n = v.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(v[i], v[j]);
  }
}

// Radix-2 in-place transform with the given exponent sign. Each combine level
// applies the diagonal of twiddles (1, w, ..., w^{half-1}) to the odd half and
// recombines: top = even + D*odd, bottom = even - D*odd.
inline OpCount radix2(std::vector<Complex>& v, int sign) {
  const std::size_t n = v.size();
  if (!wavekit::detail::is_power_of_two(n))
    throw std::invalid_argument("fft: length must be a power of two");
  OpCount ops;
  bit_reverse_permute(v);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    std::vector<Complex> tw(half);
    for (std::size_t t = 0; t < half; ++t)
      tw[t] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(t) /
                                  static_cast<double>(len));
    std::size_t level_mults = 0;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t t = 0; t < half; ++t) {
        const Complex odd = v[start + half + t] * tw[t];
        ++level_mults;
        const Complex even = v[start + t];
        v[start + t] = even + odd;
        v[start + half + t] = even - odd;
      }
    }
    ops.stage_breakdown.push_back(level_mults);
    ops.multiplications += level_mults;
  }
  return ops;
}

}  // namespace detail

/// Fast evaluation of the same map as dft_naive, via the even/odd shuffle and
/// two half-size transforms per level. Requires n = 2^l.
inline std::pair<ComplexSpectrum, OpCount> forward(std::span<const Complex> a) {
  ComplexSpectrum out;
  out.values.assign(a.begin(), a.end());
  OpCount ops = detail::radix2(out.values, ComplexSpectrum::exponent_sign);
  return {std::move(out), std::move(ops)};
}

inline std::pair<ComplexSpectrum, OpCount> forward(const std::vector<Complex>& a) {
  return forward(std::span<const Complex>(a));
}

/// Inverse map a_k = (1/n) sum_j y_j w^{-jk}; forward then inverse is the
/// identity up to rounding.
inline std::vector<Complex> inverse(std::span<const Complex> y) {
  std::vector<Complex> out(y.begin(), y.end());
  detail::radix2(out, -ComplexSpectrum::exponent_sign);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto& z : out) z *= scale;
  return out;
}

inline std::vector<Complex> inverse(const ComplexSpectrum& y) {
  return inverse(std::span<const Complex>(y.values));
}

}  // namespace wavekit::fft
