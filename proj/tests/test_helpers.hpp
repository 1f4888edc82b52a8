#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "wavekit/fwt.hpp"

namespace testutil {

inline std::vector<double> random_signal(std::size_t n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = dist(gen);
  return x;
}

inline std::vector<std::complex<double>> random_complex(std::size_t n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<std::complex<double>> x(n);
  for (auto& v : x) v = {dist(gen), dist(gen)};
  return x;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double l2(const std::vector<double>& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

/// Minimal orthonormal Haar pyramid, independent of the library
/// implementation; used as an oracle for coefficient counting and energies.
inline std::vector<double> mini_haar_full(std::vector<double> x) {
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<double> out;
  while (x.size() > 1) {
    std::vector<double> low(x.size() / 2), high(x.size() / 2);
    for (std::size_t m = 0; m < x.size() / 2; ++m) {
      low[m] = s * (x[2 * m] + x[2 * m + 1]);
      high[m] = s * (x[2 * m] - x[2 * m + 1]);
    }
    out.insert(out.begin(), high.begin(), high.end());
    x = std::move(low);
  }
  out.insert(out.begin(), x[0]);
  return out;
}

/// RAII silencer for the library warning channel (tests that intentionally
/// use non-orthogonal filters).
struct SilenceWarnings {
  wavekit::WarningHandler saved = wavekit::detail::warning_handler();
  SilenceWarnings() {
    wavekit::set_warning_handler([](std::string_view) {});
  }
  ~SilenceWarnings() { wavekit::set_warning_handler(saved); }
};

}  // namespace testutil
