#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "wavekit/common.hpp"

namespace wavekit::filters {

/// Dilation coefficients c_0..c_N of a two-scale filter. The same object
/// carries the low-pass side of every construction in this library; the
/// high-pass (wavelet) side is derived by wavelet_coefficients().
///
/// Convention: coefficients are normalized so that an admissible filter has
/// sum(c_even) = sum(c_odd) = 1, hence sum(c_k) = 2.
struct FilterCoefficients {
  std::vector<double> coeffs;  // c_0 .. c_N, trimmed support
  std::string name;            // optional label

  int order() const { return static_cast<int>(coeffs.size()) - 1; }  // N
  std::size_t support_length() const { return coeffs.size(); }       // N + 1
};

inline FilterCoefficients make_filter(std::vector<double> coeffs, std::string name = {}) {
  if (coeffs.size() < 2)
    throw std::invalid_argument("filter needs at least 2 coefficients");
  if (coeffs.front() == 0.0 || coeffs.back() == 0.0)
    throw std::invalid_argument("filter endpoints must be nonzero (trimmed support)");
  return FilterCoefficients{std::move(coeffs), std::move(name)};
}

inline const std::vector<std::string>& builtin_filter_names() {
  static const std::vector<std::string> names = {"haar", "hat", "d4", "stretched-box"};
  return names;
}

/// Built-in filters by name: "haar" (1,1), "hat" (1/2,1,1/2),
/// "d4" ((1±sqrt3)/4 family), "stretched-box" (1,0,0,1).
inline FilterCoefficients make_filter(std::string_view name) {
  const double s3 = std::sqrt(3.0);
  if (name == "haar") return make_filter({1.0, 1.0}, "haar");
  if (name == "hat") return make_filter({0.5, 1.0, 0.5}, "hat");
  if (name == "d4")
    return make_filter(
        {(1.0 + s3) / 4.0, (3.0 + s3) / 4.0, (3.0 - s3) / 4.0, (1.0 - s3) / 4.0}, "d4");
  if (name == "stretched-box") return make_filter({1.0, 0.0, 0.0, 1.0}, "stretched-box");
  throw std::invalid_argument("unknown built-in filter: " + std::string(name));
}

inline FilterCoefficients make_filter(const char* name) {
  return make_filter(std::string_view(name));
}

/// Frequency response P(xi) = (1/2) sum_k c_k e^{+ik xi}. The +ik exponent is
/// the convention used throughout (the forward DFT here uses the same sign).
inline std::complex<double> symbol_eval(const FilterCoefficients& f, double xi) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t k = 0; k < f.coeffs.size(); ++k)
    acc += f.coeffs[k] * std::polar(1.0, static_cast<double>(k) * xi);
  return 0.5 * acc;
}

/// Symbol of a filter as a callable; exponent_sign records the convention.
struct Symbol {
  FilterCoefficients filter;
  static constexpr int exponent_sign = +1;

  std::complex<double> operator()(double xi) const { return symbol_eval(filter, xi); }
};

/// True iff sum(c_even) = sum(c_odd) = 1 within tol.
inline bool check_sums(const FilterCoefficients& f, double tol = 1e-10) {
  double even = 0.0, odd = 0.0;
  for (std::size_t k = 0; k < f.coeffs.size(); ++k)
    (k % 2 == 0 ? even : odd) += f.coeffs[k];
  return std::abs(even - 1.0) < tol && std::abs(odd - 1.0) < tol;
}

namespace detail {

// sum_k (-1)^k k^m c_k together with the scale sum_k |c_k| k^m used for the
// relative tolerance (moment sums grow like k^m).
inline std::pair<double, double> signed_moment(const FilterCoefficients& f, int m) {
  double sum = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
    double km = 1.0;
    for (int i = 0; i < m; ++i) km *= static_cast<double>(k);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum += sign * km * f.coeffs[k];
    scale += std::abs(f.coeffs[k]) * km;
  }
  return {sum, scale};
}

}  // namespace detail

/// Largest p <= max_p such that sum_k (-1)^k k^m c_k vanishes for all m < p;
/// equivalently P has a p-th order zero at xi = pi. Returns 0 when even the
/// zeroth moment fails.
inline int accuracy_order(const FilterCoefficients& f, int max_p = 10, double tol = 1e-8) {
  if (max_p < 1) throw std::invalid_argument("accuracy_order: max_p must be >= 1");
  int p = 0;
  while (p < max_p) {
    auto [sum, scale] = detail::signed_moment(f, p);
    if (std::abs(sum) >= tol * std::max(1.0, scale)) break;
    ++p;
  }
  return p;
}

struct OrthogonalityCheck {
  bool ok;
  double residual;  // max deviation from sum_k c_k c_{k-2m} = 2*delta_{0m}
};

/// Time-domain orthogonality test: sum_k c_k c_{k-2m} = 2 delta_{0m}.
inline OrthogonalityCheck check_orthogonality(const FilterCoefficients& f,
                                              double tol = 1e-10) {
  const auto& c = f.coeffs;
  const int N = f.order();
  double residual = 0.0;
  for (int m = 0; 2 * m <= N; ++m) {
    double s = 0.0;
    for (int k = 2 * m; k <= N; ++k) s += c[k] * c[k - 2 * m];
    const double target = (m == 0) ? 2.0 : 0.0;
    residual = std::max(residual, std::abs(s - target));
  }
  return {residual < tol, residual};
}

/// Frequency form of the same test: max over a uniform grid of
/// | |P(xi)|^2 + |P(xi+pi)|^2 - 1 |.
inline double orthogonality_frequency_residual(const FilterCoefficients& f,
                                               int samples = 1024) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double xi = 2.0 * std::numbers::pi * i / samples;
    const double v =
        std::norm(symbol_eval(f, xi)) + std::norm(symbol_eval(f, xi + std::numbers::pi));
    worst = std::max(worst, std::abs(v - 1.0));
  }
  return worst;
}

/// Transition matrix of the filter autocorrelation, indices |i| < N, |j| < N:
/// A_ij = (1/2) sum_k c_k c_{j-2i+k}. For an orthogonal filter, lambda = 1 is
/// an eigenvalue with eigenvector delta_{0m}; the Lawton test asks it to be
/// simple.
inline Eigen::MatrixXd lawton_matrix(const FilterCoefficients& f) {
  const auto& c = f.coeffs;
  const int N = f.order();
  const int dim = 2 * N - 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = -(N - 1); i <= N - 1; ++i) {
    for (int j = -(N - 1); j <= N - 1; ++j) {
      double s = 0.0;
      for (int k = 0; k <= N; ++k) {
        const int idx = j - 2 * i + k;
        if (idx >= 0 && idx <= N) s += c[k] * c[idx];
      }
      a(i + N - 1, j + N - 1) = 0.5 * s;
    }
  }
  return a;
}

struct LawtonCheck {
  bool ok;
  double gap;  // distance from 1 to the next-closest eigenvalue
};

/// Simple-eigenvalue test on the transition matrix. Requires the filter to
/// pass check_orthogonality first.
inline LawtonCheck lawton_test(const FilterCoefficients& f, double tol = 1e-8) {
  if (!check_orthogonality(f).ok)
    throw std::invalid_argument("lawton_test: filter fails condition O");
  const Eigen::MatrixXd a = lawton_matrix(f);
  if (a.rows() == 1) {
    // N = 1: single eigenvalue, trivially simple.
    const double gap = std::numeric_limits<double>::infinity();
    return {std::abs(a(0, 0) - 1.0) < tol, gap};
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, /*computeEigenvectors=*/false);
  std::vector<double> dist;
  dist.reserve(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    dist.push_back(std::abs(es.eigenvalues()[i] - std::complex<double>(1.0, 0.0)));
  std::sort(dist.begin(), dist.end());
  const bool has_one = dist[0] < tol;
  const double gap = dist[1];
  return {has_one && gap > tol, gap};
}

/// High-pass coefficients d_k: the low-pass sequence reversed with alternating
/// signs, re-based to start at index 0. For odd N this is d_k = (-1)^k c_{N-k};
/// the applied re-basing shift (N - 1) is reported by wavelet_rebase_shift and
/// matters only for even N, where it is odd.
inline std::vector<double> wavelet_coefficients(const FilterCoefficients& f) {
  const int N = f.order();
  std::vector<double> d(f.coeffs.size());
  for (int k = 0; k <= N; ++k) {
    // (-1)^(k + 1 - N) c_{N-k}: literal re-basing of the alternating-flip rule.
    const int e = k + 1 - N;
    const double sign = (((e % 2) + 2) % 2 == 0) ? 1.0 : -1.0;
    d[static_cast<std::size_t>(k)] = sign * f.coeffs[static_cast<std::size_t>(N - k)];
  }
  return d;
}

inline int wavelet_rebase_shift(const FilterCoefficients& f) { return f.order() - 1; }

/// Worst inner product of the derived high-pass sequence against translates of
/// the low-pass sequence, in the original (pre-re-basing) alignment. Zero in
/// exact arithmetic for every filter.
inline double wavelet_orthogonality_residual(const FilterCoefficients& f) {
  const auto d = wavelet_coefficients(f);
  const auto& c = f.coeffs;
  const int N = f.order();
  const int parity = wavelet_rebase_shift(f) % 2;  // 0 for odd N, 1 for even N
  double worst = 0.0;
  for (int m = -N; m <= N; ++m) {
    double s = 0.0;
    for (int k = 0; k <= N; ++k) {
      const int idx = k - parity - 2 * m;
      if (idx >= 0 && idx <= N) s += d[static_cast<std::size_t>(k)] * c[idx];
    }
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

/// Combined admissibility report: sum rule, accuracy order, condition O and
/// (when O passes) the Lawton simple-eigenvalue test.
struct ConditionReport {
  bool sum_ok = false;
  int accuracy_order = 0;
  bool ortho_ok = false;
  double ortho_residual = 0.0;
  std::optional<LawtonCheck> lawton;  // absent when condition O fails
};

inline ConditionReport condition_report(const FilterCoefficients& f, double tol = 1e-10,
                                        int max_p = 10) {
  ConditionReport r;
  r.sum_ok = check_sums(f, tol);
  r.accuracy_order = accuracy_order(f, max_p);
  const auto o = check_orthogonality(f, tol);
  r.ortho_ok = o.ok;
  r.ortho_residual = o.residual;
  if (o.ok) r.lawton = lawton_test(f);
  return r;
}

}  // namespace wavekit::filters
