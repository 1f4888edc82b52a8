#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "wavekit/common.hpp"
#include "wavekit/filters.hpp"

namespace wavekit::dilation {

/// Values of the scaling function phi (or the wavelet W) on the dyadic grid
/// x = k / 2^depth over [0, N]. values.size() == N * 2^depth + 1.
struct ScalingFunctionSamples {
  int depth = 0;
  std::vector<double> values;
  filters::FilterCoefficients filter;
  bool degenerate = false;  // lambda = 1 had multiplicity > 1 at the integers

  double grid_step() const { return 1.0 / static_cast<double>(std::size_t{1} << depth); }
  double x_at(std::size_t i) const { return static_cast<double>(i) * grid_step(); }
};

/// Scaling-function values at the interior integers 1..N-1.
struct IntegerValues {
  std::vector<double> values;
  bool degenerate = false;
};

/// The two square matrices driving dyadic refinement of the vector
/// v(x) = (phi(x), phi(x+1), ..., phi(x+N-1)): a_ij = c_{2i-j} and
/// b_ij = c_{2i-j+1} (0-based). v(x) = A v(2x) on [0,1/2] and
/// v(x) = B v(2x-1) on [1/2,1].
struct MatrixPair {
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
};

inline MatrixPair matrix_pair(const filters::FilterCoefficients& f) {
  if (!filters::check_sums(f))
    throw std::invalid_argument("matrix_pair: filter must satisfy the even/odd sum rule");
  const int N = f.order();
  MatrixPair mp;
  mp.a = Eigen::MatrixXd::Zero(N, N);
  mp.b = Eigen::MatrixXd::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const int ka = 2 * i - j;
      const int kb = 2 * i - j + 1;
      if (ka >= 0 && ka <= N) mp.a(i, j) = f.coeffs[static_cast<std::size_t>(ka)];
      if (kb >= 0 && kb <= N) mp.b(i, j) = f.coeffs[static_cast<std::size_t>(kb)];
    }
  }
  return mp;
}

/// Solves the integer-value eigensystem: phi at 1..N-1 is the lambda = 1
/// eigenvector of the (N-1)x(N-1) matrix [c_{2i-j}], normalized so that
/// sum phi(k) = 1 (partition of unity). For N = 1 (Haar) the system is empty
/// and the half-open convention phi(0) = 1 applies instead.
inline IntegerValues integer_values(const filters::FilterCoefficients& f,
                                    double tol = 1e-7) {
  const int N = f.order();
  if (!filters::check_sums(f))
    throw std::invalid_argument(
        "integer_values: filter must satisfy the even/odd sum rule");
  if (N < 2) return {{}, false};

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(N - 1, N - 1);
  for (int i = 1; i <= N - 1; ++i)
    for (int j = 1; j <= N - 1; ++j) {
      const int k = 2 * i - j;
      if (k >= 0 && k <= N) m(i - 1, j - 1) = f.coeffs[static_cast<std::size_t>(k)];
    }

  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  std::vector<Eigen::Index> ones;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()[i] - std::complex<double>(1.0, 0.0)) < tol)
      ones.push_back(i);
  if (ones.empty())
    throw std::runtime_error("integer_values: lambda = 1 is not in the spectrum");

  Eigen::VectorXd v = es.eigenvectors().col(ones.front()).real();
  const bool degenerate = ones.size() > 1;
  if (degenerate) {
    // Prefer the symmetric combination phi(k) = phi(N-k) when it is nonzero.
    Eigen::VectorXd sym = v;
    for (Eigen::Index i = 0; i < v.size(); ++i) sym(i) = v(i) + v(v.size() - 1 - i);
    if (sym.norm() > tol * v.norm()) v = sym;
  }
  const double total = v.sum();
  // a near-defective lambda = 1 leaves an eigenvector with vanishing sum, so
  // the partition-of-unity normalization has no solution
  if (std::abs(total) < 1e-6 * v.norm())
    throw std::runtime_error(
        "integer_values: degenerate filter, eigenvector cannot satisfy sum phi = 1");
  IntegerValues out;
  out.degenerate = degenerate;
  out.values.resize(static_cast<std::size_t>(N - 1));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out.values[static_cast<std::size_t>(i)] = v(i) / total;
  return out;
}

/// Exact dyadic refinement: each new value at an odd multiple of 2^-(j+1) is a
/// finite combination of depth-j values through the dilation equation, so no
/// iteration to convergence is involved. Haar keeps phi = 1 on [0,1) by
/// convention.
inline ScalingFunctionSamples refine(const filters::FilterCoefficients& f, int depth) {
  if (depth < 0) throw std::invalid_argument("refine: depth must be >= 0");
  const int N = f.order();
  ScalingFunctionSamples out;
  out.depth = depth;
  out.filter = f;

  std::vector<double> vals;
  if (N == 1) {
    vals.assign(2, 0.0);
    vals[0] = 1.0;  // box function, half-open [0,1)
    out.degenerate = false;
  } else {
    const auto iv = integer_values(f);
    out.degenerate = iv.degenerate;
    vals.assign(static_cast<std::size_t>(N) + 1, 0.0);
    for (int k = 1; k <= N - 1; ++k) vals[static_cast<std::size_t>(k)] = iv.values[static_cast<std::size_t>(k - 1)];
  }

  for (int j = 0; j < depth; ++j) {
    // grid step halves: old index m covers x = m / 2^j
    const std::size_t old_n = vals.size();
    const std::size_t new_n = 2 * (old_n - 1) + 1;
    std::vector<double> next(new_n, 0.0);
    for (std::size_t m = 0; m < old_n; ++m) next[2 * m] = vals[m];
    const std::ptrdiff_t unit = std::ptrdiff_t{1} << j;  // integer 1 on the old grid
    for (std::size_t m = 1; m < new_n; m += 2) {
      // phi(x) = sum_k c_k phi(2x - k); 2x - k lands on the old grid.
      double s = 0.0;
      for (int k = 0; k <= N; ++k) {
        const std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(m) - k * unit;
        if (idx >= 0 && idx < static_cast<std::ptrdiff_t>(old_n))
          s += f.coeffs[static_cast<std::size_t>(k)] * vals[static_cast<std::size_t>(idx)];
      }
      next[m] = s;
    }
    vals = std::move(next);
  }
  out.values = std::move(vals);
  return out;
}

/// Largest dilation-equation residual |phi(x) - sum_k c_k phi(2x-k)| over the
/// sample grid (out-of-support values count as zero). Rounding-level by
/// construction.
inline double dilation_residual(const ScalingFunctionSamples& s) {
  const int N = s.filter.order();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(s.values.size());
  const std::ptrdiff_t unit = (n - 1) / N;  // samples per unit interval
  double worst = 0.0;
  for (std::ptrdiff_t m = 0; m < n; ++m) {
    double rhs = 0.0;
    for (int k = 0; k <= N; ++k) {
      const std::ptrdiff_t idx = 2 * m - k * unit;
      if (idx >= 0 && idx < n) rhs += s.filter.coeffs[static_cast<std::size_t>(k)] *
                                      s.values[static_cast<std::size_t>(idx)];
    }
    worst = std::max(worst, std::abs(s.values[static_cast<std::size_t>(m)] - rhs));
  }
  return worst;
}

/// Wavelet samples on the depth-J grid over [0, N]:
/// W(x) = sum_k d_k phi(2x - k) with the re-based high-pass coefficients.
inline ScalingFunctionSamples wavelet_samples(const filters::FilterCoefficients& f,
                                              int depth) {
  const auto phi = refine(f, depth);
  const auto d = filters::wavelet_coefficients(f);
  const int N = f.order();
  ScalingFunctionSamples out;
  out.depth = depth;
  out.filter = f;
  out.degenerate = phi.degenerate;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(phi.values.size());
  const std::ptrdiff_t unit = (n - 1) / std::max(N, 1);
  out.values.assign(phi.values.size(), 0.0);
  for (std::ptrdiff_t m = 0; m < n; ++m) {
    double s = 0.0;
    for (int k = 0; k <= N; ++k) {
      const std::ptrdiff_t idx = 2 * m - k * unit;
      if (idx >= 0 && idx < n)
        s += d[static_cast<std::size_t>(k)] * phi.values[static_cast<std::size_t>(idx)];
    }
    out.values[static_cast<std::size_t>(m)] = s;
  }
  return out;
}

/// Truncated infinite product for the Fourier transform of phi:
/// phi_hat(xi) = prod_{j=1..terms} P(xi / 2^j), converging since P(0) = 1.
inline std::complex<double> phi_hat(const filters::FilterCoefficients& f, double xi,
                                    int terms = 40) {
  if (terms < 1) throw std::invalid_argument("phi_hat: terms must be >= 1");
  std::complex<double> prod{1.0, 0.0};
  double arg = xi;
  for (int j = 0; j < terms; ++j) {
    arg *= 0.5;
    prod *= filters::symbol_eval(f, arg);
  }
  return prod;
}

/// Left-endpoint Riemann sum of the samples over [0, N].
inline double riemann_integral(const ScalingFunctionSamples& s) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < s.values.size(); ++i) total += s.values[i];
  return total * s.grid_step();
}

/// Left-endpoint Riemann sum of x^m * f(x) over [0, N].
inline double riemann_moment(const ScalingFunctionSamples& s, int m) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < s.values.size(); ++i) {
    double xm = 1.0;
    for (int q = 0; q < m; ++q) xm *= s.x_at(i);
    total += xm * s.values[i];
  }
  return total * s.grid_step();
}

}  // namespace wavekit::dilation
