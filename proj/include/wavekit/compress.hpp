#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wavekit/common.hpp"
#include "wavekit/fft.hpp"
#include "wavekit/filters.hpp"
#include "wavekit/fwt.hpp"

namespace wavekit::compress {

/// Transform basis used for thresholding experiments. Wavelet and packet
/// carry a filter; blocked Fourier models the windowed transform used in
/// block codecs (no smoothing across block edges, so blocking artifacts are an
/// expected, reportable phenomenon rather than a defect). All bases are
/// orthonormal so that magnitude ranking equals energy ranking.
struct Basis {
  enum class Kind { Fourier, BlockedFourier, Wavelet, Packet };

  Kind kind = Kind::Fourier;
  std::optional<filters::FilterCoefficients> filter;
  int levels = 0;  // wavelet: 0 = auto (full for signals, log2(min dim)-2 for images)
  int block = 8;   // blocked fourier

  static Basis fourier() { return Basis{Kind::Fourier, std::nullopt, 0, 8}; }
  static Basis blocked_fourier(int block = 8) {
    if (block < 2 || !wavekit::detail::is_power_of_two(static_cast<std::size_t>(block)))
      throw std::invalid_argument("blocked_fourier: block must be a power of two >= 2");
    return Basis{Kind::BlockedFourier, std::nullopt, 0, block};
  }
  static Basis wavelet(filters::FilterCoefficients f, int levels = 0) {
    return Basis{Kind::Wavelet, std::move(f), levels, 8};
  }
  static Basis packet(filters::FilterCoefficients f) {
    return Basis{Kind::Packet, std::move(f), 0, 8};
  }

  std::string label() const {
    switch (kind) {
      case Kind::Fourier:
        return "fourier";
      case Kind::BlockedFourier:
        return "fourier-block" + std::to_string(block);
      case Kind::Wavelet:
        return "wavelet:" + (filter->name.empty() ? "custom" : filter->name);
      case Kind::Packet:
        return "packet:" + (filter->name.empty() ? "custom" : filter->name);
    }
    return "?";
  }
};

struct CompressionResult {
  std::string basis;
  double kept_fraction = 0.0;
  std::size_t kept_count = 0;
  double l2_rel_error = 0.0;
  double linf_error = 0.0;
};

namespace detail {

// Indices of the kept coefficients: the kept_count largest magnitudes, ties
// broken toward the lower flat index.
inline std::vector<bool> keep_mask(const std::vector<double>& mags, std::size_t kept) {
  std::vector<std::size_t> idx(mags.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return mags[a] > mags[b]; });
  std::vector<bool> mask(mags.size(), false);
  for (std::size_t i = 0; i < kept && i < idx.size(); ++i) mask[idx[i]] = true;
  return mask;
}

inline std::size_t kept_count_for(double fraction, std::size_t n) {
  if (!(fraction > 0.0) || fraction > 1.0)
    throw std::invalid_argument("kept_fraction must lie in (0, 1]");
  return static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
}

// Unitary DFT of a real signal (forward scaled by 1/sqrt(n)).
inline std::vector<fft::Complex> unitary_dft(std::span<const double> x) {
  std::vector<fft::Complex> a(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) a[i] = fft::Complex(x[i], 0.0);
  auto [spec, ops] = fft::forward(a);
  const double s = 1.0 / std::sqrt(static_cast<double>(x.size()));
  for (auto& z : spec.values) z *= s;
  return std::move(spec.values);
}

inline std::vector<fft::Complex> unitary_idft(std::vector<fft::Complex> y) {
  const double s = std::sqrt(static_cast<double>(y.size()));
  for (auto& z : y) z *= s;
  return fft::inverse(y);
}

struct ComplexTransform {
  std::vector<fft::Complex> coeffs;
};

// Flatten a 1-D signal into orthonormal coefficients for the given basis.
// Wavelet and packet paths stay real (imaginary parts zero).
inline std::vector<fft::Complex> to_coefficients(std::span<const double> x, const Basis& b) {
  const std::size_t n = x.size();
  switch (b.kind) {
    case Basis::Kind::Fourier:
      return unitary_dft(x);
    case Basis::Kind::BlockedFourier: {
      const std::size_t blk = std::min<std::size_t>(static_cast<std::size_t>(b.block), n);
      if (n % blk != 0)
        throw std::invalid_argument("blocked fourier: length not divisible by block");
      std::vector<fft::Complex> out;
      out.reserve(n);
      for (std::size_t off = 0; off < n; off += blk) {
        auto piece = unitary_dft(x.subspan(off, blk));
        out.insert(out.end(), piece.begin(), piece.end());
      }
      return out;
    }
    case Basis::Kind::Wavelet: {
      const int levels = b.levels > 0 ? b.levels : wavekit::detail::log2_exact(n);
      const auto p = fwt::analyze(x, *b.filter, levels, fwt::Normalization::Orthonormal);
      std::vector<fft::Complex> out;
      out.reserve(n);
      for (double v : p.coarse) out.emplace_back(v, 0.0);
      for (const auto& dblk : p.details)
        for (double v : dblk) out.emplace_back(v, 0.0);
      return out;
    }
    case Basis::Kind::Packet: {
      const auto pc = fwt::packet_analyze(
          x, *b.filter, fwt::PacketTree::full(wavekit::detail::log2_exact(n)),
          fwt::Normalization::Orthonormal);
      std::vector<fft::Complex> out;
      out.reserve(n);
      for (double v : pc.values) out.emplace_back(v, 0.0);
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

inline std::vector<fft::Complex> from_coefficients(std::vector<fft::Complex> coeffs,
                                                   std::size_t n, const Basis& b) {
  switch (b.kind) {
    case Basis::Kind::Fourier:
      return unitary_idft(std::move(coeffs));
    case Basis::Kind::BlockedFourier: {
      const std::size_t blk = std::min<std::size_t>(static_cast<std::size_t>(b.block), n);
      std::vector<fft::Complex> out;
      out.reserve(n);
      for (std::size_t off = 0; off < n; off += blk) {
        std::vector<fft::Complex> piece(coeffs.begin() + static_cast<std::ptrdiff_t>(off),
                                        coeffs.begin() +
                                            static_cast<std::ptrdiff_t>(off + blk));
        auto rec = unitary_idft(std::move(piece));
        out.insert(out.end(), rec.begin(), rec.end());
      }
      return out;
    }
    case Basis::Kind::Wavelet: {
      const int levels = b.levels > 0 ? b.levels : wavekit::detail::log2_exact(n);
      fwt::PyramidCoefficients p;
      p.normalization = fwt::Normalization::Orthonormal;
      std::size_t len = n >> levels;
      std::size_t off = 0;
      p.coarse.resize(len);
      for (std::size_t i = 0; i < len; ++i) p.coarse[i] = coeffs[off + i].real();
      off += len;
      for (int l = 0; l < levels; ++l) {
        std::vector<double> blk(len);
        for (std::size_t i = 0; i < len; ++i) blk[i] = coeffs[off + i].real();
        off += len;
        p.details.push_back(std::move(blk));
        len *= 2;
      }
      const auto rec = fwt::synthesize(p, *b.filter);
      std::vector<fft::Complex> out(rec.size());
      for (std::size_t i = 0; i < rec.size(); ++i) out[i] = fft::Complex(rec[i], 0.0);
      return out;
    }
    case Basis::Kind::Packet: {
      // rebuild band labels for the full tree over n values
      std::vector<double> vals(n);
      for (std::size_t i = 0; i < n; ++i) vals[i] = coeffs[i].real();
      fwt::PacketCoefficients pc;
      pc.normalization = fwt::Normalization::Orthonormal;
      pc.values = std::move(vals);
      const int depth = wavekit::detail::log2_exact(n);
      for (std::size_t i = 0; i < n; ++i) {
        std::string path;
        for (int bit = depth - 1; bit >= 0; --bit)
          path += ((i >> bit) & 1) ? 'd' : 'a';
        pc.bands.push_back(fwt::PacketBand{std::move(path), i, 1});
      }
      const auto rec = fwt::packet_synthesize(pc, *b.filter);
      std::vector<fft::Complex> out(rec.size());
      for (std::size_t i = 0; i < rec.size(); ++i) out[i] = fft::Complex(rec[i], 0.0);
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace detail

/// Threshold compression of a signal: transform, keep the kept_count largest
/// coefficient magnitudes, inverse-transform, measure errors. Errors are
/// measured against the (possibly complex) reconstruction so that the
/// discarded coefficient energy accounts for the L2 error exactly; the
/// returned signal is its real part.
inline std::pair<CompressionResult, std::vector<double>> compress_in_basis(
    std::span<const double> signal, const Basis& basis, double kept_fraction) {
  const std::size_t n = signal.size();
  if (!wavekit::detail::is_power_of_two(n) || n < 2)
    throw std::invalid_argument("compress_in_basis: length must be a power of two >= 2");
  const std::size_t kept = detail::kept_count_for(kept_fraction, n);

  auto coeffs = detail::to_coefficients(signal, basis);
  std::vector<double> mags(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) mags[i] = std::abs(coeffs[i]);
  const auto mask = detail::keep_mask(mags, kept);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!mask[i]) coeffs[i] = fft::Complex(0.0, 0.0);

  const auto rec = detail::from_coefficients(std::move(coeffs), n, basis);

  double err2 = 0.0, ref2 = 0.0, linf = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double diff = std::abs(fft::Complex(signal[i], 0.0) - rec[i]);
    err2 += diff * diff;
    ref2 += signal[i] * signal[i];
    linf = std::max(linf, diff);
  }
  CompressionResult r;
  r.basis = basis.label();
  r.kept_fraction = kept_fraction;
  r.kept_count = kept;
  r.l2_rel_error = ref2 > 0.0 ? std::sqrt(err2 / ref2) : std::sqrt(err2);
  r.linf_error = linf;

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = rec[i].real();
  return {std::move(r), std::move(out)};
}

inline std::pair<CompressionResult, std::vector<double>> compress_in_basis(
    const std::vector<double>& signal, const Basis& basis, double kept_fraction) {
  return compress_in_basis(std::span<const double>(signal), basis, kept_fraction);
}

namespace detail {

inline int image_auto_levels(const Eigen::MatrixXd& img) {
  const int lmin = std::min(wavekit::detail::log2_exact(static_cast<std::size_t>(img.rows())),
                            wavekit::detail::log2_exact(static_cast<std::size_t>(img.cols())));
  return std::max(1, lmin - 2);  // leave a small LL block
}

// Orthonormal 2-D coefficients, flattened deterministically:
// coarse row-major, then per level lh, hl, hh row-major.
inline std::vector<fft::Complex> to_coefficients_2d(const Eigen::MatrixXd& img,
                                                    const Basis& b) {
  const std::size_t rows = static_cast<std::size_t>(img.rows());
  const std::size_t cols = static_cast<std::size_t>(img.cols());
  switch (b.kind) {
    case Basis::Kind::Fourier: {
      // unitary 2-D DFT: transform rows, then columns
      Eigen::MatrixXcd tmp(img.rows(), img.cols());
      std::vector<fft::Complex> line;
      for (Eigen::Index r = 0; r < img.rows(); ++r) {
        line.assign(cols, fft::Complex{});
        for (Eigen::Index c = 0; c < img.cols(); ++c)
          line[static_cast<std::size_t>(c)] = fft::Complex(img(r, c), 0.0);
        auto [spec, ops] = fft::forward(line);
        for (Eigen::Index c = 0; c < img.cols(); ++c)
          tmp(r, c) = spec.values[static_cast<std::size_t>(c)];
      }
      std::vector<fft::Complex> out(rows * cols);
      const double s = 1.0 / std::sqrt(static_cast<double>(rows * cols));
      for (Eigen::Index c = 0; c < img.cols(); ++c) {
        line.assign(rows, fft::Complex{});
        for (Eigen::Index r = 0; r < img.rows(); ++r)
          line[static_cast<std::size_t>(r)] = tmp(r, c);
        auto [spec, ops] = fft::forward(line);
        for (Eigen::Index r = 0; r < img.rows(); ++r)
          out[static_cast<std::size_t>(r) * cols + static_cast<std::size_t>(c)] =
              s * spec.values[static_cast<std::size_t>(r)];
      }
      return out;
    }
    case Basis::Kind::BlockedFourier: {
      const std::size_t blk =
          std::min<std::size_t>(static_cast<std::size_t>(b.block), std::min(rows, cols));
      if (rows % blk != 0 || cols % blk != 0)
        throw std::invalid_argument("blocked fourier: dimensions not divisible by block");
      std::vector<fft::Complex> out;
      out.reserve(rows * cols);
      for (std::size_t br = 0; br < rows; br += blk)
        for (std::size_t bc = 0; bc < cols; bc += blk) {
          Eigen::MatrixXd sub = img.block(static_cast<Eigen::Index>(br),
                                          static_cast<Eigen::Index>(bc),
                                          static_cast<Eigen::Index>(blk),
                                          static_cast<Eigen::Index>(blk));
          Basis whole = Basis::fourier();
          auto piece = to_coefficients_2d(sub, whole);
          out.insert(out.end(), piece.begin(), piece.end());
        }
      return out;
    }
    case Basis::Kind::Wavelet: {
      const int levels = b.levels > 0 ? b.levels : image_auto_levels(img);
      const auto p = fwt::analyze_2d(img, *b.filter, levels, fwt::Normalization::Orthonormal);
      std::vector<fft::Complex> out;
      out.reserve(rows * cols);
      auto push = [&out](const Eigen::MatrixXd& m) {
        for (Eigen::Index r = 0; r < m.rows(); ++r)
          for (Eigen::Index c = 0; c < m.cols(); ++c) out.emplace_back(m(r, c), 0.0);
      };
      push(p.coarse);
      for (const auto& bands : p.details) {
        push(bands.lh);
        push(bands.hl);
        push(bands.hh);
      }
      return out;
    }
    case Basis::Kind::Packet:
      throw std::invalid_argument("packet basis is one-dimensional");
  }
  throw std::logic_error("unreachable");
}

inline Eigen::MatrixXd from_coefficients_2d(const std::vector<fft::Complex>& coeffs,
                                            Eigen::Index rows, Eigen::Index cols,
                                            const Basis& b, double* imag_energy = nullptr) {
  const auto rows_u = static_cast<std::size_t>(rows);
  const auto cols_u = static_cast<std::size_t>(cols);
  switch (b.kind) {
    case Basis::Kind::Fourier: {
      Eigen::MatrixXcd tmp(rows, cols);
      std::vector<fft::Complex> line;
      const double s = std::sqrt(static_cast<double>(rows_u * cols_u));
      for (Eigen::Index c = 0; c < cols; ++c) {
        line.assign(rows_u, fft::Complex{});
        for (Eigen::Index r = 0; r < rows; ++r)
          line[static_cast<std::size_t>(r)] =
              coeffs[static_cast<std::size_t>(r) * cols_u + static_cast<std::size_t>(c)] * s;
        auto rec = fft::inverse(line);
        for (Eigen::Index r = 0; r < rows; ++r) tmp(r, c) = rec[static_cast<std::size_t>(r)];
      }
      Eigen::MatrixXd out(rows, cols);
      double ie = 0.0;
      for (Eigen::Index r = 0; r < rows; ++r) {
        line.assign(cols_u, fft::Complex{});
        for (Eigen::Index c = 0; c < cols; ++c) line[static_cast<std::size_t>(c)] = tmp(r, c);
        auto rec = fft::inverse(line);
        for (Eigen::Index c = 0; c < cols; ++c) {
          out(r, c) = rec[static_cast<std::size_t>(c)].real();
          ie += rec[static_cast<std::size_t>(c)].imag() * rec[static_cast<std::size_t>(c)].imag();
        }
      }
      if (imag_energy) *imag_energy = ie;
      return out;
    }
    case Basis::Kind::BlockedFourier: {
      const std::size_t blk = std::min<std::size_t>(static_cast<std::size_t>(b.block),
                                                    std::min(rows_u, cols_u));
      Eigen::MatrixXd out(rows, cols);
      std::size_t off = 0;
      double ie = 0.0;
      for (std::size_t br = 0; br < rows_u; br += blk)
        for (std::size_t bc = 0; bc < cols_u; bc += blk) {
          std::vector<fft::Complex> piece(coeffs.begin() + static_cast<std::ptrdiff_t>(off),
                                          coeffs.begin() +
                                              static_cast<std::ptrdiff_t>(off + blk * blk));
          off += blk * blk;
          Basis whole = Basis::fourier();
          double sub_ie = 0.0;
          Eigen::MatrixXd sub = from_coefficients_2d(piece, static_cast<Eigen::Index>(blk),
                                                     static_cast<Eigen::Index>(blk), whole,
                                                     &sub_ie);
          ie += sub_ie;
          out.block(static_cast<Eigen::Index>(br), static_cast<Eigen::Index>(bc),
                    static_cast<Eigen::Index>(blk), static_cast<Eigen::Index>(blk)) = sub;
        }
      if (imag_energy) *imag_energy = ie;
      return out;
    }
    case Basis::Kind::Wavelet: {
      const int levels =
          b.levels > 0
              ? b.levels
              : std::max(1, std::min(wavekit::detail::log2_exact(rows_u),
                                     wavekit::detail::log2_exact(cols_u)) -
                                2);
      fwt::Pyramid2d p;
      p.normalization = fwt::Normalization::Orthonormal;
      Eigen::Index br = rows >> levels, bc = cols >> levels;
      std::size_t off = 0;
      auto take = [&coeffs, &off](Eigen::Index r, Eigen::Index c) {
        Eigen::MatrixXd m(r, c);
        for (Eigen::Index i = 0; i < r; ++i)
          for (Eigen::Index j = 0; j < c; ++j) m(i, j) = coeffs[off++].real();
        return m;
      };
      p.coarse = take(br, bc);
      for (int l = 0; l < levels; ++l) {
        fwt::DetailBands2d bands;
        bands.lh = take(br, bc);
        bands.hl = take(br, bc);
        bands.hh = take(br, bc);
        p.details.push_back(std::move(bands));
        br *= 2;
        bc *= 2;
      }
      if (imag_energy) *imag_energy = 0.0;
      return fwt::synthesize_2d(p, *b.filter);
    }
    case Basis::Kind::Packet:
      throw std::invalid_argument("packet basis is one-dimensional");
  }
  throw std::logic_error("unreachable");
}

}  // namespace detail

/// 2-D counterpart of compress_in_basis; kept_count = ceil(fraction * pixels).
inline std::pair<CompressionResult, Eigen::MatrixXd> compress_image(
    const Eigen::MatrixXd& image, const Basis& basis, double kept_fraction) {
  const auto rows = static_cast<std::size_t>(image.rows());
  const auto cols = static_cast<std::size_t>(image.cols());
  if (!wavekit::detail::is_power_of_two(rows) || !wavekit::detail::is_power_of_two(cols) ||
      rows < 2 || cols < 2)
    throw std::invalid_argument("compress_image: dimensions must be powers of two >= 2");
  const std::size_t n = rows * cols;
  const std::size_t kept = detail::kept_count_for(kept_fraction, n);

  auto coeffs = detail::to_coefficients_2d(image, basis);
  std::vector<double> mags(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) mags[i] = std::abs(coeffs[i]);
  const auto mask = detail::keep_mask(mags, kept);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!mask[i]) coeffs[i] = fft::Complex(0.0, 0.0);

  double imag_energy = 0.0;
  const Eigen::MatrixXd rec =
      detail::from_coefficients_2d(coeffs, image.rows(), image.cols(), basis, &imag_energy);

  double ref2 = image.squaredNorm();
  // the complex reconstruction error equals the discarded coefficient energy;
  // the real part adds the dropped imaginary component back in quadrature
  double err2 = (rec - image).squaredNorm() + imag_energy;
  double linf = (rec - image).cwiseAbs().maxCoeff();
  CompressionResult r;
  r.basis = basis.label();
  r.kept_fraction = kept_fraction;
  r.kept_count = kept;
  r.l2_rel_error = ref2 > 0.0 ? std::sqrt(err2 / ref2) : std::sqrt(err2);
  r.linf_error = linf;
  return {std::move(r), rec};
}

// ---------------------------------------------------------------------------
// Coefficient decay profiling
// ---------------------------------------------------------------------------

/// Magnitude decay of transform coefficients with a fitted power-law exponent.
/// Fourier: least-squares fit of log(per-octave max |a_j|) against log(octave
/// center) over j in [2, n/4]; the per-octave envelope is what decays like
/// j^slope, raw magnitudes oscillate beneath it. Wavelet: per-level max detail
/// magnitude, fit of log2(M_j) against the level index (coarse -> fine).
struct DecayProfile {
  std::vector<double> magnitudes;  // per index (fourier) or per level (wavelet)
  double exponent = 0.0;
  double fit_residual = 0.0;  // rms residual of the fit in log space
  bool all_zero = false;
};

namespace detail {

struct FitResult {
  double slope = 0.0;
  double rms = 0.0;
};

inline FitResult fit_line(const std::vector<std::pair<double, double>>& pts) {
  const auto n = static_cast<double>(pts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  FitResult r;
  r.slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - r.slope * sx) / n;
  double ss = 0;
  for (auto [x, y] : pts) {
    const double e = y - (r.slope * x + intercept);
    ss += e * e;
  }
  r.rms = std::sqrt(ss / n);
  return r;
}

}  // namespace detail

inline DecayProfile decay_profile(std::span<const double> signal, const Basis& basis) {
  const std::size_t n = signal.size();
  if (!wavekit::detail::is_power_of_two(n) || n < 2)
    throw std::invalid_argument("decay_profile: length must be a power of two >= 2");

  DecayProfile prof;
  if (basis.kind == Basis::Kind::Fourier) {
    const auto coeffs = detail::unitary_dft(signal);
    prof.magnitudes.resize(n);
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      prof.magnitudes[i] = std::abs(coeffs[i]);
      if (i >= 1) peak = std::max(peak, prof.magnitudes[i]);
    }
    if (peak < 1e-12 * std::max(1.0, prof.magnitudes[0])) {
      prof.all_zero = true;
      return prof;
    }
    std::vector<std::pair<double, double>> pts;
    const std::size_t jmax = n / 4;
    for (std::size_t lo = 2; lo <= jmax; lo *= 2) {
      const std::size_t hi = std::min(jmax, 2 * lo - 1);
      double mx = 0.0;
      for (std::size_t j = lo; j <= hi; ++j) mx = std::max(mx, prof.magnitudes[j]);
      if (mx > 1e-14 * peak)
        pts.emplace_back(0.5 * (std::log(static_cast<double>(lo)) +
                                std::log(static_cast<double>(hi))),
                         std::log(mx));
    }
    if (pts.size() < 4)
      throw std::runtime_error("decay_profile: fewer than 4 usable octaves");
    const auto fit = detail::fit_line(pts);
    prof.exponent = fit.slope;
    prof.fit_residual = fit.rms;
    return prof;
  }

  if (basis.kind == Basis::Kind::Wavelet) {
    const int levels = wavekit::detail::log2_exact(n);
    const auto p =
        fwt::analyze(signal, *basis.filter, levels, fwt::Normalization::Orthonormal);
    prof.magnitudes.resize(p.details.size());
    double peak = 0.0;
    for (std::size_t l = 0; l < p.details.size(); ++l) {
      double mx = 0.0;
      for (double v : p.details[l]) mx = std::max(mx, std::abs(v));
      prof.magnitudes[l] = mx;  // coarse -> fine
      peak = std::max(peak, mx);
    }
    if (peak < 1e-12) {
      prof.all_zero = true;
      return prof;
    }
    std::vector<std::pair<double, double>> pts;
    for (std::size_t l = 0; l < prof.magnitudes.size(); ++l)
      if (prof.magnitudes[l] > 1e-14 * peak)
        pts.emplace_back(static_cast<double>(l), std::log2(prof.magnitudes[l]));
    if (pts.size() < 4)
      throw std::runtime_error("decay_profile: fewer than 4 usable levels");
    const auto fit = detail::fit_line(pts);
    prof.exponent = fit.slope;
    prof.fit_residual = fit.rms;
    return prof;
  }

  throw std::invalid_argument("decay_profile: basis must be fourier or wavelet");
}

inline DecayProfile decay_profile(const std::vector<double>& signal, const Basis& basis) {
  return decay_profile(std::span<const double>(signal), basis);
}

// ---------------------------------------------------------------------------
// Contest harness
// ---------------------------------------------------------------------------

/// Cartesian product of bases x fractions, one compression run per cell, rows
/// in input order.
inline std::vector<CompressionResult> contest_report(std::span<const double> signal,
                                                     const std::vector<Basis>& bases,
                                                     const std::vector<double>& fractions) {
  std::vector<CompressionResult> rows;
  rows.reserve(bases.size() * fractions.size());
  for (const auto& b : bases)
    for (double f : fractions) rows.push_back(compress_in_basis(signal, b, f).first);
  return rows;
}

inline std::vector<CompressionResult> contest_report(const std::vector<double>& signal,
                                                     const std::vector<Basis>& bases,
                                                     const std::vector<double>& fractions) {
  return contest_report(std::span<const double>(signal), bases, fractions);
}

inline std::vector<CompressionResult> contest_report(const Eigen::MatrixXd& image,
                                                     const std::vector<Basis>& bases,
                                                     const std::vector<double>& fractions) {
  std::vector<CompressionResult> rows;
  rows.reserve(bases.size() * fractions.size());
  for (const auto& b : bases)
    for (double f : fractions) rows.push_back(compress_image(image, b, f).first);
  return rows;
}

}  // namespace wavekit::compress
