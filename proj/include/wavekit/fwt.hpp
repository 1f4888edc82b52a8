#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wavekit/common.hpp"
#include "wavekit/fft.hpp"
#include "wavekit/filters.hpp"

namespace wavekit::fwt {

/// Scaling of one analysis step. Orthonormal carries the 1/sqrt(2) prefactor
/// that makes the stacked low/high matrix orthogonal; Unnormalized divides the
/// raw coefficient sums by 2, reproducing plain averaging for Haar.
enum class Normalization { Orthonormal, Unnormalized };

inline const char* to_string(Normalization n) {
  return n == Normalization::Orthonormal ? "orthonormal" : "unnormalized";
}

/// Leveled wavelet-transform output: one coarse scaling block plus detail
/// blocks ordered coarse -> fine. Block lengths double from coarse onward and
/// sum, together with the coarse block, to the signal length.
struct PyramidCoefficients {
  std::vector<double> coarse;
  std::vector<std::vector<double>> details;  // coarse -> fine
  Normalization normalization = Normalization::Orthonormal;

  std::size_t levels() const { return details.size(); }
  std::size_t signal_length() const {
    std::size_t n = coarse.size();
    for (const auto& d : details) n += d.size();
    return n;
  }
};

namespace detail {

inline void check_condition_o(const filters::FilterCoefficients& f) {
  if (!filters::check_orthogonality(f).ok)
    wavekit::detail::warn("filter '" + (f.name.empty() ? std::string("<custom>") : f.name) +
                          "' fails condition O; transform is not an isometry");
}

inline double step_scale(Normalization n) {
  return n == Normalization::Orthonormal ? 1.0 / std::sqrt(2.0) : 0.5;
}

inline double inverse_step_scale(Normalization n) {
  return n == Normalization::Orthonormal ? 1.0 / std::sqrt(2.0) : 1.0;
}

// One analysis step with periodic wraparound: low_m = s * sum_k c_k x_{2m+k},
// high_m = s * sum_k d_k x_{2m+k}. The high-pass row uses the same column
// offsets as the low-pass row.
inline void analyze_step(std::span<const double> x, const std::vector<double>& c,
                         const std::vector<double>& d, Normalization norm,
                         std::vector<double>& low, std::vector<double>& high) {
  const std::size_t n = x.size();
  const std::size_t half = n / 2;
  const double s = step_scale(norm);
  low.assign(half, 0.0);
  high.assign(half, 0.0);
  for (std::size_t m = 0; m < half; ++m) {
    double lo = 0.0, hi = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double v = x[(2 * m + k) % n];
      lo += c[k] * v;
      hi += d[k] * v;
    }
    low[m] = s * lo;
    high[m] = s * hi;
  }
}

// Transpose-based inverse of analyze_step (exact for orthogonal filters):
// x_j = t * ( sum_m low_m c_{j-2m} + sum_m high_m d_{j-2m} ), indices mod n.
inline std::vector<double> synthesize_step(std::span<const double> low,
                                           std::span<const double> high,
                                           const std::vector<double>& c,
                                           const std::vector<double>& d,
                                           Normalization norm) {
  const std::size_t half = low.size();
  const std::size_t n = 2 * half;
  const double t = inverse_step_scale(norm);
  std::vector<double> x(n, 0.0);
  for (std::size_t m = 0; m < half; ++m) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      const std::size_t j = (2 * m + k) % n;
      x[j] += t * (low[m] * c[k] + high[m] * d[k]);
    }
  }
  return x;
}

}  // namespace detail

/// Pyramid decomposition: `levels` low/high splits with downsampling and
/// periodic boundary. Signal length must be a power of two with
/// 1 <= levels <= log2(n). Warns (does not fail) when the filter is not
/// orthogonal.
inline PyramidCoefficients analyze(std::span<const double> signal,
                                   const filters::FilterCoefficients& f, int levels,
                                   Normalization norm = Normalization::Orthonormal) {
  const std::size_t n = signal.size();
  if (!wavekit::detail::is_power_of_two(n) || n < 2)
    throw std::invalid_argument("analyze: signal length must be a power of two >= 2");
  const int max_levels = wavekit::detail::log2_exact(n);
  if (levels < 1 || levels > max_levels)
    throw std::invalid_argument("analyze: levels out of range");
  detail::check_condition_o(f);

  const auto d = filters::wavelet_coefficients(f);
  PyramidCoefficients p;
  p.normalization = norm;
  p.details.resize(static_cast<std::size_t>(levels));
  std::vector<double> current(signal.begin(), signal.end());
  std::vector<double> low, high;
  for (int l = 0; l < levels; ++l) {
    detail::analyze_step(current, f.coeffs, d, norm, low, high);
    // finest detail goes last
    p.details[static_cast<std::size_t>(levels - 1 - l)] = high;
    current = low;
  }
  p.coarse = std::move(current);
  return p;
}

inline PyramidCoefficients analyze(const std::vector<double>& signal,
                                   const filters::FilterCoefficients& f, int levels,
                                   Normalization norm = Normalization::Orthonormal) {
  return analyze(std::span<const double>(signal), f, levels, norm);
}

/// Exact inverse of analyze for orthogonal filters.
inline std::vector<double> synthesize(const PyramidCoefficients& p,
                                      const filters::FilterCoefficients& f) {
  if (p.details.empty()) throw std::invalid_argument("synthesize: empty pyramid");
  std::size_t expect = p.coarse.size();
  for (const auto& d : p.details) {
    if (d.size() != expect)
      throw std::invalid_argument("synthesize: inconsistent block structure");
    expect *= 2;
  }
  if (!wavekit::detail::is_power_of_two(p.coarse.size() * 2))
    throw std::invalid_argument("synthesize: block lengths must be powers of two");

  const auto d = filters::wavelet_coefficients(f);
  std::vector<double> current = p.coarse;
  for (const auto& det : p.details)
    current = detail::synthesize_step(current, det, f.coeffs, d, p.normalization);
  return current;
}

/// The stacked analysis matrix for one step on a length-n periodic signal:
/// n/2 low-pass rows over n/2 high-pass rows, row m holding the filter at
/// column offsets 2m..2m+N (mod n). With orthonormal scaling the rows are
/// orthonormal for condition-O filters.
inline Eigen::MatrixXd filter_matrix(const filters::FilterCoefficients& f, std::size_t n,
                                     Normalization norm = Normalization::Orthonormal) {
  if (!wavekit::detail::is_power_of_two(n) || n < 2)
    throw std::invalid_argument("filter_matrix: n must be a power of two >= 2");
  const auto d = filters::wavelet_coefficients(f);
  const double s = detail::step_scale(norm);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n / 2; ++r) {
    for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
      const auto col = static_cast<Eigen::Index>((2 * r + k) % n);
      m(static_cast<Eigen::Index>(r), col) += s * f.coeffs[k];
      m(static_cast<Eigen::Index>(n / 2 + r), col) += s * d[k];
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// 2-D separable transform
// ---------------------------------------------------------------------------

/// One level of the separable 2-D transform produces three detail bands; the
/// two-letter names give the row filter then the column filter (l = low-pass,
/// h = high-pass).
struct DetailBands2d {
  Eigen::MatrixXd lh;  // rows low-passed, columns high-passed
  Eigen::MatrixXd hl;  // rows high-passed, columns low-passed
  Eigen::MatrixXd hh;  // both high-passed
};

struct Pyramid2d {
  Eigen::MatrixXd coarse;              // LL band at the coarsest level
  std::vector<DetailBands2d> details;  // coarse -> fine
  Normalization normalization = Normalization::Orthonormal;

  std::size_t levels() const { return details.size(); }
};

namespace detail {

// One separable step: filter every row, then every column of both halves.
inline void analyze_step_2d(const Eigen::MatrixXd& x, const filters::FilterCoefficients& f,
                            const std::vector<double>& d, Normalization norm,
                            Eigen::MatrixXd& ll, DetailBands2d& bands) {
  const auto rows = x.rows();
  const auto cols = x.cols();
  Eigen::MatrixXd row_low(rows, cols / 2), row_high(rows, cols / 2);
  std::vector<double> in, lo, hi;
  for (Eigen::Index r = 0; r < rows; ++r) {
    in.resize(static_cast<std::size_t>(cols));
    for (Eigen::Index c = 0; c < cols; ++c) in[static_cast<std::size_t>(c)] = x(r, c);
    analyze_step(in, f.coeffs, d, norm, lo, hi);
    for (Eigen::Index c = 0; c < cols / 2; ++c) {
      row_low(r, c) = lo[static_cast<std::size_t>(c)];
      row_high(r, c) = hi[static_cast<std::size_t>(c)];
    }
  }
  ll.resize(rows / 2, cols / 2);
  bands.lh.resize(rows / 2, cols / 2);
  bands.hl.resize(rows / 2, cols / 2);
  bands.hh.resize(rows / 2, cols / 2);
  for (Eigen::Index c = 0; c < cols / 2; ++c) {
    in.resize(static_cast<std::size_t>(rows));
    for (Eigen::Index r = 0; r < rows; ++r) in[static_cast<std::size_t>(r)] = row_low(r, c);
    analyze_step(in, f.coeffs, d, norm, lo, hi);
    for (Eigen::Index r = 0; r < rows / 2; ++r) {
      ll(r, c) = lo[static_cast<std::size_t>(r)];
      bands.lh(r, c) = hi[static_cast<std::size_t>(r)];
    }
    for (Eigen::Index r = 0; r < rows; ++r) in[static_cast<std::size_t>(r)] = row_high(r, c);
    analyze_step(in, f.coeffs, d, norm, lo, hi);
    for (Eigen::Index r = 0; r < rows / 2; ++r) {
      bands.hl(r, c) = lo[static_cast<std::size_t>(r)];
      bands.hh(r, c) = hi[static_cast<std::size_t>(r)];
    }
  }
}

inline Eigen::MatrixXd synthesize_step_2d(const Eigen::MatrixXd& ll,
                                          const DetailBands2d& bands,
                                          const filters::FilterCoefficients& f,
                                          const std::vector<double>& d,
                                          Normalization norm) {
  const auto rows = ll.rows();
  const auto cols = ll.cols();
  Eigen::MatrixXd row_low(2 * rows, cols), row_high(2 * rows, cols);
  std::vector<double> lo(static_cast<std::size_t>(rows)), hi(static_cast<std::size_t>(rows));
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      lo[static_cast<std::size_t>(r)] = ll(r, c);
      hi[static_cast<std::size_t>(r)] = bands.lh(r, c);
    }
    auto full = synthesize_step(lo, hi, f.coeffs, d, norm);
    for (Eigen::Index r = 0; r < 2 * rows; ++r)
      row_low(r, c) = full[static_cast<std::size_t>(r)];
    for (Eigen::Index r = 0; r < rows; ++r) {
      lo[static_cast<std::size_t>(r)] = bands.hl(r, c);
      hi[static_cast<std::size_t>(r)] = bands.hh(r, c);
    }
    full = synthesize_step(lo, hi, f.coeffs, d, norm);
    for (Eigen::Index r = 0; r < 2 * rows; ++r)
      row_high(r, c) = full[static_cast<std::size_t>(r)];
  }
  Eigen::MatrixXd out(2 * rows, 2 * cols);
  std::vector<double> rlo(static_cast<std::size_t>(cols)), rhi(static_cast<std::size_t>(cols));
  for (Eigen::Index r = 0; r < 2 * rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      rlo[static_cast<std::size_t>(c)] = row_low(r, c);
      rhi[static_cast<std::size_t>(c)] = row_high(r, c);
    }
    const auto full = synthesize_step(rlo, rhi, f.coeffs, d, norm);
    for (Eigen::Index c = 0; c < 2 * cols; ++c)
      out(r, c) = full[static_cast<std::size_t>(c)];
  }
  return out;
}

}  // namespace detail

/// Separable 2-D pyramid: per level one 1-D step on every row then every
/// column, recursing on the LL band. Both dimensions must be powers of two.
inline Pyramid2d analyze_2d(const Eigen::MatrixXd& image,
                            const filters::FilterCoefficients& f, int levels,
                            Normalization norm = Normalization::Orthonormal) {
  const auto rows = static_cast<std::size_t>(image.rows());
  const auto cols = static_cast<std::size_t>(image.cols());
  if (!wavekit::detail::is_power_of_two(rows) || !wavekit::detail::is_power_of_two(cols) ||
      rows < 2 || cols < 2)
    throw std::invalid_argument("analyze_2d: dimensions must be powers of two >= 2");
  const int max_levels =
      std::min(wavekit::detail::log2_exact(rows), wavekit::detail::log2_exact(cols));
  if (levels < 1 || levels > max_levels)
    throw std::invalid_argument("analyze_2d: levels out of range");
  detail::check_condition_o(f);

  const auto d = filters::wavelet_coefficients(f);
  Pyramid2d p;
  p.normalization = norm;
  p.details.resize(static_cast<std::size_t>(levels));
  Eigen::MatrixXd current = image;
  for (int l = 0; l < levels; ++l) {
    Eigen::MatrixXd ll;
    DetailBands2d bands;
    detail::analyze_step_2d(current, f, d, norm, ll, bands);
    p.details[static_cast<std::size_t>(levels - 1 - l)] = std::move(bands);
    current = std::move(ll);
  }
  p.coarse = std::move(current);
  return p;
}

inline Eigen::MatrixXd synthesize_2d(const Pyramid2d& p,
                                     const filters::FilterCoefficients& f) {
  if (p.details.empty()) throw std::invalid_argument("synthesize_2d: empty pyramid");
  const auto d = filters::wavelet_coefficients(f);
  Eigen::MatrixXd current = p.coarse;
  for (const auto& bands : p.details) {
    if (bands.lh.rows() != current.rows() || bands.lh.cols() != current.cols() ||
        bands.hl.rows() != current.rows() || bands.hh.rows() != current.rows())
      throw std::invalid_argument("synthesize_2d: inconsistent band structure");
    current = detail::synthesize_step_2d(current, bands, f, d, p.normalization);
  }
  return current;
}

// ---------------------------------------------------------------------------
// Wavelet packets
// ---------------------------------------------------------------------------

/// Binary tree of split decisions over frequency bands, stored in heap order
/// (children of node i at 2i+1 and 2i+2; the root band is the whole signal).
/// A full tree of uniform depth with the Haar filter produces the Walsh basis;
/// splitting only low branches reproduces the pyramid transform.
class PacketTree {
 public:
  PacketTree() = default;

  static PacketTree full(int depth) {
    PacketTree t;
    if (depth < 0) throw std::invalid_argument("PacketTree::full: negative depth");
    const std::size_t internal = (std::size_t{1} << depth) - 1;
    t.split_.assign(internal, true);
    return t;
  }

  static PacketTree pyramid(int levels) {
    PacketTree t;
    if (levels < 0) throw std::invalid_argument("PacketTree::pyramid: negative levels");
    std::size_t node = 0;
    for (int l = 0; l < levels; ++l) {
      t.set_split(node, true);
      node = 2 * node + 1;  // keep splitting the low band
    }
    return t;
  }

  void set_split(std::size_t node, bool v) {
    if (node >= split_.size()) split_.resize(node + 1, false);
    split_[node] = v;
  }

  bool splits(std::size_t node) const { return node < split_.size() && split_[node]; }

  bool empty() const {
    for (bool b : split_)
      if (b) return false;
    return true;
  }

 private:
  std::vector<bool> split_;
};

/// One output band of the packet transform; path spells the branch taken at
/// each split ('a' = low half, 'd' = high half).
struct PacketBand {
  std::string path;
  std::size_t offset = 0;
  std::size_t length = 0;
};

struct PacketCoefficients {
  std::vector<double> values;  // bands concatenated in depth-first, low-first order
  std::vector<PacketBand> bands;
  Normalization normalization = Normalization::Orthonormal;
};

namespace detail {

inline void packet_recurse(std::vector<double> band, const PacketTree& tree,
                           std::size_t node, std::string path,
                           const filters::FilterCoefficients& f,
                           const std::vector<double>& d, Normalization norm,
                           PacketCoefficients& out) {
  if (!tree.splits(node)) {
    PacketBand b{std::move(path), out.values.size(), band.size()};
    out.values.insert(out.values.end(), band.begin(), band.end());
    out.bands.push_back(std::move(b));
    return;
  }
  if (band.size() < 2)
    throw std::invalid_argument("packet_analyze: tree splits a band of length 1");
  std::vector<double> low, high;
  analyze_step(band, f.coeffs, d, norm, low, high);
  packet_recurse(std::move(low), tree, 2 * node + 1, path + "a", f, d, norm, out);
  packet_recurse(std::move(high), tree, 2 * node + 2, path + "d", f, d, norm, out);
}

}  // namespace detail

/// Generalized pyramid that may split detail bands too, driven by a
/// caller-supplied tree.
inline PacketCoefficients packet_analyze(std::span<const double> signal,
                                         const filters::FilterCoefficients& f,
                                         const PacketTree& tree,
                                         Normalization norm = Normalization::Orthonormal) {
  const std::size_t n = signal.size();
  if (!wavekit::detail::is_power_of_two(n) || n < 1)
    throw std::invalid_argument("packet_analyze: signal length must be a power of two");
  if (tree.splits(0) && n < 2)
    throw std::invalid_argument("packet_analyze: tree splits a band of length 1");
  detail::check_condition_o(f);
  const auto d = filters::wavelet_coefficients(f);
  PacketCoefficients out;
  out.normalization = norm;
  detail::packet_recurse(std::vector<double>(signal.begin(), signal.end()), tree, 0, "", f,
                         d, norm, out);
  return out;
}

inline PacketCoefficients packet_analyze(const std::vector<double>& signal,
                                         const filters::FilterCoefficients& f,
                                         const PacketTree& tree,
                                         Normalization norm = Normalization::Orthonormal) {
  return packet_analyze(std::span<const double>(signal), f, tree, norm);
}

namespace detail {

inline std::vector<double> packet_rebuild(const std::map<std::string, const PacketBand*>& by_path,
                                          const PacketCoefficients& pc,
                                          const std::string& path,
                                          const filters::FilterCoefficients& f,
                                          const std::vector<double>& d) {
  if (auto it = by_path.find(path); it != by_path.end()) {
    const auto& b = *it->second;
    return std::vector<double>(pc.values.begin() + static_cast<std::ptrdiff_t>(b.offset),
                               pc.values.begin() +
                                   static_cast<std::ptrdiff_t>(b.offset + b.length));
  }
  const auto low = packet_rebuild(by_path, pc, path + "a", f, d);
  const auto high = packet_rebuild(by_path, pc, path + "d", f, d);
  if (low.size() != high.size())
    throw std::invalid_argument("packet_synthesize: sibling bands disagree in length");
  return synthesize_step(low, high, f.coeffs, d, pc.normalization);
}

}  // namespace detail

/// Inverse of packet_analyze; the band labels carry the tree structure.
inline std::vector<double> packet_synthesize(const PacketCoefficients& pc,
                                             const filters::FilterCoefficients& f) {
  if (pc.bands.empty()) throw std::invalid_argument("packet_synthesize: no bands");
  std::map<std::string, const PacketBand*> by_path;
  for (const auto& b : pc.bands) {
    if (!by_path.emplace(b.path, &b).second)
      throw std::invalid_argument("packet_synthesize: duplicate band label");
  }
  const auto d = filters::wavelet_coefficients(f);
  return detail::packet_rebuild(by_path, pc, "", f, d);
}

/// Multiplication count of the pyramid transform: every step costs
/// 2 * taps * (output block length) and block lengths halve, so the total is
/// bounded by the geometric series, 4 * taps * n, independent of the level
/// count.
inline fft::OpCount opcount(std::size_t n, int levels, int taps) {
  if (!wavekit::detail::is_power_of_two(n))
    throw std::invalid_argument("opcount: n must be a power of two");
  if (levels < 1 || levels > wavekit::detail::log2_exact(n))
    throw std::invalid_argument("opcount: levels out of range");
  fft::OpCount ops;
  std::size_t len = n;
  for (int l = 0; l < levels; ++l) {
    len /= 2;
    const std::size_t stage = 2 * static_cast<std::size_t>(taps) * len;
    ops.stage_breakdown.push_back(stage);
    ops.multiplications += stage;
  }
  // geometric series: sum over stages < 2 * (2 * taps * n)
  if (ops.multiplications >= 4 * static_cast<std::size_t>(taps) * n)
    throw std::logic_error("opcount: geometric-series bound violated");
  return ops;
}

}  // namespace wavekit::fwt
