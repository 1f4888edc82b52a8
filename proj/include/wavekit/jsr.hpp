#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "wavekit/dilation.hpp"
#include "wavekit/filters.hpp"

namespace wavekit::jsr {

enum class MatrixNorm { Two, Infinity };

/// Finite-depth bracketing of the joint spectral radius rho(A,B):
///   upper = min over m <= depth of ( max over words |w|=m of ||Pi_w|| )^{1/m},
///   lower = max over m <= depth of ( max over words |w|=m of rho(Pi_w) )^{1/m}.
/// Both sides are valid bounds at every depth and tighten monotonically.
struct JsrEstimate {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  int depth = 0;
  std::string argmax_word;  // word achieving the lower bound, e.g. "AB"
};

namespace detail {

inline double matrix_norm(const Eigen::MatrixXd& m, MatrixNorm norm) {
  if (norm == MatrixNorm::Infinity) return m.cwiseAbs().rowwise().sum().maxCoeff();
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

inline double spectral_radius(const Eigen::MatrixXd& m) {
  if (m.rows() == 1) return std::abs(m(0, 0));
  if (m.rows() == 2) {
    // closed form keeps deep enumerations cheap
    const double tr = m(0, 0) + m(1, 1);
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double disc = tr * tr / 4.0 - det;
    if (disc >= 0.0) {
      const double r = std::sqrt(disc);
      return std::max(std::abs(tr / 2.0 + r), std::abs(tr / 2.0 - r));
    }
    return std::sqrt(det);  // complex pair, |lambda|^2 = det
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

struct LevelState {
  double max_norm = 0.0;
  double max_rho = 0.0;
  std::string rho_word;
};

// Exhaustive depth-first walk over all words of A's and B's up to max_depth,
// recording per-depth maxima of norm and spectral radius.
inline void enumerate(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                      const Eigen::MatrixXd& prefix, std::string& word, int max_depth,
                      MatrixNorm norm, std::vector<LevelState>& levels) {
  const int depth = static_cast<int>(word.size());
  if (depth > 0) {
    auto& st = levels[static_cast<std::size_t>(depth - 1)];
    st.max_norm = std::max(st.max_norm, matrix_norm(prefix, norm));
    const double rho = spectral_radius(prefix);
    if (rho > st.max_rho) {
      st.max_rho = rho;
      st.rho_word = word;
    }
  }
  if (depth == max_depth) return;
  word.push_back('A');
  enumerate(a, b, Eigen::MatrixXd(prefix * a), word, max_depth, norm, levels);
  word.back() = 'B';
  enumerate(a, b, Eigen::MatrixXd(prefix * b), word, max_depth, norm, levels);
  word.pop_back();
}

}  // namespace detail

inline JsrEstimate bounds(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, int depth,
                          MatrixNorm norm = MatrixNorm::Two) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw std::invalid_argument("jsr::bounds: matrices must be square and same size");
  if (a.rows() == 0) throw std::invalid_argument("jsr::bounds: empty matrices");
  if (depth < 1) throw std::invalid_argument("jsr::bounds: depth must be >= 1");
  if (depth > 22) throw std::invalid_argument("jsr::bounds: depth capped at 22");

  std::vector<detail::LevelState> levels(static_cast<std::size_t>(depth));
  std::string word;
  detail::enumerate(a, b, Eigen::MatrixXd::Identity(a.rows(), a.cols()), word, depth, norm,
                    levels);

  JsrEstimate est;
  est.depth = depth;
  double word_value = 0.0;
  for (int m = 1; m <= depth; ++m) {
    const auto& st = levels[static_cast<std::size_t>(m - 1)];
    const double up = std::pow(st.max_norm, 1.0 / m);
    const double lo = std::pow(st.max_rho, 1.0 / m);
    if (up < est.upper) est.upper = up;
    if (lo > est.lower) est.lower = lo;
    // keep the shallowest witness under fp jitter of the m-th root
    if (lo > word_value * (1.0 + 1e-12)) {
      word_value = lo;
      est.argmax_word = st.rho_word;
    }
  }
  return est;
}

/// Restriction of the dilation pair (A, B) to the invariant complement of the
/// shared left eigenvector (1,...,1), in the difference basis e_i - e_{i+1}.
/// For a 4-tap filter the result is the 2x2 pair with spectra
/// {c0, 1-c0-c3} and {1-c0-c3, c3}. Empty (0x0) for Haar, which has no
/// complementary subspace.
inline dilation::MatrixPair reduced_pair(const filters::FilterCoefficients& f) {
  if (!filters::check_sums(f))
    throw std::invalid_argument("reduced_pair: filter must satisfy the even/odd sum rule");
  const auto mp = dilation::matrix_pair(f);
  const Eigen::Index n = mp.a.rows();
  if (n < 2) return {Eigen::MatrixXd(0, 0), Eigen::MatrixXd(0, 0)};

  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, n - 1);
  for (Eigen::Index i = 0; i < n - 1; ++i) {
    basis(i, i) = 1.0;
    basis(i + 1, i) = -1.0;
  }
  // A * basis stays in the span of basis; solve basis * A' = A * basis.
  const auto solver = basis.colPivHouseholderQr();
  return {solver.solve(mp.a * basis), solver.solve(mp.b * basis)};
}

/// Two-sided Hoelder regularity estimate for the scaling function:
/// alpha in [-log2(upper), -log2(lower)] from the reduced-pair bounds.
/// Continuity is certified when the norm bound is strictly below 1.
struct HolderInterval {
  double alpha_lower = 0.0;
  double alpha_upper = 0.0;
  bool continuity_certified = false;
  JsrEstimate radius;
};

/// std::nullopt for 2-tap filters (no complementary subspace, the regularity
/// machinery does not apply).
inline std::optional<HolderInterval> holder_estimate(const filters::FilterCoefficients& f,
                                                     int depth,
                                                     MatrixNorm norm = MatrixNorm::Two) {
  const auto rp = reduced_pair(f);
  if (rp.a.rows() == 0) return std::nullopt;
  HolderInterval h;
  h.radius = bounds(rp.a, rp.b, depth, norm);
  h.alpha_lower = -std::log2(h.radius.upper);
  h.alpha_upper = -std::log2(h.radius.lower);
  h.continuity_certified = h.radius.upper < 1.0;
  return h;
}

}  // namespace wavekit::jsr
