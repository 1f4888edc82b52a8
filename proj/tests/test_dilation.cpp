#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "wavekit/dilation.hpp"

#include "test_helpers.hpp"

using namespace wavekit;
using Catch::Approx;

namespace {

const double kSqrt3 = std::sqrt(3.0);

// independent residual check: substitute the samples into the two-scale
// identity directly
double residual_by_substitution(const dilation::ScalingFunctionSamples& s) {
  const auto& c = s.filter.coeffs;
  const int N = s.filter.order();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(s.values.size());
  const std::ptrdiff_t per_unit = (n - 1) / N;
  double worst = 0.0;
  for (std::ptrdiff_t m = 0; m < n; ++m) {
    double rhs = 0.0;
    for (int k = 0; k <= N; ++k) {
      const std::ptrdiff_t j = 2 * m - k * per_unit;
      if (j >= 0 && j < n) rhs += c[static_cast<std::size_t>(k)] * s.values[static_cast<std::size_t>(j)];
    }
    worst = std::max(worst, std::abs(s.values[static_cast<std::size_t>(m)] - rhs));
  }
  return worst;
}

}  // namespace

TEST_CASE("integer values of the scaling function", "[dilation]") {
  const auto d4 = filters::make_filter("d4");
  const auto iv = dilation::integer_values(d4);
  REQUIRE(iv.values.size() == 2);
  REQUIRE_FALSE(iv.degenerate);
  // closed-form oracle: the lambda = 1 eigenvector of [[c1,c0],[c3,c2]] under
  // the sum rule is (c0, c3)/(c0+c3)
  const double c0 = d4.coeffs[0], c3 = d4.coeffs[3];
  REQUIRE(iv.values[0] == Approx(c0 / (c0 + c3)).margin(1e-12));
  REQUIRE(iv.values[1] == Approx(c3 / (c0 + c3)).margin(1e-12));
  REQUIRE(iv.values[0] == Approx((1.0 + kSqrt3) / 2.0).margin(1e-12));
  REQUIRE(iv.values[1] == Approx((1.0 - kSqrt3) / 2.0).margin(1e-12));

  const auto hat = filters::make_filter("hat");
  const auto ivh = dilation::integer_values(hat);
  REQUIRE(ivh.values.size() == 1);
  REQUIRE(ivh.values[0] == Approx(1.0).margin(1e-14));

  const auto sbox = filters::make_filter("stretched-box");
  const auto ivs = dilation::integer_values(sbox);
  REQUIRE(ivs.values[0] == Approx(0.5).margin(1e-14));
  REQUIRE(ivs.values[1] == Approx(0.5).margin(1e-14));
  REQUIRE_FALSE(ivs.degenerate);  // its eigenvalues are +1 and -1

  REQUIRE(dilation::integer_values(filters::make_filter("haar")).values.empty());

  REQUIRE_THROWS_AS(dilation::integer_values(filters::make_filter({1.0, 1.0, 1.0})),
                    std::invalid_argument);
  // defective lambda = 1: eigenvector sums to zero, no valid normalization
  REQUIRE_THROWS_AS(dilation::integer_values(filters::make_filter({0.3, 1.3, 0.7, -0.3})),
                    std::runtime_error);
}

TEST_CASE("refinement of the box function", "[dilation]") {
  const auto haar = filters::make_filter("haar");
  for (int J : {0, 1, 3, 6}) {
    const auto s = dilation::refine(haar, J);
    REQUIRE(s.values.size() == (std::size_t{1} << J) + 1);
    for (std::size_t i = 0; i + 1 < s.values.size(); ++i) REQUIRE(s.values[i] == 1.0);
    REQUIRE(s.values.back() == 0.0);
  }
}

TEST_CASE("refinement of the hat function", "[dilation]") {
  const auto hat = filters::make_filter("hat");
  const auto s = dilation::refine(hat, 1);
  REQUIRE(s.values.size() == 5);  // grid 0, 1/2, 1, 3/2, 2
  REQUIRE(s.values[0] == 0.0);
  REQUIRE(s.values[1] == Approx(0.5).margin(1e-14));
  REQUIRE(s.values[2] == Approx(1.0).margin(1e-14));
  REQUIRE(s.values[3] == Approx(0.5).margin(1e-14));
  REQUIRE(s.values[4] == 0.0);
}

TEST_CASE("refinement satisfies the dilation equation exactly", "[dilation]") {
  for (const char* name : {"haar", "hat", "d4", "stretched-box"}) {
    const auto f = filters::make_filter(name);
    const auto s = dilation::refine(f, 10);
    REQUIRE(dilation::dilation_residual(s) < 1e-10);
    REQUIRE(residual_by_substitution(s) < 1e-10);
    if (f.order() >= 2) {
      REQUIRE(s.values.front() == 0.0);
      REQUIRE(s.values.back() == 0.0);
    }
  }
}

TEST_CASE("refinement agrees with the integer eigensystem on the integers",
          "[dilation]") {
  const auto d4 = filters::make_filter("d4");
  const auto iv = dilation::integer_values(d4);
  const auto s = dilation::refine(d4, 7);
  const std::size_t per_unit = std::size_t{1} << 7;
  REQUIRE(s.values[0] == 0.0);
  REQUIRE(s.values[per_unit] == iv.values[0]);
  REQUIRE(s.values[2 * per_unit] == iv.values[1]);
  REQUIRE(s.values[3 * per_unit] == 0.0);
}

TEST_CASE("stretched box refines to a degenerate comb", "[dilation]") {
  // the exact recursion from the integer values stays a fixed point of the
  // two-scale identity, but for this inadmissible filter the dyadic values
  // form a 0 / 1/2 comb (every third grid point vanishes) instead of a box --
  // the pointwise solution is not unique here
  const auto s = dilation::refine(filters::make_filter("stretched-box"), 6);
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const double expect = (i % 3 == 0) ? 0.0 : 0.5;
    REQUIRE(s.values[i] == Approx(expect).margin(1e-12));
  }
  REQUIRE(dilation::dilation_residual(s) < 1e-14);
  REQUIRE(dilation::riemann_integral(s) == Approx(1.0).margin(1e-12));
}

TEST_CASE("partition of unity", "[dilation]") {
  for (const char* name : {"haar", "hat", "d4"}) {
    const auto f = filters::make_filter(name);
    const int J = 10;
    const auto s = dilation::refine(f, J);
    const int N = f.order();
    const std::size_t per_unit = std::size_t{1} << J;
    for (std::size_t tau = 0; tau < per_unit; ++tau) {
      double total = 0.0;
      for (int k = 0; k < N; ++k)
        total += s.values[tau + static_cast<std::size_t>(k) * per_unit];
      REQUIRE(std::abs(total - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("Riemann integral of the scaling function is 1", "[dilation]") {
  for (const char* name : {"haar", "hat", "d4"}) {
    const auto s = dilation::refine(filters::make_filter(name), 12);
    REQUIRE(std::abs(dilation::riemann_integral(s) - 1.0) < 1e-6);
  }
}

TEST_CASE("Haar wavelet samples form the up-down step", "[dilation]") {
  const auto w = dilation::wavelet_samples(filters::make_filter("haar"), 3);
  REQUIRE(w.values.size() == 9);
  for (std::size_t i = 0; i < 4; ++i) REQUIRE(w.values[i] == 1.0);
  for (std::size_t i = 4; i < 8; ++i) REQUIRE(w.values[i] == -1.0);
  REQUIRE(w.values[8] == 0.0);
}

TEST_CASE("wavelet moments vanish to the accuracy order", "[dilation]") {
  const auto d4 = filters::make_filter("d4");
  const auto w = dilation::wavelet_samples(d4, 10);
  REQUIRE(std::abs(dilation::riemann_moment(w, 0)) < 1e-8);
  REQUIRE(std::abs(dilation::riemann_moment(w, 1)) < 1e-6);

  // zeroth moment only for an accuracy-order-1 filter
  const auto ws = dilation::wavelet_samples(filters::make_filter("stretched-box"), 10);
  REQUIRE(std::abs(dilation::riemann_moment(ws, 0)) < 1e-8);

  // the zeroth moment shrinks with depth for any accuracy >= 1 filter
  const auto hat = filters::make_filter("hat");
  double prev = 1.0;
  for (int J : {4, 8, 12}) {
    const double m0 = std::abs(dilation::riemann_moment(dilation::wavelet_samples(hat, J), 0));
    REQUIRE(m0 <= prev + 1e-12);
    prev = m0;
  }
  REQUIRE(prev < 1e-6);
}

TEST_CASE("truncated product transform", "[dilation]") {
  const auto haar = filters::make_filter("haar");
  const auto d4 = filters::make_filter("d4");

  for (const auto& f : {haar, d4})
    REQUIRE(std::abs(dilation::phi_hat(f, 0.0, 40) - std::complex<double>(1.0, 0.0)) <
            1e-14);

  REQUIRE(std::abs(dilation::phi_hat(haar, 2.0 * std::numbers::pi, 40)) < 1e-9);

  // |phi_hat(pi)| for the box function is 2/pi
  REQUIRE(std::abs(dilation::phi_hat(haar, std::numbers::pi, 40)) ==
          Approx(2.0 / std::numbers::pi).margin(1e-8));

  REQUIRE_THROWS_AS(dilation::phi_hat(haar, 1.0, 0), std::invalid_argument);
}

TEST_CASE("product transform agrees with the refined samples", "[dilation]") {
  for (const char* name : {"haar", "hat", "d4"}) {
    const auto f = filters::make_filter(name);
    const auto s = dilation::refine(f, 12);
    const double h = s.grid_step();
    for (double xi : {0.0, std::numbers::pi / 2.0, std::numbers::pi, 2.0 * std::numbers::pi}) {
      std::complex<double> disc{0.0, 0.0};
      for (std::size_t i = 0; i + 1 < s.values.size(); ++i)
        disc += s.values[i] * std::polar(1.0, xi * s.x_at(i));
      disc *= h;
      REQUIRE(std::abs(disc - dilation::phi_hat(f, xi, 40)) < 1e-3);
    }
  }
}

TEST_CASE("Poisson summation for orthogonal filters", "[dilation]") {
  for (const char* name : {"haar", "d4"}) {
    const auto f = filters::make_filter(name);
    for (double xi : {0.0, 1.0, 2.0}) {
      double total = 0.0;
      for (int n = -20; n <= 20; ++n)
        total += std::norm(dilation::phi_hat(f, xi + 2.0 * std::numbers::pi * n, 40));
      REQUIRE(std::abs(total - 1.0) < 2e-2);
    }
  }
}

TEST_CASE("refinement matrix pair", "[dilation]") {
  const auto d4 = filters::make_filter("d4");
  const auto mp = dilation::matrix_pair(d4);
  const auto& c = d4.coeffs;
  REQUIRE(mp.a.rows() == 3);

  Eigen::MatrixXd a_expected(3, 3), b_expected(3, 3);
  a_expected << c[0], 0, 0, c[2], c[1], c[0], 0, c[3], c[2];
  b_expected << c[1], c[0], 0, c[3], c[2], c[1], 0, 0, c[3];
  REQUIRE((mp.a - a_expected).cwiseAbs().maxCoeff() < 1e-15);
  REQUIRE((mp.b - b_expected).cwiseAbs().maxCoeff() < 1e-15);

  // shared left eigenvector (1,...,1) under the sum rule, also for random
  // admissible filters
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  for (int trial = 0; trial < 10; ++trial) {
    const double a = dist(gen), b = dist(gen);
    const auto f = filters::make_filter({a, b, 1.0 - a, 1.0 - b});
    const auto pair = dilation::matrix_pair(f);
    const Eigen::RowVectorXd ones = Eigen::RowVectorXd::Ones(pair.a.rows());
    REQUIRE((ones * pair.a - ones).cwiseAbs().maxCoeff() < 1e-12);
    REQUIRE((ones * pair.b - ones).cwiseAbs().maxCoeff() < 1e-12);
  }

  REQUIRE_THROWS_AS(dilation::matrix_pair(filters::make_filter({1.0, 1.0, 1.0})),
                    std::invalid_argument);
}

TEST_CASE("binary digits choose the refinement matrices", "[dilation]") {
  // v(x) = (phi(x), phi(x+1), phi(x+2)); each binary digit of x picks A or B
  const auto d4 = filters::make_filter("d4");
  const auto mp = dilation::matrix_pair(d4);
  const auto iv = dilation::integer_values(d4);
  Eigen::VectorXd v0(3);
  v0 << 0.0, iv.values[0], iv.values[1];

  // x = 5/32 = .00101 in binary -> A A B A B
  const Eigen::VectorXd v = mp.a * (mp.a * (mp.b * (mp.a * (mp.b * v0))));

  const int J = 5;
  const auto s = dilation::refine(d4, J);
  const std::size_t per_unit = std::size_t{1} << J;
  for (int comp = 0; comp < 3; ++comp) {
    const std::size_t idx = 5 + static_cast<std::size_t>(comp) * per_unit;
    REQUIRE(v(comp) == Approx(s.values[idx]).margin(1e-12));
  }
}
