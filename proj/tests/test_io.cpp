#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "wavekit/io.hpp"

#include "test_helpers.hpp"

using namespace wavekit;
using Catch::Approx;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("wavekit-io-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("signal csv round trip", "[io]") {
  TempDir dir;
  const std::vector<double> x = {1.0, -2.5, 1.0 / 3.0, 9.9e-17, 12345.678};
  const auto path = dir.file("sig.csv");
  io::write_signal_csv(path, x);
  const auto back = io::read_signal_csv(path);
  REQUIRE(back.size() == x.size());
  for (std::size_t i = 0; i < x.size(); ++i) REQUIRE(back[i] == x[i]);  // %.17g is exact
  REQUIRE_FALSE(std::filesystem::exists(path + ".tmp"));
}

TEST_CASE("signal csv parsing", "[io]") {
  const auto x = io::parse_signal_csv("1\n\n# comment\n 2.5 \n-3\n");
  REQUIRE(x == std::vector<double>{1.0, 2.5, -3.0});
  REQUIRE_THROWS_AS(io::parse_signal_csv("1\nabc\n"), std::runtime_error);
  REQUIRE_THROWS_AS(io::parse_signal_csv("1.5x\n"), std::runtime_error);
  REQUIRE(io::parse_signal_csv("").empty());
}

TEST_CASE("complex csv round trip", "[io]") {
  TempDir dir;
  const std::vector<fft::Complex> z = {{1.0, -1.0}, {0.25, 3.0}, {-2.0, 0.0}};
  const auto path = dir.file("z.csv");
  io::write_complex_csv(path, z);
  const auto back = io::read_complex_csv(path);
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < z.size(); ++i) REQUIRE(back[i] == z[i]);

  // a bare real column reads as re, im = 0
  const auto real_only = io::parse_complex_csv("5\n-1.5\n");
  REQUIRE(real_only[0] == fft::Complex{5.0, 0.0});
  REQUIRE(real_only[1] == fft::Complex{-1.5, 0.0});
  REQUIRE_THROWS_AS(io::parse_complex_csv("1,2,3\n"), std::runtime_error);
}

TEST_CASE("pyramid csv round trip", "[io]") {
  TempDir dir;
  const auto d4 = filters::make_filter("d4");
  const auto x = testutil::random_signal(32, 4);
  for (auto norm : {fwt::Normalization::Orthonormal, fwt::Normalization::Unnormalized}) {
    const auto p = fwt::analyze(x, d4, 3, norm);
    const auto path = dir.file("p.csv");
    io::write_pyramid_csv(path, p);
    const auto back = io::read_pyramid_csv(path);
    REQUIRE(back.normalization == p.normalization);
    REQUIRE(back.coarse == p.coarse);
    REQUIRE(back.details == p.details);
  }
}

TEST_CASE("pyramid csv validation", "[io]") {
  REQUIRE_THROWS_AS(io::parse_pyramid_csv("1\n2\n"), std::runtime_error);
  REQUIRE_THROWS_AS(io::parse_pyramid_csv("# pyramid blocks=1,1\n1\n"),
                    std::runtime_error);  // value count mismatch
  REQUIRE_THROWS_AS(
      io::parse_pyramid_csv("# pyramid normalization=weird blocks=1,1\n1\n2\n"),
      std::runtime_error);
  const auto p = io::parse_pyramid_csv(
      "# pyramid n=4 levels=2 normalization=paper blocks=1,1,2\n3\n2\n4\n1\n");
  REQUIRE(p.normalization == fwt::Normalization::Unnormalized);
  REQUIRE(p.coarse == std::vector<double>{3.0});
  REQUIRE(p.details[1] == std::vector<double>{4.0, 1.0});
}

TEST_CASE("pgm round trip with rounding and clamping", "[io]") {
  TempDir dir;
  Eigen::MatrixXd img(4, 6);
  for (Eigen::Index r = 0; r < 4; ++r)
    for (Eigen::Index c = 0; c < 6; ++c) img(r, c) = static_cast<double>(10 * r + c);
  img(0, 0) = -3.2;   // clamps to 0
  img(3, 5) = 400.0;  // clamps to 255
  img(1, 1) = 7.6;    // rounds to 8

  const auto path = dir.file("img.pgm");
  io::write_pgm(path, img);
  const auto back = io::read_pgm(path);
  REQUIRE(back.rows() == 4);
  REQUIRE(back.cols() == 6);
  REQUIRE(back(0, 0) == 0.0);
  REQUIRE(back(3, 5) == 255.0);
  REQUIRE(back(1, 1) == 8.0);
  REQUIRE(back(2, 3) == 23.0);
}

TEST_CASE("pgm header parsing accepts comments and whitespace", "[io]") {
  std::string data = "P5 # binary\n# full-line comment\n  2\t3 # size\n255\n";
  data += std::string("\x01\x02\x03\x04\x05\x06", 6);
  const auto img = io::parse_pgm(data);
  REQUIRE(img.rows() == 3);
  REQUIRE(img.cols() == 2);
  REQUIRE(img(0, 0) == 1.0);
  REQUIRE(img(2, 1) == 6.0);

  REQUIRE_THROWS_AS(io::parse_pgm("P2\n2 2\n255\n"), std::runtime_error);   // ascii pgm
  REQUIRE_THROWS_AS(io::parse_pgm("P5\n2 2\n70000\n...."), std::runtime_error);
  std::string truncated = "P5\n4 4\n255\n..";
  REQUIRE_THROWS_AS(io::parse_pgm(truncated), std::runtime_error);
}

TEST_CASE("filter file round trip", "[io]") {
  TempDir dir;
  const auto d4 = filters::make_filter("d4");
  const auto path = dir.file("f.txt");
  io::write_filter_file(path, d4);
  const auto back = io::read_filter_file(path);
  REQUIRE(back.name == "d4");
  REQUIRE(back.coeffs == d4.coeffs);

  const auto anon = io::parse_filter_file("0.5\n1\n0.5\n");
  REQUIRE(anon.name.empty());
  REQUIRE(anon.coeffs == std::vector<double>{0.5, 1.0, 0.5});

  REQUIRE_THROWS_AS(io::parse_filter_file("# name: x\n1.0\n"), std::invalid_argument);
}

TEST_CASE("filter resolution", "[io]") {
  TempDir dir;
  REQUIRE(io::resolve_filter("haar").coeffs == std::vector<double>{1.0, 1.0});
  const auto path = dir.file("custom.txt");
  io::write_filter_file(path, filters::make_filter({0.5, 1.0, 0.5}, "mine"));
  REQUIRE(io::resolve_filter(path).name == "mine");
  REQUIRE_THROWS_AS(io::resolve_filter("no-such-filter"), std::runtime_error);
}

TEST_CASE("matrix csv", "[io]") {
  const auto m = io::parse_matrix_csv("0,2\n0,0\n");
  REQUIRE(m.rows() == 2);
  REQUIRE(m(0, 1) == 2.0);
  REQUIRE_THROWS_AS(io::parse_matrix_csv("1,2\n3\n"), std::runtime_error);
  REQUIRE_THROWS_AS(io::parse_matrix_csv(""), std::runtime_error);
}

TEST_CASE("atomic writes replace the target in one step", "[io]") {
  TempDir dir;
  const auto path = dir.file("out.txt");
  io::atomic_write(path, "first");
  io::atomic_write(path, "second");
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  REQUIRE(content == "second");
  REQUIRE_FALSE(std::filesystem::exists(path + ".tmp"));
}
