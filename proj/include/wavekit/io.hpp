#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "wavekit/fft.hpp"
#include "wavekit/filters.hpp"
#include "wavekit/fwt.hpp"

namespace wavekit::io {

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(std::string_view token, const std::string& context) {
  std::string s(token);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || (end && *end != '\0'))
    throw std::runtime_error(context + ": cannot parse number '" + s + "'");
  return v;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(trim(s.substr(start)));
      break;
    }
    parts.emplace_back(trim(s.substr(start, pos - start)));
    start = pos + 1;
  }
  return parts;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

/// Writes via a temporary file in the same directory and renames on success,
/// so a failed run never leaves a partially written output.
inline void atomic_write(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename " + tmp.string() + " to " + path);
  }
}

// ---------------------------------------------------------------------------
// Signals (CSV, one value per line; lines starting with '#' are skipped)
// ---------------------------------------------------------------------------

inline std::vector<double> parse_signal_csv(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto pos = text.find('\n', start);
    if (pos == std::string_view::npos) pos = text.size();
    auto line = detail::trim(text.substr(start, pos - start));
    start = pos + 1;
    if (line.empty() || line.front() == '#') continue;
    out.push_back(detail::parse_double(line, "signal csv"));
  }
  return out;
}

inline std::vector<double> read_signal_csv(const std::string& path) {
  return parse_signal_csv(detail::read_file(path));
}

inline std::string format_signal_csv(std::span<const double> signal) {
  std::string out;
  for (double v : signal) {
    out += detail::format_double(v);
    out += '\n';
  }
  return out;
}

inline void write_signal_csv(const std::string& path, std::span<const double> signal) {
  atomic_write(path, format_signal_csv(signal));
}

// ---------------------------------------------------------------------------
// Complex vectors (CSV, columns re,im; a bare re column is accepted on read)
// ---------------------------------------------------------------------------

inline std::vector<fft::Complex> parse_complex_csv(std::string_view text) {
  std::vector<fft::Complex> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto pos = text.find('\n', start);
    if (pos == std::string_view::npos) pos = text.size();
    auto line = detail::trim(text.substr(start, pos - start));
    start = pos + 1;
    if (line.empty() || line.front() == '#') continue;
    const auto parts = detail::split(line, ',');
    if (parts.size() == 1)
      out.emplace_back(detail::parse_double(parts[0], "complex csv"), 0.0);
    else if (parts.size() == 2)
      out.emplace_back(detail::parse_double(parts[0], "complex csv"),
                       detail::parse_double(parts[1], "complex csv"));
    else
      throw std::runtime_error("complex csv: expected re,im columns");
  }
  return out;
}

inline std::vector<fft::Complex> read_complex_csv(const std::string& path) {
  return parse_complex_csv(detail::read_file(path));
}

inline std::string format_complex_csv(std::span<const fft::Complex> values) {
  std::string out;
  for (const auto& z : values) {
    out += detail::format_double(z.real());
    out += ',';
    out += detail::format_double(z.imag());
    out += '\n';
  }
  return out;
}

inline void write_complex_csv(const std::string& path, std::span<const fft::Complex> values) {
  atomic_write(path, format_complex_csv(values));
}

// ---------------------------------------------------------------------------
// Pyramids (CSV with a block-structure header line)
// ---------------------------------------------------------------------------

inline std::string format_pyramid_csv(const fwt::PyramidCoefficients& p) {
  std::string out = "# pyramid n=" + std::to_string(p.signal_length()) +
                    " levels=" + std::to_string(p.levels()) +
                    " normalization=" + fwt::to_string(p.normalization) + " blocks=";
  out += std::to_string(p.coarse.size());
  for (const auto& d : p.details) out += "," + std::to_string(d.size());
  out += '\n';
  for (double v : p.coarse) {
    out += detail::format_double(v);
    out += '\n';
  }
  for (const auto& d : p.details)
    for (double v : d) {
      out += detail::format_double(v);
      out += '\n';
    }
  return out;
}

inline void write_pyramid_csv(const std::string& path, const fwt::PyramidCoefficients& p) {
  atomic_write(path, format_pyramid_csv(p));
}

inline fwt::PyramidCoefficients parse_pyramid_csv(std::string_view text) {
  // header line: # pyramid n=.. levels=.. normalization=.. blocks=a,b,c
  const auto nl = text.find('\n');
  if (nl == std::string_view::npos)
    throw std::runtime_error("pyramid csv: missing header line");
  const std::string header(detail::trim(text.substr(0, nl)));
  if (header.rfind("# pyramid", 0) != 0)
    throw std::runtime_error("pyramid csv: header must start with '# pyramid'");

  fwt::PyramidCoefficients p;
  std::vector<std::size_t> blocks;
  {
    std::istringstream hs(header.substr(9));
    std::string tok;
    while (hs >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = tok.substr(0, eq);
      const std::string val = tok.substr(eq + 1);
      if (key == "normalization") {
        if (val == "orthonormal")
          p.normalization = fwt::Normalization::Orthonormal;
        else if (val == "unnormalized" || val == "paper")
          p.normalization = fwt::Normalization::Unnormalized;
        else
          throw std::runtime_error("pyramid csv: unknown normalization '" + val + "'");
      } else if (key == "blocks") {
        for (const auto& b : detail::split(val, ','))
          blocks.push_back(static_cast<std::size_t>(
              detail::parse_double(b, "pyramid csv blocks")));
      }
    }
  }
  if (blocks.size() < 2) throw std::runtime_error("pyramid csv: need coarse + details");

  const auto values = parse_signal_csv(text.substr(nl + 1));
  std::size_t total = 0;
  for (auto b : blocks) total += b;
  if (values.size() != total)
    throw std::runtime_error("pyramid csv: value count does not match blocks header");

  std::size_t off = 0;
  p.coarse.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(blocks[0]));
  off += blocks[0];
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    p.details.emplace_back(values.begin() + static_cast<std::ptrdiff_t>(off),
                           values.begin() + static_cast<std::ptrdiff_t>(off + blocks[i]));
    off += blocks[i];
  }
  return p;
}

inline fwt::PyramidCoefficients read_pyramid_csv(const std::string& path) {
  return parse_pyramid_csv(detail::read_file(path));
}

// ---------------------------------------------------------------------------
// PGM images (binary P5, maxval <= 255; comments and arbitrary whitespace in
// the header are accepted)
// ---------------------------------------------------------------------------

namespace detail {

inline std::size_t pgm_next_int(std::string_view data, std::size_t& pos,
                                const char* what) {
  // skip whitespace and '#' comments
  while (pos < data.size()) {
    const char c = data[pos];
    if (c == '#') {
      while (pos < data.size() && data[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else {
      break;
    }
  }
  if (pos >= data.size() || !std::isdigit(static_cast<unsigned char>(data[pos])))
    throw std::runtime_error(std::string("pgm: expected ") + what);
  std::size_t v = 0;
  while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos]))) {
    v = v * 10 + static_cast<std::size_t>(data[pos] - '0');
    ++pos;
  }
  return v;
}

}  // namespace detail

inline Eigen::MatrixXd parse_pgm(std::string_view data) {
  if (data.size() < 2 || data[0] != 'P' || data[1] != '5')
    throw std::runtime_error("pgm: not a binary (P5) file");
  std::size_t pos = 2;
  const std::size_t width = detail::pgm_next_int(data, pos, "width");
  const std::size_t height = detail::pgm_next_int(data, pos, "height");
  const std::size_t maxval = detail::pgm_next_int(data, pos, "maxval");
  if (maxval == 0 || maxval > 255)
    throw std::runtime_error("pgm: maxval must be in 1..255");
  if (pos >= data.size() || !std::isspace(static_cast<unsigned char>(data[pos])))
    throw std::runtime_error("pgm: missing separator before pixel data");
  ++pos;  // exactly one whitespace byte before the raster
  if (data.size() - pos < width * height)
    throw std::runtime_error("pgm: truncated pixel data");
  Eigen::MatrixXd img(static_cast<Eigen::Index>(height), static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < height; ++r)
    for (std::size_t c = 0; c < width; ++c)
      img(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          static_cast<double>(static_cast<unsigned char>(data[pos + r * width + c]));
  return img;
}

inline Eigen::MatrixXd read_pgm(const std::string& path) {
  return parse_pgm(detail::read_file(path));
}

/// Rounds to the nearest integer and clamps to [0, 255].
inline std::string format_pgm(const Eigen::MatrixXd& img) {
  std::string out = "P5\n" + std::to_string(img.cols()) + " " + std::to_string(img.rows()) +
                    "\n255\n";
  out.reserve(out.size() + static_cast<std::size_t>(img.size()));
  for (Eigen::Index r = 0; r < img.rows(); ++r)
    for (Eigen::Index c = 0; c < img.cols(); ++c) {
      const double v = std::round(img(r, c));
      const double clamped = std::min(255.0, std::max(0.0, v));
      out.push_back(static_cast<char>(static_cast<unsigned char>(clamped)));
    }
  return out;
}

inline void write_pgm(const std::string& path, const Eigen::MatrixXd& img) {
  atomic_write(path, format_pgm(img));
}

// ---------------------------------------------------------------------------
// Filter files (plain text: one coefficient per line, optional '# name:'
// header)
// ---------------------------------------------------------------------------

inline filters::FilterCoefficients parse_filter_file(std::string_view text) {
  std::string name;
  std::vector<double> coeffs;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto pos = text.find('\n', start);
    if (pos == std::string_view::npos) pos = text.size();
    auto line = detail::trim(text.substr(start, pos - start));
    start = pos + 1;
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto body = detail::trim(line.substr(1));
      if (body.rfind("name:", 0) == 0) name = std::string(detail::trim(body.substr(5)));
      continue;
    }
    coeffs.push_back(detail::parse_double(line, "filter file"));
  }
  return filters::make_filter(std::move(coeffs), std::move(name));
}

inline filters::FilterCoefficients read_filter_file(const std::string& path) {
  return parse_filter_file(detail::read_file(path));
}

inline std::string format_filter_file(const filters::FilterCoefficients& f) {
  std::string out;
  if (!f.name.empty()) out += "# name: " + f.name + "\n";
  for (double c : f.coeffs) {
    out += detail::format_double(c);
    out += '\n';
  }
  return out;
}

inline void write_filter_file(const std::string& path,
                              const filters::FilterCoefficients& f) {
  atomic_write(path, format_filter_file(f));
}

/// Built-in filter name, or a path to a filter file.
inline filters::FilterCoefficients resolve_filter(const std::string& name_or_path) {
  for (const auto& n : filters::builtin_filter_names())
    if (n == name_or_path) return filters::make_filter(std::string_view(name_or_path));
  if (std::filesystem::exists(name_or_path)) return read_filter_file(name_or_path);
  throw std::runtime_error("filter '" + name_or_path +
                           "' is neither a built-in name nor an existing file");
}

// ---------------------------------------------------------------------------
// Matrices (CSV, one row per line)
// ---------------------------------------------------------------------------

inline Eigen::MatrixXd parse_matrix_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto pos = text.find('\n', start);
    if (pos == std::string_view::npos) pos = text.size();
    auto line = detail::trim(text.substr(start, pos - start));
    start = pos + 1;
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    for (const auto& tok : detail::split(line, ','))
      row.push_back(detail::parse_double(tok, "matrix csv"));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("matrix csv: empty");
  const std::size_t cols = rows[0].size();
  for (const auto& r : rows)
    if (r.size() != cols) throw std::runtime_error("matrix csv: ragged rows");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return m;
}

inline Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  return parse_matrix_csv(detail::read_file(path));
}

}  // namespace wavekit::io
