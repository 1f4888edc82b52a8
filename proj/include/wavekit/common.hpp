#pragma once

#include <cstddef>
#include <cstdio>
#include <functional>
#include <string>
#include <string_view>

namespace wavekit {

/// Handler for non-fatal diagnostics (e.g. transforming with a filter that
/// fails the orthogonality test). Defaults to writing one line to stderr.
using WarningHandler = std::function<void(std::string_view)>;

namespace detail {

inline WarningHandler& warning_handler() {
  static WarningHandler handler = [](std::string_view msg) {
    std::fputs("warning: ", stderr);
    std::fwrite(msg.data(), 1, msg.size(), stderr);
    std::fputc('\n', stderr);
  };
  return handler;
}

inline void warn(std::string_view msg) {
  if (warning_handler()) warning_handler()(msg);
}

constexpr bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

constexpr int log2_exact(std::size_t n) {
  int l = 0;
  while (n > 1) {
    n >>= 1;
    ++l;
  }
  return l;
}

}  // namespace detail

inline void set_warning_handler(WarningHandler handler) {
  detail::warning_handler() = std::move(handler);
}

}  // namespace wavekit
