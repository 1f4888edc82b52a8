// Command-line front end: transform, filter checking, scaling-function
// sampling, joint-spectral-radius bounds, and thresholding experiments over
// CSV/PGM files. Exit codes: 0 success, 1 runtime/I-O failure, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wavekit/wavekit.hpp"

namespace {

using namespace wavekit;

std::string fmt(double v) { return io::detail::format_double(v); }

void emit(const std::string& path, const std::string& content) {
  if (path.empty())
    std::fwrite(content.data(), 1, content.size(), stdout);
  else
    io::atomic_write(path, content);
}

fwt::Normalization parse_normalization(const std::string& s) {
  if (s == "orthonormal" || s == "ortho") return fwt::Normalization::Orthonormal;
  if (s == "paper" || s == "unnormalized") return fwt::Normalization::Unnormalized;
  throw CLI::ValidationError("--normalization",
                             "must be one of: orthonormal, paper, unnormalized");
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

compress::Basis parse_basis(const std::string& s) {
  if (s == "fourier") return compress::Basis::fourier();
  if (s == "blocked-fourier" || s == "fourier-block8")
    return compress::Basis::blocked_fourier(8);
  if (s.rfind("packet:", 0) == 0)
    return compress::Basis::packet(io::resolve_filter(s.substr(7)));
  if (s.rfind("wavelet:", 0) == 0)
    return compress::Basis::wavelet(io::resolve_filter(s.substr(8)));
  return compress::Basis::wavelet(io::resolve_filter(s));
}

std::string report_csv(const std::vector<compress::CompressionResult>& rows) {
  std::string out = "basis,fraction,kept_count,l2_rel_error,linf_error\n";
  for (const auto& r : rows) {
    out += r.basis + "," + fmt(r.kept_fraction) + "," + std::to_string(r.kept_count) + "," +
           fmt(r.l2_rel_error) + "," + fmt(r.linf_error) + "\n";
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"wavelet / Fourier transform toolkit"};
  app.require_subcommand(1);

  // ---- fwt ----------------------------------------------------------------
  auto* c_fwt = app.add_subcommand("fwt", "pyramid analysis / synthesis of a CSV signal");
  std::string fwt_in, fwt_out, fwt_filter = "haar", fwt_norm = "orthonormal";
  int fwt_levels = 1;
  bool fwt_inverse = false;
  c_fwt->add_option("--in", fwt_in, "input CSV (signal, or pyramid with --inverse)")
      ->required();
  c_fwt->add_option("--out", fwt_out, "output path (default: stdout)");
  c_fwt->add_option("--filter", fwt_filter, "built-in filter name or filter file")
      ->capture_default_str();
  c_fwt->add_option("--levels", fwt_levels, "decomposition levels (forward only)")
      ->capture_default_str();
  c_fwt->add_option("--normalization", fwt_norm, "orthonormal | paper")
      ->capture_default_str();
  c_fwt->add_flag("--inverse", fwt_inverse, "reconstruct a signal from a pyramid CSV");
  c_fwt->callback([&] {
    const auto f = io::resolve_filter(fwt_filter);
    if (fwt_inverse) {
      const auto p = io::read_pyramid_csv(fwt_in);
      emit(fwt_out, io::format_signal_csv(fwt::synthesize(p, f)));
    } else {
      const auto x = io::read_signal_csv(fwt_in);
      const auto p = fwt::analyze(x, f, fwt_levels, parse_normalization(fwt_norm));
      emit(fwt_out, io::format_pyramid_csv(p));
    }
  });

  // ---- fft ----------------------------------------------------------------
  auto* c_fft = app.add_subcommand("fft", "fast Fourier transform of a complex CSV vector");
  std::string fft_in, fft_out;
  bool fft_inverse = false, fft_count = false;
  c_fft->add_option("--in", fft_in, "input CSV with columns re,im")->required();
  c_fft->add_option("--out", fft_out, "output path (default: stdout)");
  c_fft->add_flag("--inverse", fft_inverse, "apply the inverse transform");
  c_fft->add_flag("--count", fft_count, "print the twiddle multiplication count to stderr");
  c_fft->callback([&] {
    const auto a = io::read_complex_csv(fft_in);
    if (fft_inverse) {
      emit(fft_out, io::format_complex_csv(fft::inverse(a)));
    } else {
      const auto [spec, ops] = fft::forward(a);
      if (fft_count)
        std::fprintf(stderr, "multiplications=%zu\n", ops.multiplications);
      emit(fft_out, io::format_complex_csv(spec.values));
    }
  });

  // ---- check-filter -------------------------------------------------------
  auto* c_check = app.add_subcommand("check-filter", "admissibility report for a filter");
  std::string chk_filter;
  double chk_tol = 1e-10;
  int chk_maxp = 10;
  c_check->add_option("--filter", chk_filter, "built-in filter name or filter file")
      ->required();
  c_check->add_option("--tol", chk_tol, "tolerance for the sum and orthogonality tests")
      ->capture_default_str();
  c_check->add_option("--max-p", chk_maxp, "largest accuracy order probed")
      ->capture_default_str();
  c_check->callback([&] {
    const auto f = io::resolve_filter(chk_filter);
    const auto r = filters::condition_report(f, chk_tol, chk_maxp);
    std::string out;
    out += "filter=" + (f.name.empty() ? std::string("custom") : f.name) + "\n";
    out += "taps=" + std::to_string(f.support_length()) + "\n";
    out += std::string("sum_ok=") + (r.sum_ok ? "true" : "false") + "\n";
    out += "accuracy_order=" + std::to_string(r.accuracy_order) + "\n";
    out += std::string("ortho_ok=") + (r.ortho_ok ? "true" : "false") + "\n";
    out += "ortho_residual=" + fmt(r.ortho_residual) + "\n";
    if (r.lawton) {
      out += std::string("lawton_ok=") + (r.lawton->ok ? "true" : "false") + "\n";
      out += "lawton_gap=" + fmt(r.lawton->gap) + "\n";
    } else {
      out += "lawton_ok=n/a\nlawton_gap=n/a\n";
    }
    std::fputs(out.c_str(), stdout);
  });

  // ---- cascade / wavelet --------------------------------------------------
  auto* c_cascade = app.add_subcommand("cascade", "scaling-function samples on a dyadic grid");
  auto* c_wavelet = app.add_subcommand("wavelet", "wavelet samples on a dyadic grid");
  std::string sc_filter = "d4", sc_out;
  int sc_depth = 10;
  for (auto* cmd : {c_cascade, c_wavelet}) {
    cmd->add_option("--filter", sc_filter, "built-in filter name or filter file")
      ->capture_default_str();
    cmd->add_option("--depth", sc_depth, "dyadic depth J (grid step 2^-J)")
      ->capture_default_str();
    cmd->add_option("--out", sc_out, "output CSV of (x, value) rows (default: stdout)");
  }
  auto emit_samples = [&](const dilation::ScalingFunctionSamples& s) {
    std::string out;
    for (std::size_t i = 0; i < s.values.size(); ++i)
      out += fmt(s.x_at(i)) + "," + fmt(s.values[i]) + "\n";
    emit(sc_out, out);
  };
  c_cascade->callback([&] {
    emit_samples(dilation::refine(io::resolve_filter(sc_filter), sc_depth));
  });
  c_wavelet->callback([&] {
    emit_samples(dilation::wavelet_samples(io::resolve_filter(sc_filter), sc_depth));
  });

  // ---- jsr ----------------------------------------------------------------
  auto* c_jsr = app.add_subcommand(
      "jsr", "joint-spectral-radius bounds for a filter's reduced pair or a matrix pair");
  std::string jsr_filter, jsr_ma, jsr_mb, jsr_norm = "2", jsr_out;
  int jsr_depth = 12;
  c_jsr->add_option("--filter", jsr_filter, "filter whose reduced pair is analyzed");
  c_jsr->add_option("--matrix-a", jsr_ma, "CSV matrix A");
  c_jsr->add_option("--matrix-b", jsr_mb, "CSV matrix B");
  c_jsr->add_option("--depth", jsr_depth, "maximum product length (<= 22)")
      ->capture_default_str();
  c_jsr->add_option("--norm", jsr_norm, "matrix norm: 2 | inf")
      ->capture_default_str();
  c_jsr->add_option("--out", jsr_out, "output path (default: stdout)");
  c_jsr->callback([&] {
    const auto norm = jsr_norm == "inf" ? jsr::MatrixNorm::Infinity
                      : jsr_norm == "2"
                          ? jsr::MatrixNorm::Two
                          : throw CLI::ValidationError("--norm", "must be 2 or inf");
    std::string out = "lower,upper,depth,argmax_word,alpha_lower,alpha_upper\n";
    if (!jsr_filter.empty()) {
      const auto f = io::resolve_filter(jsr_filter);
      const auto h = jsr::holder_estimate(f, jsr_depth, norm);
      if (!h) {
        out += "n/a,n/a," + std::to_string(jsr_depth) + ",,n/a,n/a\n";
      } else {
        out += fmt(h->radius.lower) + "," + fmt(h->radius.upper) + "," +
               std::to_string(h->radius.depth) + "," + h->radius.argmax_word + "," +
               fmt(h->alpha_lower) + "," + fmt(h->alpha_upper) + "\n";
      }
    } else if (!jsr_ma.empty() && !jsr_mb.empty()) {
      const auto a = io::read_matrix_csv(jsr_ma);
      const auto b = io::read_matrix_csv(jsr_mb);
      const auto est = jsr::bounds(a, b, jsr_depth, norm);
      out += fmt(est.lower) + "," + fmt(est.upper) + "," + std::to_string(est.depth) + "," +
             est.argmax_word + ",,\n";
    } else {
      throw CLI::ValidationError("jsr", "need --filter or both --matrix-a and --matrix-b");
    }
    emit(jsr_out, out);
  });

  // ---- compress -----------------------------------------------------------
  auto* c_comp = app.add_subcommand("compress",
                                    "threshold compression of a CSV signal or PGM image");
  std::string cmp_in, cmp_out, cmp_report, cmp_basis = "fourier";
  double cmp_keep = 0.05;
  int cmp_levels = 0;
  c_comp->add_option("--in", cmp_in, "input signal (.csv) or image (.pgm)")->required();
  c_comp->add_option("--basis", cmp_basis,
                     "fourier | blocked-fourier | <filter> | wavelet:<filter> | packet:<filter>")
      ->capture_default_str();
  c_comp->add_option("--keep", cmp_keep, "kept fraction of coefficients, in (0,1]")
      ->capture_default_str();
  c_comp->add_option("--levels", cmp_levels, "wavelet levels (0 = automatic)")
      ->capture_default_str();
  c_comp->add_option("--out", cmp_out, "reconstruction output (.csv or .pgm)");
  c_comp->add_option("--report", cmp_report, "CSV report path (default: stdout)");
  c_comp->callback([&] {
    auto basis = parse_basis(cmp_basis);
    basis.levels = cmp_levels;
    std::vector<compress::CompressionResult> rows;
    if (has_suffix(cmp_in, ".pgm")) {
      const auto img = io::read_pgm(cmp_in);
      auto [r, rec] = compress::compress_image(img, basis, cmp_keep);
      rows.push_back(r);
      if (!cmp_out.empty()) io::write_pgm(cmp_out, rec);
    } else {
      const auto x = io::read_signal_csv(cmp_in);
      auto [r, rec] = compress::compress_in_basis(x, basis, cmp_keep);
      rows.push_back(r);
      if (!cmp_out.empty()) io::write_signal_csv(cmp_out, rec);
    }
    const auto csv = report_csv(rows);
    if (!cmp_report.empty())
      io::atomic_write(cmp_report, csv);
    else
      std::fputs(csv.c_str(), stdout);
  });

  // ---- contest ------------------------------------------------------------
  auto* c_contest = app.add_subcommand(
      "contest", "compression comparison across bases and kept fractions");
  std::string con_in, con_report;
  std::vector<std::string> con_bases{"haar", "fourier", "blocked-fourier"};
  std::vector<double> con_fracs{0.05};
  int con_levels = 0;
  c_contest->add_option("--in", con_in, "input signal (.csv) or image (.pgm)")->required();
  c_contest->add_option("--bases", con_bases, "comma-separated basis list")
      ->capture_default_str()
      ->delimiter(',');
  c_contest->add_option("--fractions", con_fracs, "comma-separated kept fractions")
      ->capture_default_str()
      ->delimiter(',');
  c_contest->add_option("--levels", con_levels, "wavelet levels (0 = automatic)")
      ->capture_default_str();
  c_contest->add_option("--report", con_report, "CSV report path (default: stdout)");
  c_contest->callback([&] {
    std::vector<compress::Basis> bases;
    for (const auto& s : con_bases) {
      bases.push_back(parse_basis(s));
      bases.back().levels = con_levels;
    }
    std::vector<compress::CompressionResult> rows;
    if (has_suffix(con_in, ".pgm"))
      rows = compress::contest_report(io::read_pgm(con_in), bases, con_fracs);
    else
      rows = compress::contest_report(io::read_signal_csv(con_in), bases, con_fracs);
    const auto csv = report_csv(rows);
    if (!con_report.empty())
      io::atomic_write(con_report, csv);
    else
      std::fputs(csv.c_str(), stdout);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
