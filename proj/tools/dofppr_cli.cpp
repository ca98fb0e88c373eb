// dofppr command line: fit, path, generate. Talks to the library only through
// the C interface.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dofppr/dofppr.h"

namespace {

constexpr int exit_failure = 2;

struct failure {
  std::string message;
};

void check(dofppr_status status) {
  if (status != DOFPPR_OK) {
    throw failure{std::string(dofppr_status_name(status)) + ": " + dofppr_last_error()};
  }
}

// Owns a malloc'd string handed out by the library.
struct owned_string {
  char* p = nullptr;
  ~owned_string() { dofppr_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw failure{"cannot write " + path};
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw failure{"IOError: cannot open " + path};
  return {std::istreambuf_iterator<char>(in), {}};
}

struct input_args {
  std::string path = "-";
  std::optional<bool> header;
  std::size_t weights_col = 3;
};

struct model_args {
  int nu_max_local = 11;
  std::optional<int> nu_total;
  bool allow_interpolation = false;
  unsigned threads = 0;
};

void add_input_flags(CLI::App* cmd, input_args& in) {
  cmd->add_option("input", in.path, "CSV file with columns t,y[,w]; '-' reads stdin")
      ->capture_default_str();
  cmd->add_flag("--header,!--no-header", in.header,
                "first row is (not) a header; detected when omitted");
  cmd->add_option("--weights-col", in.weights_col, "1-based weight column, 0 ignores weights")
      ->capture_default_str();
}

void add_model_flags(CLI::App* cmd, model_args& m) {
  cmd->add_option("--nu-max-local", m.nu_max_local, "per-segment dof ceiling")
      ->capture_default_str();
  cmd->add_option("--nu-total", m.nu_total, "total dof ceiling (default: none)");
  cmd->add_flag("--allow-interpolation", m.allow_interpolation,
                "let a segment of k samples use k dofs");
  cmd->add_option("--threads", m.threads, "worker threads (default: DOFPPR_THREADS or 1)");
}

dofppr_series* load_series(const input_args& in) {
  const dofppr_header header = !in.header  ? DOFPPR_HEADER_DETECT
                               : *in.header ? DOFPPR_HEADER_PRESENT
                                            : DOFPPR_HEADER_ABSENT;
  dofppr_series* series = nullptr;
  check(dofppr_series_read_csv(in.path.c_str(), header, in.weights_col, &series));
  return series;
}

dofppr_options make_options(const model_args& m) {
  dofppr_options o;
  dofppr_options_init(&o);
  o.nu_max_local = m.nu_max_local;
  if (m.nu_total) {
    if (*m.nu_total < 1) throw failure{"InvalidArgument: --nu-total must be >= 1"};
    o.nu_total = *m.nu_total;
  }
  o.exclude_interpolation = m.allow_interpolation ? 0 : 1;
  if (m.threads > 0) o.threads = m.threads;
  return o;
}

struct series_guard {
  dofppr_series* s;
  ~series_guard() { dofppr_series_free(s); }
};

struct model_guard {
  dofppr_model* m = nullptr;
  ~model_guard() { dofppr_model_free(m); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degrees-of-freedom penalized piecewise polynomial regression"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dofppr_version()));

  input_args fit_in;
  model_args fit_model;
  std::optional<double> gamma;
  std::string select = "ose";
  std::string metric = "l2";
  std::string format = "json";
  std::string fit_out = "-";
  auto* fit = app.add_subcommand("fit", "fit a model, selecting the penalty by rolling CV");
  add_input_flags(fit, fit_in);
  add_model_flags(fit, fit_model);
  fit->add_option("--gamma", gamma, "fixed penalty; skips cross-validation")
      ->check(CLI::NonNegativeNumber);
  fit->add_option("--select", select, "selection rule")
      ->check(CLI::IsMember({"cv", "ose"}))
      ->capture_default_str();
  fit->add_option("--cv-metric", metric, "CV loss")
      ->check(CLI::IsMember({"l2", "l1"}))
      ->capture_default_str();
  fit->add_option("--output", format, "report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  fit->add_option("-o,--out", fit_out, "output file, '-' for stdout")->capture_default_str();

  input_args path_in;
  model_args path_model;
  std::string path_out = "-";
  auto* path = app.add_subcommand("path", "export the full regularization path");
  add_input_flags(path, path_in);
  add_model_flags(path, path_model);
  path->add_option("-o,--out", path_out, "output file, '-' for stdout")->capture_default_str();

  std::string preset = "heavisine";
  std::string spec_file;
  std::size_t n = 0;
  double sigma = -1.0;
  unsigned long long seed = 0;
  std::string gen_out = "-";
  std::string truth_out;
  auto* generate = app.add_subcommand("generate", "sample a synthetic series");
  generate->add_option("--preset", preset, "heavisine, fixture, three-piece or random")
      ->check(CLI::IsMember({"heavisine", "fixture", "three-piece", "random"}))
      ->capture_default_str();
  generate->add_option("--spec", spec_file, "JSON piecewise polynomial spec file");
  generate->add_option("--n", n, "number of samples (default: preset or spec)");
  generate->add_option("--sigma", sigma, "noise standard deviation (default: preset or spec)");
  generate->add_option("--seed", seed, "random seed")->capture_default_str();
  generate->add_option("-o,--out", gen_out, "CSV output, '-' for stdout")
      ->capture_default_str();
  generate->add_option("--truth", truth_out, "ground-truth JSON output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_failure;
  }

  try {
    if (fit->parsed()) {
      series_guard s{load_series(fit_in)};
      auto o = make_options(fit_model);
      if (gamma) {
        o.fixed_gamma = 1;
        o.gamma = *gamma;
      }
      o.selection = select == "cv" ? DOFPPR_SELECT_CV : DOFPPR_SELECT_OSE;
      o.metric = metric == "l1" ? DOFPPR_METRIC_L1 : DOFPPR_METRIC_L2;
      model_guard m;
      check(dofppr_fit(s.s, &o, &m.m));
      owned_string text;
      check(format == "csv" ? dofppr_model_to_csv(m.m, &text.p)
                            : dofppr_model_to_json(m.m, &text.p));
      write_text(fit_out, text.str());
    } else if (path->parsed()) {
      series_guard s{load_series(path_in)};
      const auto o = make_options(path_model);
      owned_string text;
      check(dofppr_path_json(s.s, &o, &text.p));
      write_text(path_out, text.str());
    } else if (generate->parsed()) {
      std::string spec_text;
      if (!spec_file.empty()) spec_text = read_text(spec_file);
      // Preset defaults when --n / --sigma are omitted.
      if (n == 0) n = preset == "fixture" ? 150 : preset == "heavisine" ? 500 : 100;
      if (sigma < 0.0) {
        sigma = preset == "fixture" ? 0.05 : preset == "heavisine" ? 0.5 : 0.01;
      }
      owned_string csv;
      owned_string truth;
      check(dofppr_generate(preset.c_str(), spec_file.empty() ? nullptr : spec_text.c_str(), n,
                            sigma, seed, &csv.p, &truth.p));
      write_text(gen_out, csv.str());
      if (!truth_out.empty()) write_text(truth_out, truth.str());
    }
  } catch (const failure& f) {
    std::cerr << "dofppr: " << f.message << '\n';
    return exit_failure;
  } catch (const std::exception& e) {
    std::cerr << "dofppr: " << e.what() << '\n';
    return exit_failure;
  }
  return 0;
}
