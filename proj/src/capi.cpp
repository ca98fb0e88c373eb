#include "dofppr/dofppr.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <limits>
#include <new>
#include <string>

#include <json.hpp>

#include "dofppr/csv.hpp"
#include "dofppr/datagen.hpp"
#include "dofppr/error.hpp"
#include "dofppr/fit.hpp"
#include "dofppr/report.hpp"

struct dofppr_series {
  dofppr::TimeSeries ts;
};

struct dofppr_model {
  dofppr::TimeSeries ts;
  dofppr::FitResult result;
  dofppr::FitReport report;
};

namespace {

thread_local std::string last_error;

dofppr_status to_status(dofppr::ErrorCode code) {
  using dofppr::ErrorCode;
  switch (code) {
    case ErrorCode::empty_input: return DOFPPR_ERR_EMPTY_INPUT;
    case ErrorCode::invalid_sample: return DOFPPR_ERR_INVALID_SAMPLE;
    case ErrorCode::index_error: return DOFPPR_ERR_INDEX;
    case ErrorCode::infeasible_fit: return DOFPPR_ERR_INFEASIBLE_FIT;
    case ErrorCode::infeasible: return DOFPPR_ERR_INFEASIBLE;
    case ErrorCode::duplicate_slope: return DOFPPR_ERR_DUPLICATE_SLOPE;
    case ErrorCode::invalid_penalty: return DOFPPR_ERR_INVALID_PENALTY;
    case ErrorCode::not_enough_data: return DOFPPR_ERR_NOT_ENOUGH_DATA;
    case ErrorCode::invalid_argument: return DOFPPR_ERR_INVALID_ARGUMENT;
    case ErrorCode::parse_error: return DOFPPR_ERR_PARSE;
    case ErrorCode::io_error: return DOFPPR_ERR_IO;
  }
  return DOFPPR_ERR_INTERNAL;
}

template <typename Fn>
dofppr_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return DOFPPR_OK;
  } catch (const dofppr::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return DOFPPR_ERR_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) throw dofppr::Error(dofppr::ErrorCode::invalid_argument, what);
}

char* dup_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

dofppr::FitOptions to_fit_options(const dofppr_options* o) {
  dofppr::FitOptions f;
  f.caps.local_max = o->nu_max_local;
  if (o->nu_total < 0) {
    throw dofppr::Error(dofppr::ErrorCode::invalid_argument, "nu_total must be >= 0");
  }
  if (o->nu_total > 0) f.caps.total = o->nu_total;
  f.caps.exclude_interpolation = o->exclude_interpolation != 0;
  if (o->fixed_gamma) f.gamma = o->gamma;
  f.selection = o->selection == DOFPPR_SELECT_CV ? dofppr::Selection::cv : dofppr::Selection::ose;
  f.metric = o->metric == DOFPPR_METRIC_L1 ? dofppr::CvMetric::absolute
                                           : dofppr::CvMetric::squared;
  f.threads = o->threads == 0 ? 1 : o->threads;
  f.validate();
  return f;
}

unsigned default_threads() {
  if (const char* env = std::getenv("DOFPPR_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
  }
  return 1;
}

}  // namespace

extern "C" {

const char* dofppr_version(void) { return "1.0.0"; }

const char* dofppr_last_error(void) { return last_error.c_str(); }

const char* dofppr_status_name(dofppr_status status) {
  switch (status) {
    case DOFPPR_OK: return "OK";
    case DOFPPR_ERR_EMPTY_INPUT: return "EmptyInput";
    case DOFPPR_ERR_INVALID_SAMPLE: return "InvalidSample";
    case DOFPPR_ERR_INDEX: return "IndexError";
    case DOFPPR_ERR_INFEASIBLE_FIT: return "InfeasibleFit";
    case DOFPPR_ERR_INFEASIBLE: return "Infeasible";
    case DOFPPR_ERR_DUPLICATE_SLOPE: return "DuplicateSlope";
    case DOFPPR_ERR_INVALID_PENALTY: return "InvalidPenalty";
    case DOFPPR_ERR_NOT_ENOUGH_DATA: return "NotEnoughData";
    case DOFPPR_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case DOFPPR_ERR_PARSE: return "ParseError";
    case DOFPPR_ERR_IO: return "IOError";
    case DOFPPR_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

void dofppr_string_free(char* s) { std::free(s); }

void dofppr_options_init(dofppr_options* options) {
  if (!options) return;
  options->nu_max_local = dofppr::default_local_dof_cap;
  options->nu_total = 0;
  options->exclude_interpolation = 1;
  options->fixed_gamma = 0;
  options->gamma = 0.0;
  options->selection = DOFPPR_SELECT_OSE;
  options->metric = DOFPPR_METRIC_L2;
  options->threads = default_threads();
}

dofppr_status dofppr_series_create(const double* times, const double* values,
                                   const double* weights, size_t n, dofppr_series** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    *out = nullptr;
    if (n == 0) throw dofppr::Error(dofppr::ErrorCode::empty_input, "no samples");
    require(times && values, "null data pointer");
    std::vector<dofppr::Record> records(n);
    for (size_t i = 0; i < n; ++i) {
      records[i] = {times[i], values[i],
                    weights ? std::optional<double>(weights[i]) : std::nullopt};
    }
    *out = new dofppr_series{dofppr::ingest(records)};
  });
}

dofppr_status dofppr_series_read_csv(const char* path, dofppr_header header, size_t weights_col,
                                     dofppr_series** out) {
  return guarded([&] {
    require(out != nullptr && path != nullptr, "null argument");
    *out = nullptr;
    dofppr::CsvOptions opts;
    opts.header = header == DOFPPR_HEADER_PRESENT  ? dofppr::HeaderMode::present
                  : header == DOFPPR_HEADER_ABSENT ? dofppr::HeaderMode::absent
                                                   : dofppr::HeaderMode::detect;
    opts.weights_col = weights_col;
    auto ts = std::strcmp(path, "-") == 0 ? dofppr::read_csv(std::cin, opts)
                                          : dofppr::read_csv_file(path, opts);
    *out = new dofppr_series{std::move(ts)};
  });
}

size_t dofppr_series_length(const dofppr_series* series) {
  return series ? series->ts.size() : 0;
}

dofppr_status dofppr_series_data(const dofppr_series* series, const double** times,
                                 const double** values, const double** weights) {
  return guarded([&] {
    require(series != nullptr, "null series");
    if (times) *times = series->ts.times().data();
    if (values) *values = series->ts.values().data();
    if (weights) *weights = series->ts.weights().data();
  });
}

void dofppr_series_free(dofppr_series* series) { delete series; }

dofppr_status dofppr_fit(const dofppr_series* series, const dofppr_options* options,
                         dofppr_model** out) {
  return guarded([&] {
    require(out != nullptr && series != nullptr, "null argument");
    *out = nullptr;
    dofppr_options defaults;
    dofppr_options_init(&defaults);
    const auto opts = to_fit_options(options ? options : &defaults);
    auto result = dofppr::fit(series->ts, opts);
    auto report = dofppr::make_fit_report(series->ts, result);
    *out = new dofppr_model{series->ts, std::move(result), std::move(report)};
  });
}

void dofppr_model_free(dofppr_model* model) { delete model; }

size_t dofppr_model_segment_count(const dofppr_model* model) {
  return model ? model->report.segments.size() : 0;
}

dofppr_status dofppr_model_segment(const dofppr_model* model, size_t index, size_t* first,
                                   size_t* last, int* dof) {
  return guarded([&] {
    require(model != nullptr, "null model");
    if (index >= model->report.segments.size()) {
      throw dofppr::Error(dofppr::ErrorCode::index_error, "segment index out of range");
    }
    const auto& s = model->report.segments[index];
    if (first) *first = s.first;
    if (last) *last = s.last;
    if (dof) *dof = s.dof;
  });
}

dofppr_status dofppr_model_breaks(const dofppr_model* model, double* out) {
  return guarded([&] {
    require(model != nullptr, "null model");
    require(out != nullptr || model->report.breaks.empty(), "null output");
    std::copy(model->report.breaks.begin(), model->report.breaks.end(), out);
  });
}

dofppr_status dofppr_model_gammas(const dofppr_model* model, double* selected, double* gamma_cv,
                                  double* gamma_ose) {
  return guarded([&] {
    require(model != nullptr, "null model");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (selected) *selected = model->report.gamma;
    if (gamma_cv) *gamma_cv = model->report.gamma_cv.value_or(nan);
    if (gamma_ose) *gamma_ose = model->report.gamma_ose.value_or(nan);
  });
}

dofppr_status dofppr_model_energy(const dofppr_model* model, double* residual, double* energy) {
  return guarded([&] {
    require(model != nullptr, "null model");
    if (residual) *residual = model->report.residual;
    if (energy) *energy = model->report.energy;
  });
}

dofppr_status dofppr_model_predict(const dofppr_model* model, const double* t, size_t n,
                                   double* out) {
  return guarded([&] {
    require(model != nullptr, "null model");
    require(n == 0 || (t != nullptr && out != nullptr), "null data pointer");
    for (size_t i = 0; i < n; ++i) out[i] = dofppr::predict(model->result.model, t[i]);
  });
}

dofppr_status dofppr_model_to_json(const dofppr_model* model, char** out) {
  return guarded([&] {
    require(model != nullptr && out != nullptr, "null argument");
    *out = dup_string(dofppr::to_json(model->report));
  });
}

dofppr_status dofppr_model_to_csv(const dofppr_model* model, char** out) {
  return guarded([&] {
    require(model != nullptr && out != nullptr, "null argument");
    *out = dup_string(dofppr::to_csv(model->report));
  });
}

dofppr_status dofppr_path_json(const dofppr_series* series, const dofppr_options* options,
                               char** out) {
  return guarded([&] {
    require(series != nullptr && out != nullptr, "null argument");
    dofppr_options defaults;
    dofppr_options_init(&defaults);
    const auto opts = to_fit_options(options ? options : &defaults);
    *out = dup_string(to_json(dofppr::make_path_report(series->ts, opts.caps, opts.threads)));
  });
}

dofppr_status dofppr_generate(const char* preset, const char* spec_json, size_t n, double sigma,
                              unsigned long long seed, char** csv, char** truth_json) {
  return guarded([&] {
    require(csv != nullptr && truth_json != nullptr, "null output");
    require(n >= 1, "n must be >= 1");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
      throw dofppr::Error(dofppr::ErrorCode::invalid_argument, "sigma must be finite and >= 0");
    }
    const std::string name = preset ? preset : "";
    nlohmann::json truth;
    truth["n"] = n;
    truth["sigma"] = sigma;
    truth["seed"] = seed;
    std::optional<dofppr::TimeSeries> ts;
    if (spec_json || name != "heavisine") {
      dofppr::PiecewisePolySpec spec;
      if (spec_json) {
        spec = dofppr::spec_from_json(spec_json);
        truth["signal"] = "custom";
      } else if (name == "fixture") {
        spec = dofppr::fixture_spec();
      } else if (name == "three-piece") {
        spec = dofppr::three_piece_spec();
      } else if (name == "random") {
        spec = dofppr::random_spec(seed, 4, 3);
      } else {
        throw dofppr::Error(dofppr::ErrorCode::invalid_argument, "unknown preset '" + name + "'");
      }
      if (!spec_json) truth["signal"] = name;
      spec.n = n;
      spec.sigma = sigma;
      spec.seed = seed;
      ts = dofppr::sample(spec);
      truth["breaks"] = spec.breaks;
      truth["pieces"] = spec.pieces;
    } else {
      ts = dofppr::sample_heavisine(n, sigma, seed);
      truth["signal"] = "heavisine";
      truth["breaks"] = {0.3, 0.72};
      truth["pieces"] = nullptr;
    }
    const std::string csv_text = dofppr::series_to_csv(*ts);
    const std::string truth_text = truth.dump(2) + "\n";
    *csv = dup_string(csv_text);
    try {
      *truth_json = dup_string(truth_text);
    } catch (...) {
      std::free(*csv);
      *csv = nullptr;
      throw;
    }
  });
}

}  // extern "C"
