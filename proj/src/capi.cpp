#include "qdec.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdec/config.hpp"
#include "qdec/errors.hpp"
#include "qdec/io.hpp"
#include "qdec/sim.hpp"

struct qdec_model {
  qdec::DecodingModel model;
};

struct qdec_decoder {
  const qdec_model* model;
  qdec::DecoderPipeline pipeline;
  std::string last_trace;
};

namespace {

thread_local std::string g_last_error;

int set_error(int code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return QDEC_OK;
  } catch (const qdec::config_error& e) {
    return set_error(QDEC_ERR_CONFIG, e.what());
  } catch (const qdec::parse_error& e) {
    return set_error(QDEC_ERR_PARSE, e.what());
  } catch (const qdec::io_error& e) {
    return set_error(QDEC_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return set_error(QDEC_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(QDEC_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return set_error(QDEC_ERR_RUNTIME, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int require(bool cond, const char* message) {
  if (cond) return QDEC_OK;
  return set_error(QDEC_ERR_INVALID_ARGUMENT, message);
}

int collect_models(const qdec_model* const* models, size_t n_models,
                   std::vector<const qdec::DecodingModel*>& out) {
  if (int rc = require(models && n_models >= 1 && n_models <= 2,
                       "expected one or two sector models"))
    return rc;
  for (size_t i = 0; i < n_models; ++i) {
    if (int rc = require(models[i] != nullptr, "null model")) return rc;
    out.push_back(&models[i]->model);
  }
  return QDEC_OK;
}

}  // namespace

extern "C" {

const char* qdec_version(void) { return "0.1.0"; }

const char* qdec_last_error(void) { return g_last_error.c_str(); }

void qdec_string_free(char* s) { delete[] s; }

int qdec_model_build(const char* build_config_json, qdec_model** out) {
  if (int rc = require(build_config_json && out, "null argument")) return rc;
  return guarded([&] {
    auto handle = std::make_unique<qdec_model>();
    handle->model = qdec::config::model_from_build_json(build_config_json);
    *out = handle.release();
  });
}

int qdec_model_load(const char* path, qdec_model** out) {
  if (int rc = require(path && out, "null argument")) return rc;
  return guarded([&] {
    auto handle = std::make_unique<qdec_model>();
    handle->model = qdec::io::load_model(path);
    *out = handle.release();
  });
}

int qdec_model_save(const qdec_model* model, const char* path) {
  if (int rc = require(model && path, "null argument")) return rc;
  return guarded([&] { qdec::io::save_model(model->model, path); });
}

int qdec_model_from_fault_list(const char* path, qdec_model** out) {
  if (int rc = require(path && out, "null argument")) return rc;
  return guarded([&] {
    auto handle = std::make_unique<qdec_model>();
    handle->model = qdec::io::load_fault_list(path);
    *out = handle.release();
  });
}

void qdec_model_free(qdec_model* model) { delete model; }

size_t qdec_model_detectors(const qdec_model* model) { return model ? model->model.detectors() : 0; }
size_t qdec_model_columns(const qdec_model* model) { return model ? model->model.columns() : 0; }
size_t qdec_model_observables(const qdec_model* model) {
  return model ? model->model.observables() : 0;
}
size_t qdec_model_rounds(const qdec_model* model) { return model ? model->model.rounds : 0; }

double qdec_model_prior(const qdec_model* model, size_t column) {
  if (!model || column >= model->model.columns()) return -1.0;
  return model->model.priors[column];
}

int qdec_model_info(const qdec_model* model, char** json_out) {
  if (int rc = require(model && json_out, "null argument")) return rc;
  return guarded([&] {
    nlohmann::json j;
    j["detectors"] = model->model.detectors();
    j["columns"] = model->model.columns();
    j["observables"] = model->model.observables();
    j["rounds"] = model->model.rounds;
    j["name"] = model->model.name;
    j["digest"] = model->model.digest();
    if (!model->model.warnings.empty()) j["warnings"] = model->model.warnings;
    *json_out = dup_string(j.dump());
  });
}

int qdec_decoder_create(const qdec_model* model, const char* decoder_config_json,
                        qdec_decoder** out) {
  if (int rc = require(model && decoder_config_json && out, "null argument")) return rc;
  return guarded([&] {
    const qdec::DecoderSpec spec = qdec::config::decoder_spec_from_json(decoder_config_json);
    *out = new qdec_decoder{model, qdec::DecoderPipeline(model->model, spec), {}};
  });
}

void qdec_decoder_free(qdec_decoder* decoder) { delete decoder; }

int qdec_decoder_decode(qdec_decoder* decoder, const uint8_t* syndrome, size_t syndrome_len,
                        uint8_t* error_out, size_t error_len, double* cost_out,
                        uint64_t* queries_out) {
  if (int rc = require(decoder && syndrome && error_out, "null argument")) return rc;
  const auto& model = decoder->model->model;
  if (int rc = require(syndrome_len == model.detectors(), "syndrome length != detector count"))
    return rc;
  if (int rc = require(error_len >= model.columns(), "error buffer shorter than column count"))
    return rc;
  return guarded([&] {
    qdec::BitVector s(syndrome_len);
    for (size_t i = 0; i < syndrome_len; ++i)
      if (syndrome[i]) s.set(i, true);
    const qdec::DecodeResult result = decoder->pipeline.decode(s);
    for (size_t i = 0; i < model.columns(); ++i) error_out[i] = result.error.get(i) ? 1 : 0;
    if (cost_out) *cost_out = result.cost;
    if (queries_out) *queries_out = result.queries;
    decoder->last_trace = result.trace;
  });
}

const char* qdec_decoder_last_trace(const qdec_decoder* decoder) {
  return decoder ? decoder->last_trace.c_str() : "";
}

int qdec_simulate(const qdec_model* const* models, size_t n_models, const char* run_config_json,
                  char** result_json_out) {
  if (int rc = require(run_config_json && result_json_out, "null argument")) return rc;
  std::vector<const qdec::DecodingModel*> sectors;
  if (int rc = collect_models(models, n_models, sectors)) return rc;
  return guarded([&] {
    const qdec::config::RunOptions opt = qdec::config::run_options_from_json(run_config_json);
    qdec::SimOptions sim;
    sim.shots = opt.shots;
    sim.seed = opt.seed;
    sim.workers = opt.workers;
    const qdec::RunStats stats = qdec::run_monte_carlo(sectors, opt.decoder, sim);
    *result_json_out = dup_string(qdec::config::run_stats_to_json(stats));
  });
}

int qdec_compare(const qdec_model* const* models, size_t n_models, const char* decoder_a_json,
                 const char* decoder_b_json, uint64_t shots, uint64_t seed, uint32_t workers,
                 char** result_json_out) {
  if (int rc = require(decoder_a_json && decoder_b_json && result_json_out, "null argument"))
    return rc;
  std::vector<const qdec::DecodingModel*> sectors;
  if (int rc = collect_models(models, n_models, sectors)) return rc;
  return guarded([&] {
    const qdec::DecoderSpec spec_a = qdec::config::decoder_spec_from_json(decoder_a_json);
    const qdec::DecoderSpec spec_b = qdec::config::decoder_spec_from_json(decoder_b_json);
    const qdec::MatchedComparison cmp =
        qdec::compare_matched(sectors, spec_a, spec_b, shots, seed, workers);
    *result_json_out = dup_string(qdec::config::comparison_to_json(cmp));
  });
}

const char* qdec_stats_csv_header(void) {
  static const std::string header = qdec::stats_csv_header();
  return header.c_str();
}

int qdec_stats_csv_row(const char* result_json, char** row_out) {
  if (int rc = require(result_json && row_out, "null argument")) return rc;
  return guarded([&] {
    const qdec::RunStats stats = qdec::config::run_stats_from_json(result_json);
    *row_out = dup_string(qdec::stats_csv_row(stats));
  });
}

}  // extern "C"
