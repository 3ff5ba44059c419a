/* qdec — quantum LDPC syndrome-decoding toolkit, C interface.
 *
 * All functions return QDEC_OK (0) on success or a negative error code;
 * qdec_last_error() describes the most recent failure on the calling
 * thread. Objects are opaque handles released with their _free function.
 * Strings returned through char** are owned by the caller and released
 * with qdec_string_free().
 */
#ifndef QDEC_H
#define QDEC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined _WIN32
#define QDEC_API __declspec(dllexport)
#else
#define QDEC_API __attribute__((visibility("default")))
#endif

enum qdec_status {
  QDEC_OK = 0,
  QDEC_ERR_INVALID_ARGUMENT = -1, /* precondition violated */
  QDEC_ERR_CONFIG = -2,           /* malformed configuration */
  QDEC_ERR_PARSE = -3,            /* malformed input file */
  QDEC_ERR_IO = -4,               /* file system failure */
  QDEC_ERR_RUNTIME = -5,          /* anything else */
};

typedef struct qdec_model qdec_model;
typedef struct qdec_decoder qdec_decoder;

QDEC_API const char* qdec_version(void);

/* Message for the last error on this thread; empty string if none. */
QDEC_API const char* qdec_last_error(void);

QDEC_API void qdec_string_free(char* s);

/* -- models ------------------------------------------------------------- */

/* Build one sector model from a build-config JSON document; see the README
 * for the schema. */
QDEC_API int qdec_model_build(const char* build_config_json, qdec_model** out);

/* Load / save the model JSON format. */
QDEC_API int qdec_model_load(const char* path, qdec_model** out);
QDEC_API int qdec_model_save(const qdec_model* model, const char* path);

/* Ingest a fault-list file (merging indistinguishable faults). */
QDEC_API int qdec_model_from_fault_list(const char* path, qdec_model** out);

QDEC_API void qdec_model_free(qdec_model* model);

QDEC_API size_t qdec_model_detectors(const qdec_model* model);
QDEC_API size_t qdec_model_columns(const qdec_model* model);
QDEC_API size_t qdec_model_observables(const qdec_model* model);
QDEC_API size_t qdec_model_rounds(const qdec_model* model);
QDEC_API double qdec_model_prior(const qdec_model* model, size_t column);

/* Dimensions, digest, name and warnings as a JSON document. */
QDEC_API int qdec_model_info(const qdec_model* model, char** json_out);

/* -- single-shot decoding ------------------------------------------------ */

/* decoder_config_json: {"variant":"bfosd","q":121,"bp":{...},...}; see the
 * README for the schema. The model must outlive the decoder. */
QDEC_API int qdec_decoder_create(const qdec_model* model, const char* decoder_config_json,
                                 qdec_decoder** out);
QDEC_API void qdec_decoder_free(qdec_decoder* decoder);

/* syndrome: one byte per detector (0/1). error_out: one byte per column,
 * written 0/1. cost_out/queries_out may be NULL. */
QDEC_API int qdec_decoder_decode(qdec_decoder* decoder, const uint8_t* syndrome,
                                 size_t syndrome_len, uint8_t* error_out, size_t error_len,
                                 double* cost_out, uint64_t* queries_out);

/* Pop trace of the last decode ("q=<n> T={..} cost=<c>" lines) when the
 * decoder config enabled tracing; valid until the next decode. */
QDEC_API const char* qdec_decoder_last_trace(const qdec_decoder* decoder);

/* -- Monte Carlo --------------------------------------------------------- */

/* models: one or two sector models (a shot fails if any sector fails).
 * run_config_json: {"decoder":{...},"shots":N,"seed":S,"workers":W}.
 * Returns the run statistics as a JSON document. */
QDEC_API int qdec_simulate(const qdec_model* const* models, size_t n_models,
                           const char* run_config_json, char** result_json_out);

/* Matched-shot comparison: both decoders see byte-identical sampled shots. */
QDEC_API int qdec_compare(const qdec_model* const* models, size_t n_models,
                          const char* decoder_a_json, const char* decoder_b_json, uint64_t shots,
                          uint64_t seed, uint32_t workers, char** result_json_out);

/* CSV rendering of simulate results (documented column schema). */
QDEC_API const char* qdec_stats_csv_header(void);
QDEC_API int qdec_stats_csv_row(const char* result_json, char** row_out);

#ifdef __cplusplus
}
#endif

#endif /* QDEC_H */
