/* C interface to the coreeff library. Strings returned through `char**`
 * out-parameters are owned by the caller and released with ce_string_free. */
#ifndef COREEFF_COREEFF_H
#define COREEFF_COREEFF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CE_API __declspec(dllexport)
#else
#define CE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ce_status {
  CE_OK = 0,
  CE_ERR_PARSE = 1,
  CE_ERR_JUDGMENT = 2,
  CE_ERR_ARGUMENT = 3,
  CE_ERR_BUDGET = 4,
  CE_ERR_UNSATISFIABLE = 5,
  CE_ERR_VERIFY_FAILED = 6,
  CE_ERR_INTERNAL = 7
} ce_status;

typedef struct ce_corpus ce_corpus;
typedef struct ce_result ce_result;

typedef struct ce_metrics {
  int32_t dirt_nodes;
  int32_t dirt_edges;
  int32_t type_nodes;
  int32_t type_edges;
} ce_metrics;

/* Message of the last failure on the calling thread; never NULL. */
CE_API const char* ce_last_error(void);
CE_API const char* ce_version(void);

CE_API ce_status ce_corpus_parse(const char* text, size_t len, ce_corpus** out);
CE_API void ce_corpus_free(ce_corpus* corpus);
CE_API size_t ce_corpus_size(const ce_corpus* corpus);
CE_API const char* ce_corpus_item_name(const ce_corpus* corpus, size_t index);
/* SIZE_MAX when absent. */
CE_API size_t ce_corpus_find(const ce_corpus* corpus, const char* name);

/* phases: none|scc|dirt|type|all|custom:<list>. */
CE_API ce_status ce_simplify(const ce_corpus* corpus, size_t index, const char* phases, int full_dirt,
                             ce_result** out);
CE_API void ce_result_free(ce_result* result);
CE_API ce_status ce_result_metrics(const ce_result* result, ce_metrics* before, ce_metrics* after);
/* format: json|dot|table|core|type. */
CE_API ce_status ce_result_emit(const ce_result* result, const char* format, char** out);
/* Aligned table over several results (one row each). */
CE_API ce_status ce_results_table(const ce_result* const* results, size_t count, char** out);

/* JSON report; CE_ERR_VERIFY_FAILED when any sample fails. */
CE_API ce_status ce_verify(const ce_corpus* corpus, size_t index, const char* phases, int full_dirt,
                           int samples, uint64_t seed, size_t budget, char** out);

/* format: json|table|items. */
CE_API ce_status ce_report(const ce_corpus* corpus, const char* const* configs, size_t config_count, int full_dirt,
                           const char* format, char** out);

CE_API void ce_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
