/* C interface of the ncmatch library. All strings are UTF-8. Strings
 * returned through `char**` are owned by the caller and released with
 * ncm_string_free. Functions report failures through ncm_status; the message
 * of the most recent failure on the calling thread is ncm_last_error(). */
#ifndef NCMATCH_H
#define NCMATCH_H

#include <stddef.h>
#include <stdint.h>

#if defined(NCM_BUILDING_LIBRARY)
#define NCM_API __attribute__((visibility("default")))
#else
#define NCM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ncm_status {
  NCM_OK = 0,
  NCM_E_BAD_INPUT,
  NCM_E_INVALID_INSTANCE,
  NCM_E_PRECONDITION,
  NCM_E_SHARED_ENDPOINT,
  NCM_E_NOT_CONVEX,
  NCM_E_DEGENERATE,
  NCM_E_RANK_OUT_OF_RANGE,
  NCM_E_INVALID_DYCK,
  NCM_E_CAP_EXCEEDED,
  NCM_E_NOT_231_AVOIDING,
  NCM_E_TRUNCATED_CODE,
  NCM_E_TAPE_EXHAUSTED,
  NCM_E_NOT_PERFECT,
  NCM_E_CROSSING_DETECTED,
  NCM_E_ILLEGAL_MATCH,
  NCM_E_DUPLICATE_X,
  NCM_E_BAD_SUBSET,
  NCM_E_DOMAIN_ERROR,
  NCM_E_INTERNAL
} ncm_status;

typedef struct ncm_instance ncm_instance;
typedef struct ncm_result ncm_result;

NCM_API const char* ncm_version(void);
NCM_API const char* ncm_status_name(ncm_status status);
NCM_API const char* ncm_last_error(void);
NCM_API void ncm_string_free(char* s);

/* Instances. `params_json` is a JSON object; see the README for the
 * parameters of each family. */
NCM_API ncm_status ncm_instance_generate(const char* family, const char* params_json, uint64_t seed,
                                         ncm_instance** out);
NCM_API ncm_status ncm_instance_from_json(const char* json_text, ncm_instance** out);
NCM_API ncm_status ncm_instance_load(const char* path, ncm_instance** out);
NCM_API ncm_status ncm_instance_save(const ncm_instance* inst, const char* path);
NCM_API ncm_status ncm_instance_to_json(const ncm_instance* inst, char** out_json);
NCM_API size_t ncm_instance_point_count(const ncm_instance* inst);
NCM_API void ncm_instance_free(ncm_instance* inst);

/* Online simulation: algorithm is one of bt, asap, asap-unknown-n,
 * asap-largest, sorted, greedy. */
NCM_API ncm_status ncm_run(const ncm_instance* inst, const char* algorithm, ncm_result** out);
NCM_API ncm_status ncm_result_report(const ncm_result* res, char** out_json);
NCM_API ncm_status ncm_result_svg(const ncm_result* res, char** out_svg);
NCM_API size_t ncm_result_matched_points(const ncm_result* res);
NCM_API size_t ncm_result_bits_read(const ncm_result* res);
NCM_API size_t ncm_result_bits_written(const ncm_result* res);
NCM_API int ncm_result_is_perfect(const ncm_result* res);
NCM_API void ncm_result_free(ncm_result* res);

/* Verification campaigns (bnm-lb, mnm-lb, catalan-bijections, coupling,
 * rate-table). `*passed` is set to 1 or 0. */
NCM_API ncm_status ncm_verify(const char* check, const char* params_json, char** out_json, int* passed);

/* Codec utilities (catalan, elias-encode, elias-decode, tree-rank,
 * tree-unrank, dyck-rank, dyck-unrank, perm-check, perm-to-tree). */
NCM_API ncm_status ncm_codec(const char* op, const char* args_json, char** out_json);

/* Relative entropy D(a || p) in bits and the approximation rate with
 * constant c in {2, 4}. */
NCM_API ncm_status ncm_kl_divergence(double a, double p, double* out);
NCM_API ncm_status ncm_approx_lb_rate(double alpha, int c, double* out);

#ifdef __cplusplus
}
#endif

#endif /* NCMATCH_H */
