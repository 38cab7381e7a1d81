#ifndef FANO_WPS_H
#define FANO_WPS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FwStatus {
  FW_STATUS_OK = 0,
  FW_STATUS_INVALID_INPUT = 1,
  FW_STATUS_PRECONDITION = 2,
  FW_STATUS_COST_CAP_EXCEEDED = 3,
  FW_STATUS_UNDECIDED = 4,
  FW_STATUS_CERTIFICATE_REJECTED = 5,
  FW_STATUS_NULL_POINTER = 6,
  FW_STATUS_PANIC = 7,
} FwStatus;

typedef enum FwClass {
  FW_CLASS_NON_CANONICAL = 0,
  FW_CLASS_CANONICAL_NOT_TERMINAL = 1,
  FW_CLASS_TERMINAL = 2,
  FW_CLASS_SMOOTH = 3,
} FwClass;

/*
 Opaque analysis report.
 */
typedef struct FwReport FwReport;

/*
 Opaque tuple of weights.
 */
typedef struct FwWeights FwWeights;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or NULL. The pointer is
 valid until the next `fw_*` call on the same thread.
 */
const char *fw_last_error_message(void);

/*
 Parses a comma-separated weight list such as "33,22,6,5".

 # Safety
 `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FwStatus fw_weights_parse(const char *text, struct FwWeights **out);

/*
 Builds weights from an array of `len` integers.

 # Safety
 `weights` must point to `len` readable values and `out` must be valid.
 */
enum FwStatus fw_weights_new(const uint64_t *weights, size_t len, struct FwWeights **out);

/*
 # Safety
 `w` must come from `fw_weights_parse`/`fw_weights_new` or be NULL.
 */
void fw_weights_free(struct FwWeights *w);

/*
 # Safety
 `w` must be a live handle and `out` valid.
 */
enum FwStatus fw_weights_is_well_formed(const struct FwWeights *w, bool *out);

/*
 Analyzes a well-formed space, brute-forcing points up to `cost_cap`.

 # Safety
 `w` must be a live handle and `out` valid.
 */
enum FwStatus fw_analyze(const struct FwWeights *w, uint64_t cost_cap, struct FwReport **out);

/*
 # Safety
 `r` must come from `fw_analyze` or be NULL.
 */
void fw_report_free(struct FwReport *r);

/*
 # Safety
 `r` must be a live handle and `out` valid.
 */
enum FwStatus fw_report_class(const struct FwReport *r, enum FwClass *out);

/*
 # Safety
 `r` must be a live handle and `out` valid.
 */
enum FwStatus fw_report_gorenstein(const struct FwReport *r, bool *out);

/*
 Fano index as a decimal string.

 # Safety
 `r` must be a live handle and `out` valid.
 */
enum FwStatus fw_report_fano_index(const struct FwReport *r, char **out);

/*
 Anticanonical volume as "a" or "a/b".

 # Safety
 `r` must be a live handle and `out` valid.
 */
enum FwStatus fw_report_volume(const struct FwReport *r, char **out);

/*
 # Safety
 `r` must be a live handle and `out` valid.
 */
enum FwStatus fw_report_json(const struct FwReport *r, char **out);

/*
 # Safety
 `s` must come from this library or be NULL.
 */
void fw_string_free(char *s);

/*
 The k-th Sylvester number as a decimal string.

 # Safety
 `out` must be valid.
 */
enum FwStatus fw_sylvester(uint32_t k, char **out);

/*
 JSON description of a family member or sporadic example.

 # Safety
 `name` must be a NUL-terminated string and `out` valid.
 */
enum FwStatus fw_family_json(const char *name, size_t dim, char **out);

/*
 Reid-Tai class of 1/r(b_1,...,b_len) by brute force.

 # Safety
 `residues` must point to `len` readable values and `out` must be valid.
 */
enum FwStatus fw_classify_singularity(uint64_t r,
                                      const uint64_t *residues,
                                      size_t len,
                                      uint64_t cost_cap,
                                      enum FwClass *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FANO_WPS_H */
