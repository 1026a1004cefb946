#ifndef GRD_H
#define GRD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GrdStatus {
  GRD_STATUS_OK = 0,
  GRD_STATUS_NULL_ARGUMENT = 1,
  GRD_STATUS_INVALID_ARGUMENT = 2,
  GRD_STATUS_PRECONDITION = 3,
  GRD_STATUS_INCONSISTENT = 4,
  GRD_STATUS_MISMATCH = 5,
  GRD_STATUS_PANIC = 6,
} GrdStatus;

// Values accepted by the `label` parameters.
typedef enum GrdClassLabel {
  GRD_CLASS_LABEL_ALPHA = 0,
  GRD_CLASS_LABEL_BETA = 1,
  GRD_CLASS_LABEL_GAMMA = 2,
} GrdClassLabel;

// Values accepted by the `method` parameter of [`grd_eta_push`].
typedef enum GrdMethod {
  GRD_METHOD_CLOSED = 0,
  GRD_METHOD_ASSEMBLED = 1,
} GrdMethod;

// A divisor class.
typedef struct GrdClass GrdClass;

// Slope data for the quadric divisor of one triple.
typedef struct GrdSlopeReport GrdSlopeReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or an empty string.
// The pointer stays valid until the next call on this thread.
const char *grd_last_error(void);

// # Safety
// `s` must be null or a string returned by this library.
void grd_string_free(char *s);

// Castelnuovo number `N(g, r, d)` as a decimal string; requires ρ = 0.
//
// # Safety
// `out` must be a valid pointer.
enum GrdStatus grd_castelnuovo_number(uint32_t g, uint32_t r, uint32_t d, char **out);

// `ξ(g, r, d)` as `"p"` or `"p/q"`.
//
// # Safety
// `out` must be a valid pointer.
enum GrdStatus grd_xi(uint32_t g, uint32_t r, uint32_t d, char **out);

// `∫ ζ^k σ_b` on `G(r, P^d)`; `b` holds `r + 1` weakly increasing parts.
//
// # Safety
// `b` must point to `b_len` readable values; `out` must be valid.
enum GrdStatus grd_schubert_integral(uint32_t r,
                                     uint32_t d,
                                     uint32_t k,
                                     const uint32_t *b,
                                     uintptr_t b_len,
                                     char **out);

// `η_*` of the class `label` (a `GrdClassLabel` value) on `M̃_{g,1}`, by the
// closed form or by solving the family system (`method`, a `GrdMethod`).
//
// # Safety
// `out` must be a valid pointer; the handle is freed with [`grd_class_free`].
enum GrdStatus grd_eta_push(uint32_t g,
                            uint32_t r,
                            uint32_t d,
                            uint32_t label,
                            uint32_t method,
                            struct GrdClass **out);

// Coefficient of `symbol` (e.g. `"lambda"`, `"delta_0"`, `"psi"`).
//
// # Safety
// `class` must be a live handle, `symbol` a NUL-terminated string and `out`
// a valid pointer.
enum GrdStatus grd_class_coefficient(const struct GrdClass *class_, const char *symbol, char **out);

// All coefficients as a JSON object with sorted keys and string values.
//
// # Safety
// `class` must be a live handle and `out` a valid pointer.
enum GrdStatus grd_class_to_json(const struct GrdClass *class_, char **out);

// # Safety
// `class` must be null or a handle from this library, not yet freed.
void grd_class_free(struct GrdClass *class_);

// # Safety
// `out` must be a valid pointer; the handle is freed with [`grd_slope_free`].
enum GrdStatus grd_slope_report(uint32_t g, uint32_t r, uint32_t d, struct GrdSlopeReport **out);

// Report for `(m(2m+1), 2m, 2m(m+1))`.
//
// # Safety
// `out` must be a valid pointer; the handle is freed with [`grd_slope_free`].
enum GrdStatus grd_slope_m_family(uint32_t m, struct GrdSlopeReport **out);

// # Safety
// `report` must be a live handle; `g`, `r`, `d` valid pointers.
enum GrdStatus grd_slope_triple(const struct GrdSlopeReport *report,
                                uint32_t *g,
                                uint32_t *r,
                                uint32_t *d);

// λ coefficient of `[E]/N`.
//
// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum GrdStatus grd_slope_lambda(const struct GrdSlopeReport *report, char **out);

// δ_0 coefficient of `[E]/N`.
//
// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum GrdStatus grd_slope_delta0(const struct GrdSlopeReport *report, char **out);

// `λ / (−δ_0)`.
//
// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum GrdStatus grd_slope_ratio(const struct GrdSlopeReport *report, char **out);

// `6 + 12/(g+1)`.
//
// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum GrdStatus grd_slope_bound(const struct GrdSlopeReport *report, char **out);

// `bound − ratio`.
//
// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum GrdStatus grd_slope_gap(const struct GrdSlopeReport *report, char **out);

// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum GrdStatus grd_slope_violates(const struct GrdSlopeReport *report, bool *out);

// # Safety
// `report` must be null or a handle from this library, not yet freed.
void grd_slope_free(struct GrdSlopeReport *report);

// Runs every cross-check for `g ≤ g_max`, `m ≤ m_max`. Returns
// `GRD_STATUS_OK` when all pass, otherwise the status of the first failure.
enum GrdStatus grd_verify(uint32_t g_max, uint32_t m_max);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRD_H */
