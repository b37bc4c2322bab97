#ifndef GAW_H
#define GAW_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdint.h>
#include <stddef.h>

/*
 Result of every fallible call.
 */
typedef enum GawStatus {
  GAW_STATUS_OK = 0,
  GAW_STATUS_NULL_POINTER = 1,
  GAW_STATUS_INVALID_ARGUMENT = 2,
  GAW_STATUS_PARSE = 3,
  GAW_STATUS_IO = 4,
  GAW_STATUS_INVALID_UTF8 = 5,
  GAW_STATUS_INTERNAL = 6,
} GawStatus;

typedef struct GawField GawField;

typedef struct GawRng GawRng;

typedef struct GawScene GawScene;

typedef struct GawSpectrum GawSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failure on this thread, or NULL. The pointer stays
 valid until the next failing call on the same thread.
 */
const char *gaw_last_error_message(void);

/*
 Engine version string recorded in manifests. Static; do not free.
 */
const char *gaw_version(void);

/*
 # Safety
 `s` must come from this library and not have been freed.
 */
void gaw_string_free(char *s);

/*
 # Safety
 `data`/`len` must be a buffer returned by this library, not yet freed.
 */
void gaw_bytes_free(uint8_t *data, size_t len);

struct GawRng *gaw_rng_new(uint64_t seed);

/*
 # Safety
 `rng` must come from [`gaw_rng_new`] and not have been freed.
 */
void gaw_rng_free(struct GawRng *rng);

/*
 # Safety
 `rng` must be a live handle and `out` writable.
 */
enum GawStatus gaw_rng_next_unit(struct GawRng *rng, double *out);

/*
 Uniform integer in `[lo, hi]`.

 # Safety
 `rng` must be a live handle and `out` writable.
 */
enum GawStatus gaw_rng_next_int(struct GawRng *rng, int64_t lo, int64_t hi, int64_t *out);

/*
 Entropy in bits of `len` probabilities summing to 1.

 # Safety
 `probs` must point to `len` readable doubles; `out` writable.
 */
enum GawStatus gaw_entropy(const double *probs, size_t len, double *out);

/*
 # Safety
 `probs` must point to `len` readable doubles; `out` writable.
 */
enum GawStatus gaw_redundancy(const double *probs, size_t len, double *out);

/*
 Block entropy of a row-major `width × height` grid of symbols in
 `[0, alphabet)`.

 # Safety
 `cells` must point to `width * height` readable values; `out` writable.
 */
enum GawStatus gaw_block_entropy(const uint32_t *cells,
                                 size_t width,
                                 size_t height,
                                 size_t alphabet,
                                 size_t block_w,
                                 size_t block_h,
                                 double *out);

/*
 Number of state descriptions for `n` binary properties (`2^n`).

 # Safety
 `out` must be writable.
 */
enum GawStatus gaw_semantic_space_size(size_t n, uint64_t *out);

/*
 Single closed `n`-corner in the page inset by `margin`.

 # Safety
 `out` must be writable; on success it receives a handle to free with
 [`gaw_scene_free`].
 */
enum GawStatus gaw_scene_ncorner(size_t n,
                                 double page_w,
                                 double page_h,
                                 double margin,
                                 uint64_t seed,
                                 struct GawScene **out);

/*
 Two-level hatched mesh. `cell_states` holds the probabilities of
 h-hatch, v-hatch, empty and diagonal, in that order.

 # Safety
 `cell_states` must point to 4 readable doubles; `out` writable.
 */
enum GawStatus gaw_scene_hommage(size_t rows,
                                 size_t cols,
                                 double jitter,
                                 const double *cell_states,
                                 size_t hatch_min,
                                 size_t hatch_max,
                                 double page_w,
                                 double page_h,
                                 double margin,
                                 uint64_t seed,
                                 struct GawScene **out);

/*
 # Safety
 `scene` must be a live handle.
 */
size_t gaw_scene_stroke_count(const struct GawScene *scene);

/*
 SVG document for the scene; free with [`gaw_string_free`].

 # Safety
 `scene` must be a live handle and `out` writable.
 */
enum GawStatus gaw_scene_to_svg(const struct GawScene *scene, char **out);

/*
 # Safety
 `scene` must come from this library and not have been freed.
 */
void gaw_scene_free(struct GawScene *scene);

/*
 Parses a spectrum from CSV text.

 # Safety
 `csv` must be a NUL-terminated string and `out` writable.
 */
enum GawStatus gaw_spectrum_from_csv(const char *csv, struct GawSpectrum **out);

/*
 # Safety
 `spectrum` must be a live handle and `out` writable.
 */
enum GawStatus gaw_spectrum_m0(const struct GawSpectrum *spectrum, double *out);

/*
 Significant wave height `4·√m0` in metres.

 # Safety
 `spectrum` must be a live handle and `out` writable.
 */
enum GawStatus gaw_spectrum_hs(const struct GawSpectrum *spectrum, double *out);

/*
 # Safety
 `spectrum` must come from this library and not have been freed.
 */
void gaw_spectrum_free(struct GawSpectrum *spectrum);

/*
 Random-phase field on an `nx × ny` grid with origin at (0, 0).

 # Safety
 `spectrum` must be a live handle and `out` writable.
 */
enum GawStatus gaw_wave_synthesize(const struct GawSpectrum *spectrum,
                                   uint64_t seed,
                                   double gravity,
                                   size_t nx,
                                   size_t ny,
                                   double dx,
                                   double dy,
                                   double t,
                                   struct GawField **out);

/*
 Borrowed view of the heights, row-major by `y` (`nx * ny` values). Valid
 until the field is freed.

 # Safety
 `field` must be a live handle; `data` and `len` writable.
 */
enum GawStatus gaw_field_heights(const struct GawField *field, const double **data, size_t *len);

/*
 # Safety
 `field` must be a live handle and `out` writable.
 */
enum GawStatus gaw_field_component_count(const struct GawField *field, size_t *out);

/*
 Population variance of the heights.

 # Safety
 `field` must be a live handle and `out` writable.
 */
enum GawStatus gaw_field_variance(const struct GawField *field, double *out);

/*
 # Safety
 `field` must come from this library and not have been freed.
 */
void gaw_field_free(struct GawField *field);

/*
 Renders one artifact of a job described exactly as in a run manifest:
 `rule_id` (e.g. `gen.hommage`), the `params` object as JSON, and the
 seed. `role` selects the artifact (`svg`, `text`, `report`, `csv`,
 `pgm`). The bytes are identical to what the CLI writes; free them with
 [`gaw_bytes_free`].

 # Safety
 String arguments must be NUL-terminated; `out_data` and `out_len`
 writable.
 */
enum GawStatus gaw_render_job(const char *rule_id,
                              const char *params_json,
                              uint64_t seed,
                              const char *role,
                              uint8_t **out_data,
                              size_t *out_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GAW_H */
