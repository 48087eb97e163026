#ifndef DIRAC_BARRIER_H
#define DIRAC_BARRIER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Mask selecting every zone in [`db_find_resonances`].
 */
#define DB_ZONE_MASK_ALL 31

typedef enum DbStatus {
  DB_STATUS_OK = 0,
  DB_STATUS_NULL_POINTER = 1,
  DB_STATUS_INVALID_CONFIG = 2,
  DB_STATUS_SINGULAR_ENERGY = 3,
  DB_STATUS_BOUNDARY_ENERGY = 4,
  DB_STATUS_BELOW_THRESHOLD = 5,
  DB_STATUS_NUMERICAL = 6,
  DB_STATUS_INVALID_ARGUMENT = 7,
  DB_STATUS_INDEX_OUT_OF_RANGE = 8,
  DB_STATUS_BUFFER_TOO_SMALL = 9,
  DB_STATUS_PANIC = 10,
} DbStatus;

typedef enum DbMatrixRange {
  DB_MATRIX_RANGE_RANGE_I = 0,
  DB_MATRIX_RANGE_RANGE_II = 1,
  DB_MATRIX_RANGE_RANGE_III = 2,
} DbMatrixRange;

typedef enum DbZone {
  DB_ZONE_LOWER_KLEIN = 0,
  DB_ZONE_GAP_LOWER = 1,
  DB_ZONE_HIGHER_KLEIN = 2,
  DB_ZONE_CONVENTIONAL = 3,
  DB_ZONE_ABOVE_BARRIER = 4,
} DbZone;

/**
 * Opaque potential configuration.
 */
typedef struct DbConfig DbConfig;

/**
 * Opaque list of resonances sorted by energy.
 */
typedef struct DbResonanceList DbResonanceList;

typedef struct DbComplex {
  double re;
  double im;
} DbComplex;

typedef struct DbMatrix2x2 {
  struct DbComplex m11;
  struct DbComplex m12;
  struct DbComplex m21;
  struct DbComplex m22;
} DbMatrix2x2;

typedef struct DbScatteringResult {
  double energy;
  struct DbComplex t;
  struct DbComplex r;
  double t2;
  double r2;
  enum DbMatrixRange range;
  enum DbZone zone;
} DbScatteringResult;

typedef struct DbResonance {
  double energy;
  enum DbZone zone;
  double residual;
  /**
   * NaN when `has_fwhm` is false.
   */
  double fwhm;
  bool has_fwhm;
  uint32_t level;
} DbResonance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static, NUL-terminated version string.
 */
const char *db_version(void);

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *db_last_error_message(void);

/**
 * Validates and allocates a configuration. Lengths in natural units.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum DbStatus db_config_new(double mass,
                            double v_plus,
                            double v_minus,
                            double a_plus,
                            double a_minus,
                            struct DbConfig **out);

/**
 * The reference configuration `m=1, V+=8, V-=4, a+=3, a-=2.5`.
 */
struct DbConfig *db_config_reference(void);

/**
 * # Safety
 * `cfg` must be NULL or a handle from this library that is not used again.
 */
void db_config_free(struct DbConfig *cfg);

/**
 * # Safety
 * `cfg` must be a live handle; `range` and `zone` writable pointers.
 */
enum DbStatus db_classify(const struct DbConfig *cfg,
                          double energy,
                          enum DbMatrixRange *range,
                          enum DbZone *zone);

/**
 * Writes the ascending singular energies into `out` (capacity `len`) and
 * the count into `written`. Fails with `BufferTooSmall` if `len` is short;
 * `written` still receives the required count.
 *
 * # Safety
 * `out` must point to `len` writable doubles; `written` must be writable.
 */
enum DbStatus db_singular_energies(const struct DbConfig *cfg,
                                   double *out,
                                   size_t len,
                                   size_t *written);

/**
 * Full transfer matrix `M(E)`.
 *
 * # Safety
 * `cfg` must be a live handle and `out` writable.
 */
enum DbStatus db_full_matrix(const struct DbConfig *cfg, double energy, struct DbMatrix2x2 *out);

/**
 * Transmission and reflection at one energy.
 *
 * # Safety
 * `cfg` must be a live handle and `out` writable.
 */
enum DbStatus db_scatter(const struct DbConfig *cfg, double energy, struct DbScatteringResult *out);

/**
 * Transmission amplitude from the boundary-matching solver.
 *
 * # Safety
 * `cfg` must be a live handle and `out` writable.
 */
enum DbStatus db_oracle_transmission(const struct DbConfig *cfg,
                                     double energy,
                                     struct DbComplex *out);

/**
 * Scans the zones selected by `zone_mask` (bit `1 << DbZone`) and returns
 * the resonances sorted by energy. `e_max` bounds the above-barrier zone
 * and is ignored otherwise; `grid_points` of 0 selects the default.
 *
 * # Safety
 * `cfg` must be a live handle; `out` must be writable.
 */
enum DbStatus db_find_resonances(const struct DbConfig *cfg,
                                 uint32_t zone_mask,
                                 double e_max,
                                 uint32_t grid_points,
                                 struct DbResonanceList **out);

/**
 * # Safety
 * `list` must be NULL or a live list handle.
 */
size_t db_resonance_list_len(const struct DbResonanceList *list);

/**
 * # Safety
 * `list` must be a live list handle and `out` writable.
 */
enum DbStatus db_resonance_list_get(const struct DbResonanceList *list,
                                    size_t index,
                                    struct DbResonance *out);

/**
 * # Safety
 * `list` must be NULL or a list handle that is not used again.
 */
void db_resonance_list_free(struct DbResonanceList *list);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIRAC_BARRIER_H */
