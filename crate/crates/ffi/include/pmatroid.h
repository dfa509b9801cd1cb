#ifndef PMATROID_H
#define PMATROID_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PmStatus {
  PM_STATUS_OK = 0,
  PM_STATUS_NULL_ARGUMENT = 1,
  PM_STATUS_INPUT = 2,
  PM_STATUS_DEGENERATE = 3,
  PM_STATUS_OUTSIDE_BOX = 4,
  PM_STATUS_RANK_DROP = 5,
  PM_STATUS_CAP_EXCEEDED = 6,
  PM_STATUS_INTERNAL = 7,
  PM_STATUS_PANIC = 8,
} PmStatus;

typedef enum PmAlgorithm {
  PM_ALGORITHM_PIVOT = 0,
  PM_ALGORITHM_PER_CELL = 1,
} PmAlgorithm;

typedef enum PmRankDrop {
  PM_RANK_DROP_PERMISSIVE = 0,
  PM_RANK_DROP_STRICT = 1,
} PmRankDrop;

/**
 * A parsed, validated instance.
 */
typedef struct PmInstance PmInstance;

typedef struct PmInterdiction PmInterdiction;

/**
 * A parametric solution together with its instance.
 */
typedef struct PmSolution PmSolution;

typedef struct PmWeightSet PmWeightSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on this thread.
 */
const char *pm_last_error(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void pm_string_free(char *s);

/**
 * Parses a JSON instance document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out_instance` must be writable.
 */
enum PmStatus pm_instance_parse(const char *json, struct PmInstance **out_instance);

/**
 * # Safety
 * `instance` must come from [`pm_instance_parse`] or be null.
 */
void pm_instance_free(struct PmInstance *instance);

/**
 * Number of ground set elements.
 *
 * # Safety
 * `instance` must be a live handle; `out_size` must be writable.
 */
enum PmStatus pm_instance_size(const struct PmInstance *instance, size_t *out_size);

/**
 * Perturbs weights and costs in place by `epsilon` (a rational string).
 *
 * # Safety
 * `instance` must be a live handle; `epsilon` a NUL-terminated string.
 */
enum PmStatus pm_instance_perturb(struct PmInstance *instance, const char *epsilon, uint64_t seed);

/**
 * Decomposes the instance's parameter box.
 *
 * # Safety
 * `instance` must be a live handle; `out_solution` must be writable.
 */
enum PmStatus pm_solve(const struct PmInstance *instance,
                       enum PmAlgorithm algorithm,
                       struct PmSolution **out_solution);

/**
 * # Safety
 * `solution` must come from [`pm_solve`] or be null.
 */
void pm_solution_free(struct PmSolution *solution);

/**
 * # Safety
 * `solution` must be a live handle; `out_count` must be writable.
 */
enum PmStatus pm_solution_region_count(const struct PmSolution *solution, size_t *out_count);

/**
 * The optimal value at a point and a minimum basis as comma-separated labels.
 *
 * # Safety
 * `coords` must point to `len` NUL-terminated strings; out-parameters must be
 * writable. Returned strings are freed with [`pm_string_free`].
 */
enum PmStatus pm_solution_evaluate(const struct PmSolution *solution,
                                   const char *const *coords,
                                   size_t len,
                                   char **out_value,
                                   char **out_basis);

/**
 * Canonical JSON of the solution.
 *
 * # Safety
 * `solution` must be a live handle; `out_json` must be writable.
 */
enum PmStatus pm_solution_to_json(const struct PmSolution *solution, char **out_json);

/**
 * Compares the solution with brute force at `samples` seeded points.
 *
 * # Safety
 * `solution` must be a live handle; `out_passed` must be writable.
 */
enum PmStatus pm_solution_audit(const struct PmSolution *solution,
                                size_t samples,
                                uint64_t seed,
                                bool *out_passed);

/**
 * Computes the most vital element over the parameter box.
 *
 * # Safety
 * `instance` must be a live handle; `out_solution` must be writable.
 */
enum PmStatus pm_interdict(const struct PmInstance *instance,
                           enum PmRankDrop rank_drop,
                           struct PmInterdiction **out_solution);

/**
 * # Safety
 * `solution` must come from [`pm_interdict`] or be null.
 */
void pm_interdiction_free(struct PmInterdiction *solution);

/**
 * The most vital element's label and the interdicted value (`"inf"` when
 * deleting it drops the rank).
 *
 * # Safety
 * As for [`pm_solution_evaluate`].
 */
enum PmStatus pm_interdiction_evaluate(const struct PmInterdiction *solution,
                                       const char *const *coords,
                                       size_t len,
                                       char **out_element,
                                       char **out_value);

/**
 * # Safety
 * `solution` must be a live handle; `out_json` must be writable.
 */
enum PmStatus pm_interdiction_to_json(const struct PmInterdiction *solution, char **out_json);

/**
 * Weight set decomposition of the instance's cost vectors.
 *
 * # Safety
 * `instance` must be a live handle; `out_decomposition` must be writable.
 */
enum PmStatus pm_weight_set(const struct PmInstance *instance,
                            struct PmWeightSet **out_decomposition);

/**
 * # Safety
 * `decomposition` must come from [`pm_weight_set`] or be null.
 */
void pm_weight_set_free(struct PmWeightSet *decomposition);

/**
 * Number of extreme supported nondominated points.
 *
 * # Safety
 * `decomposition` must be a live handle; `out_count` must be writable.
 */
enum PmStatus pm_weight_set_extreme_count(const struct PmWeightSet *decomposition,
                                          size_t *out_count);

/**
 * # Safety
 * `decomposition` must be a live handle; `out_json` must be writable.
 */
enum PmStatus pm_weight_set_to_json(const struct PmWeightSet *decomposition, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PMATROID_H */
