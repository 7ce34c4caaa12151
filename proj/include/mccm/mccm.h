/* SPDX-License-Identifier: Apache-2.0 */

/*
 * mccm - classification toolkit for symmetric positive definite matrices.
 *
 * C interface of the shared library.  All functions return a status code;
 * results come back through out-parameters.  Objects are opaque handles
 * owned by the library and released with the matching *_free call.
 * mccm_last_error() returns a thread-local message for the most recent
 * failing call on the calling thread.
 *
 * Matrices cross this boundary as row-major double arrays of length
 * dim * dim.  Configuration crosses as JSON text; every key is optional.
 * See the project README for the configuration and report schemas.
 */

#ifndef MCCM_MCCM_H
#define MCCM_MCCM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MCCM_API __declspec(dllexport)
#else
#define MCCM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mccm_status {
  MCCM_OK = 0,
  MCCM_ERR_INVALID_ARGUMENT = 1,
  MCCM_ERR_DIMENSION_MISMATCH = 2,
  MCCM_ERR_NOT_SYMMETRIC = 3,
  MCCM_ERR_DEGENERATE_MATRIX = 4,
  MCCM_ERR_EIG_FAILED = 5,
  MCCM_ERR_MAX_ITER = 6,
  MCCM_ERR_NON_FINITE = 7,
  MCCM_ERR_INVALID_GRAM = 8,
  MCCM_ERR_SOLVER_FAILED = 9,
  MCCM_ERR_RANK_DEFICIENT = 10,
  MCCM_ERR_CONSTRUCTION_FAILED = 11,
  MCCM_ERR_PARSE = 12,
  MCCM_ERR_INVALID_RECORD = 13,
  MCCM_ERR_IO = 14,
  MCCM_ERR_UNKNOWN = 15
} mccm_status;

MCCM_API const char* mccm_version(void);
MCCM_API const char* mccm_status_name(mccm_status status);

/* Message for the most recent failure on this thread; never NULL. */
MCCM_API const char* mccm_last_error(void);

/* ---- datasets -------------------------------------------------------- */

typedef struct mccm_dataset mccm_dataset;

MCCM_API mccm_status mccm_dataset_create(mccm_dataset** out);
MCCM_API mccm_status mccm_dataset_load(const char* path, mccm_dataset** out);
MCCM_API mccm_status mccm_dataset_save(const mccm_dataset* dataset,
                                       const char* path);
MCCM_API mccm_status mccm_dataset_add(mccm_dataset* dataset, const char* label,
                                      int dim, const double* matrix);
MCCM_API size_t mccm_dataset_size(const mccm_dataset* dataset);
MCCM_API int mccm_dataset_dim(const mccm_dataset* dataset);
MCCM_API const char* mccm_dataset_label(const mccm_dataset* dataset,
                                        size_t index);
MCCM_API mccm_status mccm_dataset_matrix(const mccm_dataset* dataset,
                                         size_t index, double* out);
MCCM_API void mccm_dataset_free(mccm_dataset* dataset);

/* ---- manifold operations --------------------------------------------- */

MCCM_API mccm_status mccm_geodesic_distance(int dim, const double* x,
                                            const double* y, double* out);
MCCM_API mccm_status mccm_log_euclidean_distance(int dim, const double* x,
                                                 const double* y, double* out);
MCCM_API mccm_status mccm_matrix_log(int dim, const double* x, double* out);
MCCM_API mccm_status mccm_matrix_exp(int dim, const double* x, double* out);

/*
 * Weighted Fréchet mean under the affine-invariant metric.  points holds
 * n row-major matrices back to back; weights may be NULL for uniform.
 * config_json may carry a "mean" object (tol, max_iter, step).
 */
MCCM_API mccm_status mccm_frechet_mean(int dim, int n, const double* points,
                                       const double* weights,
                                       const char* config_json, double* out);

/* Log-Euclidean weighted mean, same conventions. */
MCCM_API mccm_status mccm_log_euclidean_mean(int dim, int n,
                                             const double* points,
                                             const double* weights,
                                             double* out);

/*
 * Distance from a query to the convex model of a point set.
 * variant: "fm", "cs" or "le".  weights_out may be NULL; otherwise it
 * receives the n optimal weights.
 */
MCCM_API mccm_status mccm_model_distance(const char* variant, int dim, int n,
                                         const double* points,
                                         const double* query,
                                         const char* config_json,
                                         double* distance_out,
                                         double* weights_out);

/* Seeded random SPD matrix with bounded eigenvalue ratio. */
MCCM_API mccm_status mccm_random_spd(int dim, uint64_t seed,
                                     double condition_cap, double* out);

/* ---- classification --------------------------------------------------- */

typedef struct mccm_classifier mccm_classifier;

/*
 * Builds a classifier from a training dataset.
 * variant: "fm", "cs", "le", "geo-nn" or "euclid-hull".
 */
MCCM_API mccm_status mccm_classifier_create(const mccm_dataset* train,
                                            const char* variant,
                                            const char* config_json,
                                            mccm_classifier** out);
MCCM_API size_t mccm_classifier_classes(const mccm_classifier* classifier);
MCCM_API const char* mccm_classifier_class_label(
    const mccm_classifier* classifier, size_t index);

/*
 * Classifies one query.  label_buf receives the winning label (truncated to
 * buf_len - 1 characters); distances_out, when non-NULL, receives one
 * distance per class in class_label order.
 */
MCCM_API mccm_status mccm_classifier_classify(const mccm_classifier* classifier,
                                              int dim, const double* query,
                                              char* label_buf, size_t buf_len,
                                              double* distances_out);
MCCM_API void mccm_classifier_free(mccm_classifier* classifier);

/* ---- command pipelines ------------------------------------------------ */

typedef struct mccm_report mccm_report;

/* JSON text of a report; owned by the report handle. */
MCCM_API const char* mccm_report_json(const mccm_report* report);
MCCM_API void mccm_report_free(mccm_report* report);

MCCM_API mccm_status mccm_run_classify(const char* train_path,
                                       const char* test_path,
                                       const char* options_json,
                                       mccm_report** out);
MCCM_API mccm_status mccm_run_benchmark(const char* train_path,
                                        const char* test_path,
                                        const char* options_json,
                                        mccm_report** out);
MCCM_API mccm_status mccm_run_synthetic(const char* options_json,
                                        mccm_report** out);
MCCM_API mccm_status mccm_run_descriptor(const char* options_json,
                                         mccm_report** out);
MCCM_API mccm_status mccm_run_generate(const char* options_json,
                                       mccm_report** out);

#ifdef __cplusplus
}
#endif

#endif /* MCCM_MCCM_H */
