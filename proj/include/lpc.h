/* C API for the LPC library: minimax 0-1-loss classifiers learned by linear
 * programming, with computable risk bounds.
 *
 * All functions return LPC_OK or an error code; lpc_last_error() holds the
 * message for the most recent failure on the calling thread. Objects are
 * opaque handles released with the matching *_free call. Strings returned
 * through char** are owned by the caller and released with lpc_string_free.
 */
#ifndef LPC_H
#define LPC_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef LPC_API
#define LPC_API __attribute__((visibility("default")))
#endif

/* Error codes; the CLI reuses them as exit codes. */
#define LPC_OK 0
#define LPC_ERROR_USAGE 1   /* invalid arguments or configuration */
#define LPC_ERROR_DATA 2    /* unreadable or malformed data */
#define LPC_ERROR_NUMERIC 3 /* LP failures, empty uncertainty sets */

typedef struct lpc_dataset lpc_dataset;
typedef struct lpc_model lpc_model;

LPC_API const char* lpc_version(void);
LPC_API const char* lpc_last_error(void);
LPC_API void lpc_string_free(char* s);

/* label_column: header name, 0-based index as digits, or NULL for unlabeled
 * feature rows. */
LPC_API int lpc_dataset_from_csv(const char* path, const char* label_column, int has_header,
                                 lpc_dataset** out);
/* Three-class 4-dimensional Gaussian-mixture benchmark sampler. */
LPC_API int lpc_dataset_synthetic(int64_t n, uint64_t seed, lpc_dataset** out);
LPC_API void lpc_dataset_free(lpc_dataset* dataset);
LPC_API int lpc_dataset_num_rows(const lpc_dataset* dataset, int64_t* out);
LPC_API int lpc_dataset_num_features(const lpc_dataset* dataset, int* out);
LPC_API int lpc_dataset_num_labels(const lpc_dataset* dataset, int* out);
/* out must hold num_rows * num_features doubles, row-major. */
LPC_API int lpc_dataset_copy_features(const lpc_dataset* dataset, double* out);

/* config_json keys (all optional): classifiers (array of "knn<k>" | "qda" |
 * "tree[<depth>]"), interval ("hoeffding" | "point" | "manual"), s, delta,
 * folds, seed, pattern_mode ("exact" | "approx"). out_report_json (nullable)
 * receives the training report. */
LPC_API int lpc_train(const lpc_dataset* dataset, const char* config_json, lpc_model** out_model,
                      char** out_report_json);
LPC_API int lpc_model_save(const lpc_model* model, const char* path);
LPC_API int lpc_model_load(const char* path, lpc_model** out);
LPC_API void lpc_model_free(lpc_model* model);

LPC_API int lpc_model_num_labels(const lpc_model* model, int* out);
LPC_API int lpc_model_num_features(const lpc_model* model, int* out);
LPC_API int lpc_model_minimax_risk(const lpc_model* model, double* out);
/* Solves the lower-bound LP for the model's own rule. */
LPC_API int lpc_model_lower_bound(const lpc_model* model, double* out);

/* out_probs must hold n * num_labels doubles, row-major. */
LPC_API int lpc_model_predict_proba(const lpc_model* model, const double* features, int64_t n,
                                    int num_features, double* out_probs);
/* Labels sampled from the rule's distributions (seeded, reproducible). */
LPC_API int lpc_model_predict(const lpc_model* model, const double* features, int64_t n,
                              int num_features, uint64_t seed, int* out_labels);
LPC_API int lpc_model_predict_argmax(const lpc_model* model, const double* features, int64_t n,
                                     int num_features, int* out_labels);

/* {R, L, kappa_h, kappa_neg_h, deviation_term?, ...}; the deviation term uses
 * a sampled lower estimate of the dual-coefficient norm. */
LPC_API int lpc_model_bounds_json(const lpc_model* model, int with_deviation, int m_samples,
                                  uint64_t seed, char** out_json);
/* Randomized, argmax, and exact expected errors plus the [L, R] sandwich. */
LPC_API int lpc_evaluate_json(const lpc_model* model, const lpc_dataset* dataset, uint64_t seed,
                              int draws, char** out_json);
LPC_API int lpc_evaluate_exact_error(const lpc_model* model, const lpc_dataset* dataset,
                                     double* out);
/* Stratified k-fold evaluation of the full pipeline on one dataset. */
LPC_API int lpc_evaluate_cv_json(const lpc_dataset* dataset, const char* config_json,
                                 int eval_folds, char** out_json);

/* Monte-Carlo risk of the exact posterior rule on the synthetic benchmark. */
LPC_API int lpc_synth_bayes_risk(int64_t num_samples, uint64_t seed, double* out_risk,
                                 double* out_se);
/* config_json keys (optional): seed, fast, perturb. Runs the duality,
 * sandwich, and coverage suites; "ok" in the result tells whether all
 * passed. */
LPC_API int lpc_selfcheck_json(const char* config_json, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* LPC_H */
