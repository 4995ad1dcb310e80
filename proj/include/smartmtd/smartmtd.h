/* C interface to the multi-truth discovery engine.
 *
 * All functions returning smtd_status set a thread-local message retrievable
 * via smtd_last_error() when they fail. Out-parameters are written only on
 * SMTD_OK. Handles are created by *_load / *_parse / smtd_run / smtd_synth
 * and released with the matching *_free; pointers returned by accessor
 * functions borrow from their handle and stay valid until it is freed.
 */

#ifndef SMARTMTD_H
#define SMARTMTD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(SMARTMTD_BUILD)
#define SMARTMTD_API __declspec(dllexport)
#else
#define SMARTMTD_API __declspec(dllimport)
#endif
#else
#define SMARTMTD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum smtd_status {
    SMTD_OK = 0,
    SMTD_ERR_ARG = 1,         /* invalid argument or configuration */
    SMTD_ERR_PARSE = 2,       /* malformed input file */
    SMTD_ERR_IO = 3,          /* file cannot be read or written */
    SMTD_ERR_CONVERGENCE = 4, /* a random walk failed to converge */
    SMTD_ERR_INFEASIBLE = 5,  /* synthetic spec cannot be generated */
    SMTD_ERR_INTERNAL = 6     /* broken invariant; report as a bug */
} smtd_status;

typedef struct smtd_claims smtd_claims; /* claim table + derived indexes */
typedef struct smtd_truths smtd_truths; /* per-object truth assignment */
typedef struct smtd_result smtd_result; /* full engine run state */

typedef struct smtd_config {
    double beta;   /* edge smoothing, in [0, 1) */
    double delta;  /* outer-loop convergence threshold, > 0 */
    double pp_max; /* anchors, each in (0, 1] */
    double np_max;
    double pc_max;
    double nc_max;
    int max_outer_iters;
    double walk_tol; /* random-walk L1 residual bound */
    int walk_max_iters;
    int threads;
    int use_dependence; /* 0/1: per-object copy detection */
    int use_popularity; /* 0/1: popularity weighting (0 = uniform) */
} smtd_config;

typedef struct smtd_metrics {
    double precision;
    double recall;
    double f1;
    double weighted_precision;
    double weighted_recall;
    double weighted_f1;
    double mean_execution_time; /* seconds */
    int runs;
} smtd_metrics;

typedef struct smtd_synth_spec {
    int n_objects;
    int n_sources;
    int truths_min;
    int truths_max;
    int false_pool_size;
    double honest_positive_precision;
    double honest_negative_precision;
    int n_copiers;
    double copy_fidelity;
    double coverage_skew;
    double quality_skew;
    uint64_t rng_seed;
} smtd_synth_spec;

SMARTMTD_API const char* smtd_version(void);

/* Message from the most recent failing call on this thread; empty string if
 * nothing failed yet. Valid until the next failing call on the thread. */
SMARTMTD_API const char* smtd_last_error(void);

SMARTMTD_API void smtd_config_defaults(smtd_config* out);
SMARTMTD_API void smtd_synth_spec_defaults(smtd_synth_spec* out);

/* ---- claims ---- */

SMARTMTD_API smtd_status smtd_claims_load(const char* path, smtd_claims** out);
SMARTMTD_API smtd_status smtd_claims_parse(const char* text, size_t len, smtd_claims** out);
/* tag may be NULL (no manifest reference in the comment header). */
SMARTMTD_API smtd_status smtd_claims_save(const smtd_claims* claims, const char* path,
                                          const char* tag);
SMARTMTD_API void smtd_claims_free(smtd_claims* claims);

SMARTMTD_API size_t smtd_claims_num_sources(const smtd_claims* claims);
SMARTMTD_API size_t smtd_claims_num_objects(const smtd_claims* claims);
SMARTMTD_API size_t smtd_claims_num_values(const smtd_claims* claims);
SMARTMTD_API size_t smtd_claims_num_rows(const smtd_claims* claims);
SMARTMTD_API const char* smtd_claims_source_name(const smtd_claims* claims, size_t index);
SMARTMTD_API const char* smtd_claims_object_name(const smtd_claims* claims, size_t index);

/* Normalized object popularity into out[num_objects], object-id order. */
SMARTMTD_API smtd_status smtd_claims_popularity(const smtd_claims* claims, double* out);
SMARTMTD_API smtd_status smtd_claims_save_popularity(const smtd_claims* claims, const char* path,
                                                     const char* tag);

/* ---- truth assignments ---- */

SMARTMTD_API smtd_status smtd_truths_load(const char* path, smtd_truths** out);
SMARTMTD_API smtd_status smtd_truths_save(const smtd_truths* truths, const char* path,
                                          const char* tag);
SMARTMTD_API void smtd_truths_free(smtd_truths* truths);

SMARTMTD_API size_t smtd_truths_num_objects(const smtd_truths* truths);
SMARTMTD_API const char* smtd_truths_object(const smtd_truths* truths, size_t index);
SMARTMTD_API size_t smtd_truths_num_values(const smtd_truths* truths, size_t index);
SMARTMTD_API const char* smtd_truths_value(const smtd_truths* truths, size_t object_index,
                                           size_t value_index);

/* ---- discovery methods ---- */

/* Full iterated engine. Hitting max_outer_iters is not an error: the call
 * returns SMTD_OK and smtd_result_converged reports 0. */
SMARTMTD_API smtd_status smtd_run(const smtd_claims* claims, const smtd_config* config,
                                  smtd_result** out);

SMARTMTD_API smtd_status smtd_voting(const smtd_claims* claims, smtd_truths** out);
SMARTMTD_API smtd_status smtd_sums(const smtd_claims* claims, int iters, double tol,
                                   smtd_truths** out);
SMARTMTD_API smtd_status smtd_avg_log(const smtd_claims* claims, int iters, double tol,
                                      smtd_truths** out);

/* ---- run results ---- */

SMARTMTD_API const smtd_truths* smtd_result_truths(const smtd_result* result); /* borrowed */
SMARTMTD_API int smtd_result_iterations(const smtd_result* result);
SMARTMTD_API int smtd_result_converged(const smtd_result* result);
SMARTMTD_API double smtd_result_cosine_diff(const smtd_result* result);
SMARTMTD_API double smtd_result_wall_seconds(const smtd_result* result);
SMARTMTD_API size_t smtd_result_num_sources(const smtd_result* result);
/* Positive / negative precision into tau[num_sources], tau_tilde[num_sources],
 * source-id order. Either pointer may be NULL to skip that side. */
SMARTMTD_API smtd_status smtd_result_profile(const smtd_result* result, double* tau,
                                             double* tau_tilde);
SMARTMTD_API smtd_status smtd_result_save_profile(const smtd_result* result, const char* path,
                                                  const char* tag);
SMARTMTD_API smtd_status smtd_result_save_dependence(const smtd_result* result, const char* path,
                                                     const char* tag);
/* Debug dump of the final supportive endorsement graphs as TSV edge lists
 * (from, to, weight). Either path may be NULL to skip that side. */
SMARTMTD_API smtd_status smtd_result_save_graphs(const smtd_result* result,
                                                 const char* positive_path,
                                                 const char* negative_path, const char* tag);
/* Objects whose extracted truth set came out empty (every value tied or
 * losing); candidates for a warning. */
SMARTMTD_API size_t smtd_result_num_empty_objects(const smtd_result* result);
SMARTMTD_API const char* smtd_result_empty_object(const smtd_result* result, size_t index);
SMARTMTD_API void smtd_result_free(smtd_result* result);

/* ---- evaluation ---- */

/* Eq.-literal accuracy metrics of n_runs predictions against gold, plus mean
 * execution time over durations[n_durations] (pass 0 durations to skip
 * timing). claims may be NULL: weighting then uses uniform popularity over
 * the gold's objects, making the weighted metrics equal the unweighted. */
SMARTMTD_API smtd_status smtd_evaluate(const smtd_truths* const* preds, size_t n_runs,
                                       const smtd_truths* gold, const smtd_claims* claims,
                                       const double* durations, size_t n_durations,
                                       smtd_metrics* out);

/* ---- synthetic data ---- */

SMARTMTD_API smtd_status smtd_synth(const smtd_synth_spec* spec, smtd_claims** claims_out,
                                    smtd_truths** gold_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SMARTMTD_H */
