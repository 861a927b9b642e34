#ifndef ALERTSIM_H
#define ALERTSIM_H

/*
 * C API for the alertsim core: a deterministic, seedable testbed for
 * semantic emergency-alert caching. Handles are opaque; every call that can
 * fail returns a status code, with detail available from
 * alertsim_last_error(). Strings returned through char** out-parameters are
 * heap-allocated and must be released with alertsim_string_free().
 *
 * Configs and batch specs travel as JSON. Missing fields take the baseline
 * defaults (Urban scenario, cache 128, 400 alerts over 900 s, reliability
 * 0.85, weights wS=4 wU=5 wF=5, seed FISHDINNER, 60 queries/min, retry
 * every second up to 10 attempts, pushes disabled).
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum alertsim_status {
    ALERTSIM_OK = 0,
    ALERTSIM_ERR_INVALID_ARGUMENT = 1,
    ALERTSIM_ERR_PARSE = 2,
    ALERTSIM_ERR_NOT_FOUND = 3,
    ALERTSIM_ERR_DUPLICATE_ID = 4,
    ALERTSIM_ERR_IO = 5,
    ALERTSIM_ERR_VERIFY_FAILED = 6,
    ALERTSIM_ERR_INTERNAL = 7
} alertsim_status;

typedef struct alertsim_run alertsim_run;     /* one simulation result */
typedef struct alertsim_batch alertsim_batch; /* one batch of runs */
typedef struct alertsim_store alertsim_store; /* run history directory */

const char* alertsim_version(void);
const char* alertsim_status_name(alertsim_status status);

/* Message for the most recent failure on this thread; empty when none. */
const char* alertsim_last_error(void);

void alertsim_string_free(char* text);

/* FNV-1a seed derivation; rejects the empty string. */
alertsim_status alertsim_seed_derive(const char* seed_text, uint32_t* out_seed);

/* ------------------------------------------------------------------ */
/* Simulation                                                          */

/* Executes replicate `replicate` of the given config JSON. */
alertsim_status alertsim_run_simulation(const char* config_json, uint32_t replicate,
                                        alertsim_run** out_run);

alertsim_status alertsim_run_metrics_json(const alertsim_run* run, char** out_json);
alertsim_status alertsim_run_result_json(const alertsim_run* run, char** out_json);

/* Timeline as CSV: time,cacheSize,hits,misses,hitRate. */
alertsim_status alertsim_run_timeline_csv(const alertsim_run* run, char** out_csv);

void alertsim_run_free(alertsim_run* run);

/* ------------------------------------------------------------------ */
/* Batches                                                             */

/*
 * Batch spec JSON: {"kind": "baseline" | "cacheSweep" | "networkSweep" |
 * "jointSweep" | "extremeCorners", "cacheSizes": [...], "reliabilities":
 * [...], "policies": [...], "tieEpsilon": 0.005, "jobs": 0,
 * "base": {<config>}}. When a store is supplied every run is persisted to
 * it (metrics plus config, no embedded full results).
 */
alertsim_status alertsim_run_batch(const char* batch_json, alertsim_store* store_or_null,
                                   const char* experiment_name_or_null,
                                   alertsim_batch** out_batch);

/* One CSV row per (policy, grid point, replicate). */
alertsim_status alertsim_batch_rows_csv(const alertsim_batch* batch, char** out_csv);

/* Winner matrix for one metric at the given tie epsilon. */
alertsim_status alertsim_batch_winner_csv(const alertsim_batch* batch, const char* metric,
                                          double tie_epsilon, char** out_csv);

/*
 * Writes <prefix>-comparison-<stamp>.csv plus per-metric winner CSVs into
 * out_dir and returns the written paths as a JSON array.
 */
alertsim_status alertsim_batch_write_csv(const alertsim_batch* batch, const char* out_dir,
                                         const char* stamp, char** out_paths_json);

/* Summary JSON: grid, rows, and per-metric winner cells. */
alertsim_status alertsim_batch_summary_json(const alertsim_batch* batch, char** out_json);

void alertsim_batch_free(alertsim_batch* batch);

/* ------------------------------------------------------------------ */
/* Run store                                                           */

alertsim_status alertsim_store_open(const char* directory, alertsim_store** out_store);

/*
 * Persists a run. include_full != 0 embeds the entire run result so replay
 * needs no re-execution. Returns the stored id.
 */
alertsim_status alertsim_store_log_run(alertsim_store* store, const alertsim_run* run,
                                       const char* experiment_name_or_null,
                                       const char* notes_or_null, int include_full,
                                       char** out_id);

/*
 * Records as a JSON array sorted by timestamp. Filter JSON (nullable):
 * {"scenario": ..., "policy": ..., "experimentName": ...}, conjunctive.
 */
alertsim_status alertsim_store_list_json(alertsim_store* store, const char* filter_json,
                                         char** out_json);

/*
 * Stored full results when present; otherwise re-runs the stored config
 * under the recorded seed and verifies the stored metrics match exactly
 * (ALERTSIM_ERR_VERIFY_FAILED on mismatch).
 */
alertsim_status alertsim_store_replay(alertsim_store* store, const char* run_id,
                                      alertsim_run** out_run);

void alertsim_store_close(alertsim_store* store);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ALERTSIM_H */
