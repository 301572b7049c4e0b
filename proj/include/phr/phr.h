/*
 * phr — frequency-domain strict-stationarity testing.
 *
 * C interface to the library: opaque series handles, status codes, and
 * JSON strings for structured results. Every function is safe to call from
 * multiple threads as long as each handle is used by one thread at a time;
 * the last-error message is thread-local.
 *
 * Strings returned through char** out-parameters are heap-allocated and
 * must be released with phr_string_destroy().
 */
#ifndef PHR_H
#define PHR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PHR_API __declspec(dllexport)
#else
#define PHR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum phr_status {
    PHR_OK = 0,
    PHR_ERROR_INVALID_ARGUMENT = 1, /* bad parameters or contract violation */
    PHR_ERROR_IO = 2,               /* file system problem */
    PHR_ERROR_PARSE = 3,            /* malformed CSV or JSON */
    PHR_ERROR_NUMERIC = 4,          /* degenerate data (zero variance, ...) */
    PHR_ERROR_INTERNAL = 5
} phr_status;

/* Opaque time-series handle. */
typedef struct phr_series phr_series;

PHR_API const char* phr_version(void);

/* Static name of a status code ("ok", "invalid_argument", ...). */
PHR_API const char* phr_status_name(phr_status status);

/* Message describing the most recent failure on this thread. */
PHR_API const char* phr_last_error_message(void);

PHR_API void phr_string_destroy(char* str);

/* ---- series construction and access ---------------------------------- */

PHR_API phr_status phr_series_create(const double* values, size_t count,
                                     double sampling_interval, phr_series** out_series);

/* Column is a zero-based index ("0") or a header name; a name implies a
 * header row even when skip_header is 0. */
PHR_API phr_status phr_series_load_csv(const char* path, const char* column,
                                       int skip_header, phr_series** out_series);

PHR_API void phr_series_destroy(phr_series* series);

PHR_API size_t phr_series_size(const phr_series* series);
PHR_API double phr_series_sampling_interval(const phr_series* series);

/* Copies the observations into a caller-provided buffer of at least
 * phr_series_size() doubles. */
PHR_API phr_status phr_series_copy_values(const phr_series* series, double* buffer,
                                          size_t capacity);

/* JSON array of the transform tags applied so far. */
PHR_API phr_status phr_series_preprocessing_log(const phr_series* series, char** out_json);

/* ---- transforms (each returns a new handle) --------------------------- */

PHR_API phr_status phr_series_log_returns(const phr_series* series, phr_series** out_series);
PHR_API phr_status phr_series_trim(const phr_series* series, double fraction,
                                   phr_series** out_series);
PHR_API phr_status phr_series_demean(const phr_series* series, phr_series** out_series);
PHR_API phr_status phr_series_detrend(const phr_series* series, phr_series** out_series);

/* Yule-Walker AR fit up to max_order with AIC selection; residuals come
 * back as a new series. out_model_json (optional) receives
 * {order, coefficients, residual_variance}. */
PHR_API phr_status phr_series_prewhiten(const phr_series* series, int max_order,
                                        phr_series** out_series, char** out_model_json);

PHR_API phr_status phr_series_rolling_standardize(const phr_series* series, int window,
                                                  phr_series** out_series);

/* ---- analyses --------------------------------------------------------- */

/* {n, mean, std_dev, min, max, skewness, excess_kurtosis} */
PHR_API phr_status phr_series_describe(const phr_series* series, char** out_json);

/* Frame-averaged cumulant-spectrum test of strict stationarity.
 * frame_length 0 selects the nearest even integer to sqrt(T).
 * out_result_json: {test, D, p_value, alpha, reject, L, P, n_pairs,
 * preprocessing}. out_grid_json (optional): the frame-averaged grid
 * {L, P, pairs, k_hat_re, k_hat_im, s_hat}. */
PHR_API phr_status phr_run_phr_test(const phr_series* series, int frame_length, double alpha,
                                    char** out_result_json, char** out_grid_json);

/* KPSS level-stationarity test. bandwidth -1 selects
 * floor(4 (T/100)^(1/4)); alpha must be one of 0.10, 0.05, 0.025, 0.01.
 * out_result_json: {test, statistic, p_bracket, alpha, reject, bandwidth}. */
PHR_API phr_status phr_run_kpss_test(const phr_series* series, int bandwidth, double alpha,
                                     char** out_result_json);

/* ---- Monte Carlo ------------------------------------------------------ */

/* scenarios_json: one scenario object, an array of them, or
 * {"scenarios": [...], "grouping": [...]}. Runs every scenario with the
 * given worker count (0 = all cores; results do not depend on it) and
 * returns the full table report as JSON. */
PHR_API phr_status phr_run_scenarios(const char* scenarios_json, int workers,
                                     char** out_report_json);

/* Render a table report produced by phr_run_scenarios. */
PHR_API phr_status phr_report_to_csv(const char* report_json, char** out_csv);
PHR_API phr_status phr_report_to_text(const char* report_json, char** out_text);

#ifdef __cplusplus
}
#endif

#endif /* PHR_H */
