#ifndef TAILDEP_TAILDEP_H
#define TAILDEP_TAILDEP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define TD_API __declspec(dllexport)
#else
#define TD_API __attribute__((visibility("default")))
#endif

typedef enum td_status {
  TD_OK = 0,
  TD_ERR_DOMAIN = 1,
  TD_ERR_PARAMETER = 2,
  TD_ERR_DATA = 3,
  TD_ERR_CONFIG = 4,
  TD_ERR_VALIDATION = 5,
  TD_ERR_INFEASIBLE = 6,
  TD_ERR_ALIGNMENT = 7,
  TD_ERR_IO = 8,
  TD_ERR_ARGUMENT = 9,  /* null pointer or unknown name */
  TD_ERR_INTERNAL = 10
} td_status;

typedef struct td_tdf td_tdf;
typedef struct td_panel td_panel;

/* Message of the last failed call on this thread; "" after success. */
TD_API const char* td_last_error(void);
TD_API const char* td_status_name(td_status status);
TD_API const char* td_version(void);

/* Strings and arrays returned through out-parameters are owned by the caller. */
TD_API void td_string_free(char* text);
TD_API void td_free(void* data);

/* Tail dependence functions. values holds m + 1 samples on the uniform grid. */
TD_API td_status td_tdf_from_grid(const double* values, size_t count, int validated,
                                  td_tdf** out);
/* family: comonotone | independence | clayton (a = theta) | tent (a, b) |
   parabola (a = c). */
TD_API td_status td_tdf_parametric(const char* family, double a, double b, size_t m,
                                   td_tdf** out);
TD_API td_status td_tdf_from_json(const char* json, td_tdf** out);
TD_API td_status td_tdf_to_json(const td_tdf* tdf, char** json);
TD_API td_status td_tdf_clone(const td_tdf* tdf, td_tdf** out);
TD_API void td_tdf_free(td_tdf* tdf);
TD_API size_t td_tdf_grid_size(const td_tdf* tdf);
TD_API int td_tdf_is_validated(const td_tdf* tdf);
/* Copies m + 1 samples into values. */
TD_API td_status td_tdf_values(const td_tdf* tdf, double* values, size_t capacity);
TD_API td_status td_tdf_eval(const td_tdf* tdf, double s, double* value);
TD_API td_status td_tdf_extend_2d(const td_tdf* tdf, double x, double y, double* value);
TD_API td_status td_tdf_concave_majorant(const td_tdf* tdf, td_tdf** out);

/* JSON array of measure records. normalization: "raw" | "doubled".
   point_s0 and lp_p add the point evaluation and L^p norm unless NaN. */
TD_API td_status td_measures_json(const td_tdf* tdf, const char* normalization,
                                  double point_s0, double lp_p, char** json);
TD_API td_status td_ev_copula(const td_tdf* tdf, double u, double v, double* value);
/* {"relation", "witnesses"}; tolerance < 0 selects the default. */
TD_API td_status td_compare_json(const td_tdf* first, const td_tdf* second, double tolerance,
                                 char** json);

/* k = 0 selects floor(sqrt(n)); tail: "lower" | "upper". */
TD_API td_status td_estimate(const double* x, const double* y, size_t n, size_t k,
                             size_t grid, const char* tail, td_tdf** out);
/* {"windows": [{"start", "tdf"}], "skipped": [...]}; k = 0 selects
   floor(sqrt(window)). project != 0 stores least concave majorants. */
TD_API td_status td_estimate_rolling_json(const double* x, const double* y, size_t n,
                                          size_t window, size_t step, size_t k, size_t grid,
                                          const char* tail, int project, size_t threads,
                                          char** json);

/* Range of a measure over admissible TDFs with TDC lambda.
   measure: "linf" | "l1" | "point:<s0>". */
TD_API td_status td_envelope_json(double lambda, const char* measure, size_t grid,
                                  const char* normalization, char** json);

/* family: independence | comonotone | clayton | gumbel_survival | gaussian.
   u and v must hold n values each. */
TD_API td_status td_simulate(const char* family, double param, size_t n, uint64_t seed,
                             double* u, double* v);
TD_API td_status td_analytic_tdf(const char* family, double param, size_t m, td_tdf** out);

/* Two numeric columns of a CSV file with a header row. Null names select the
   first two columns not named "date". Missing cells become NaN. */
TD_API td_status td_csv_columns(const char* path, const char* name_x, const char* name_y,
                                double** x, double** y, size_t* n);

/* Panels. format: "wide" | "long". */
TD_API td_status td_panel_load(const char* path, const char* format, td_panel** out);
TD_API td_status td_panel_log_returns(const td_panel* prices, td_panel** out);
TD_API void td_panel_free(td_panel* panel);
TD_API size_t td_panel_rows(const td_panel* panel);
TD_API size_t td_panel_cols(const td_panel* panel);
TD_API td_status td_panel_write_csv(const td_panel* panel, const char* path);
TD_API td_status td_panel_to_csv(const td_panel* panel, char** csv);
/* benchmark may be null or empty. */
TD_API td_status td_panel_summary_json(const td_panel* panel, const char* benchmark,
                                       char** json);

/* Runs the full report from a request document (or a manifest holding one
   under "request") and returns the manifest text. */
TD_API td_status td_report_run(const char* request_json, char** manifest);

#ifdef __cplusplus
}
#endif

#endif
