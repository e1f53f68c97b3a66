#ifndef FRWAVE_FRWAVE_H
#define FRWAVE_FRWAVE_H

/* C interface to the frwave library.  Objects are opaque handles released by
   their matching *_free function.  Every call that can fail returns an
   frw_status; the message of the last failure on the calling thread is
   available from frw_last_error(). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FRW_BUILDING_LIBRARY)
#    define FRW_API __declspec(dllexport)
#  else
#    define FRW_API __declspec(dllimport)
#  endif
#else
#  define FRW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values match the CLI exit codes. */
typedef enum frw_status {
  FRW_OK = 0,
  FRW_GATE_FAILED = 1,
  FRW_DOMAIN = 2,
  FRW_CONVERGENCE = 3,
  FRW_RESONANCE = 4,
  FRW_INVALID_ARGUMENT = 5,
  FRW_INTERNAL = 6
} frw_status;

typedef enum frw_case { FRW_CASE_QUARTIC = 0, FRW_CASE_CUBIC = 1 } frw_case;

typedef struct frw_coefficients {
  frw_case kase;
  double a2;
  double a3_mean;
  double a4;
} frw_coefficients;

typedef struct frw_profile_params {
  double V;
  double Omega;
  double m;
  int s_star;
  double lambda;
  double residual_sup;
} frw_profile_params;

typedef struct frw_profile frw_profile;
/* A JSON document, optionally with a CSV grid, plus its pass/fail verdict. */
typedef struct frw_report frw_report;

FRW_API const char* frw_version(void);
FRW_API const char* frw_last_error(void);
/* Non-zero when the last failure on this thread was a resonance; fills the
   offending mode and divisor. */
FRW_API int frw_last_resonance(int* l, int* j, double* divisor);

/* Solves every admissible branch.  At most `capacity` handles are written;
   *count receives the number of branches (which may exceed capacity). */
FRW_API frw_status frw_solve_profiles(const frw_coefficients* c, frw_profile** out,
                                      size_t capacity, size_t* count);
/* Cubic-family profile for an explicit (lambda, s*), bypassing the coefficients. */
FRW_API frw_status frw_profile_cubic(double lambda, int s_star, frw_profile** out);
FRW_API frw_status frw_profile_parse(const char* json, frw_profile** out);
FRW_API frw_status frw_profile_get(const frw_profile* p, frw_profile_params* out);
FRW_API frw_status frw_profile_eval(const frw_profile* p, const double* t, double* g, size_t n);
/* Profile JSON with its residual checks; passed iff every residual gate holds. */
FRW_API frw_status frw_profile_report(const frw_profile* p, frw_report** out);
FRW_API void frw_profile_free(frw_profile* p);

FRW_API frw_status frw_certify(const frw_profile* p, frw_report** out);
FRW_API frw_status frw_oracle(const frw_profile* p, int order, frw_report** out);

/* The following take a JSON config object; missing keys take defaults. */
FRW_API frw_status frw_develop(const char* config_json, frw_report** out);
FRW_API frw_status frw_range(const char* config_json, frw_report** out);
FRW_API frw_status frw_sweep(const char* config_json, frw_report** out);

FRW_API const char* frw_report_json(const frw_report* r);
/* Empty string when the report carries no grid. */
FRW_API const char* frw_report_csv(const frw_report* r);
FRW_API int frw_report_passed(const frw_report* r);
FRW_API void frw_report_free(frw_report* r);

/* Wraps result_json as {meta, config, result}; meta holds the tool version,
   the config hash and the seed. */
FRW_API frw_status frw_stamp(const char* result_json, const char* config_json, uint64_t seed,
                             frw_report** out);

/* Cosine coefficients of samples (x_i, y_i) on [0, pi]; out[0] is the mean. */
FRW_API frw_status frw_cosine_modes(const double* x, const double* y, size_t n, double* out,
                                    int modes);

#ifdef __cplusplus
}
#endif

#endif /* FRWAVE_FRWAVE_H */
