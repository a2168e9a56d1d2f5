/*
 * vibecho: vibrational photon echoes of a two-level molecule excited by two
 * impulsive pulses. C interface over the C++ engine.
 *
 * All objects handed out are opaque and must be released with the matching
 * ve_*_free function. Every fallible call returns a ve_status; on failure
 * ve_last_error() describes the problem (per thread, valid until the next
 * failing call on that thread).
 */
#ifndef VIBECHO_VIBECHO_H
#define VIBECHO_VIBECHO_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(VIBECHO_BUILDING_LIBRARY)
#    define VE_API __declspec(dllexport)
#  else
#    define VE_API __declspec(dllimport)
#  endif
#else
#  define VE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ve_status {
  VE_OK = 0,
  VE_ERR_INVALID_ARGUMENT = 1,
  VE_ERR_CONFIG = 2,
  VE_ERR_NUMERICAL = 3,
  VE_ERR_GRID = 4,
  VE_ERR_DOMAIN = 5,
  VE_ERR_INTERNAL = 6
} ve_status;

typedef enum ve_units { VE_UNITS_SI = 0, VE_UNITS_NATURAL = 1 } ve_units;

typedef enum ve_engine { VE_ENGINE_ANALYTIC = 0, VE_ENGINE_NUMERIC = 1 } ve_engine;

/* SI: kg, rad/s, N. Natural: mass = ground_freq = 1, force is the
 * dimensionless force f and gap is omega0 / Omega. */
typedef struct ve_params {
  double mass;
  double ground_freq;
  double force;
  double gap;
  ve_units units;
} ve_params;

/* Pulses at t0 - tau and t0; areas in [0, 2 pi). */
typedef struct ve_schedule {
  double t0;
  double tau;
  double area1;
  double area2;
} ve_schedule;

/* Derived timescales in the unit system of the parameters. Infinite values
 * mark F_E = 0 (no dephasing). */
typedef struct ve_timescales {
  double momentum_width;
  double dephasing_time;
  double decoherence_time;
  double ratio;
  double dimensionless_force;
  double suggested_tau_min;
  double suggested_tau_max;
} ve_timescales;

/* Numeric-engine settings. Times in the unit system of the parameters.
 * Fill with ve_numeric_defaults() and override what you need. */
typedef struct ve_numeric_options {
  size_t grid_points;
  double momentum_extent; /* natural units; 0 = automatic */
  double dt;
  double t_start;
  double t_end;
  size_t record_stride;
  int kinetic;                /* nonzero: include p^2 / 2m */
  double ground_freq_ratio;   /* Omega_G / Omega, default 1 */
  double excited_freq_ratio;  /* Omega_E / Omega, default 0 */
  double steps_per_dephasing; /* used by ve_numeric_defaults and scans */
} ve_numeric_options;

typedef struct ve_sample {
  double time;
  double re_dipole;
  double im_dipole;
  double ground_pop;
  double excited_pop;
} ve_sample;

typedef struct ve_scan_point {
  double tau;
  double peak;
  double peak_time;
  double xi;
  double xi_analytic;
  int overlap_warning;
  int ok;
} ve_scan_point;

typedef struct ve_fit {
  double exponent;
  double decoherence_time;
  double residual;
  size_t points;
} ve_fit;

typedef struct ve_report {
  double sup_error;
  double sup_error_relative;
  double l2_error;
  int echo_resolved;
  double peak_time_error;
  double peak_magnitude_error;
  double omega_t_total;
  double shift_over_width;
  int in_linear_regime;
  double time_step;
} ve_report;

typedef struct ve_trace ve_trace;
typedef struct ve_scan ve_scan;

VE_API const char* ve_version(void);
VE_API const char* ve_last_error(void);
VE_API const char* ve_status_name(ve_status status);

VE_API ve_params ve_params_typical_molecule(void);
VE_API ve_status ve_params_validate(const ve_params* params);
/* Natural-unit equivalent of any parameter set. */
VE_API ve_status ve_params_to_natural(const ve_params* params, ve_params* out);
VE_API ve_status ve_timescales_compute(const ve_params* params, ve_timescales* out);
VE_API ve_status ve_decoherence_factor(const ve_params* params, double tau, double* out);
VE_API ve_status ve_position_shift(const ve_params* params, double tau, double* out);

VE_API ve_status ve_schedule_validate(const ve_schedule* schedule);

/* Defaults for one schedule: aligned time step, window from just before the
 * first pulse to four dephasing times after the echo, automatic grid. */
VE_API ve_status ve_numeric_defaults(const ve_params* params, const ve_schedule* schedule,
                                     ve_numeric_options* out);

/* Dipole trace. The analytic engine samples the closed-form model (echo term
 * damped by the decoherence factor) on the time base the numeric options
 * describe; options may be NULL for defaults. */
VE_API ve_status ve_trace_run(const ve_params* params, const ve_schedule* schedule,
                              ve_engine engine, const ve_numeric_options* options,
                              ve_trace** out);
/* Echo component alone (numeric: four-step phase cycling). */
VE_API ve_status ve_trace_run_echo(const ve_params* params, const ve_schedule* schedule,
                                   ve_engine engine, const ve_numeric_options* options,
                                   ve_trace** out);
VE_API size_t ve_trace_size(const ve_trace* trace);
VE_API ve_status ve_trace_sample(const ve_trace* trace, size_t index, ve_sample* out);
VE_API const char* ve_trace_frame_note(const ve_trace* trace);
VE_API void ve_trace_free(ve_trace* trace);

/* sup |d_dt - d_dt/2| of the numeric trace. */
VE_API ve_status ve_time_step_change(const ve_params* params, const ve_schedule* schedule,
                                     const ve_numeric_options* options, double* out);

VE_API ve_status ve_scan_tau(const ve_params* params, double area1, double area2,
                             const double* taus, size_t count, ve_engine engine,
                             const ve_numeric_options* options, ve_scan** out);
VE_API size_t ve_scan_size(const ve_scan* scan);
VE_API ve_status ve_scan_point_get(const ve_scan* scan, size_t index, ve_scan_point* out);
/* Error text of a failed point; empty string for successful points. */
VE_API const char* ve_scan_point_error(const ve_scan* scan, size_t index);
VE_API ve_status ve_scan_fit(const ve_scan* scan, ve_fit* out);
VE_API void ve_scan_free(ve_scan* scan);

VE_API ve_status ve_compare(const ve_params* params, const ve_schedule* schedule,
                            const ve_numeric_options* options, ve_report* out);

#ifdef __cplusplus
}
#endif

#endif /* VIBECHO_VIBECHO_H */
