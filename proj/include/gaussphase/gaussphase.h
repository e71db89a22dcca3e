// Copyright 2026 The gaussphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to gaussphase. Every function returns a gp_status; on failure the message is
 * available from gp_last_error() on the calling thread. Handles are opaque and owned by the
 * caller, who releases them with the matching *_free function. */
#ifndef GAUSSPHASE_GAUSSPHASE_H_
#define GAUSSPHASE_GAUSSPHASE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(GAUSSPHASE_BUILDING_LIBRARY)
#define GP_API __attribute__((visibility("default")))
#else
#define GP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    GP_OK = 0,
    GP_ERR_DOMAIN = 1,           /* argument outside the operation's preconditions */
    GP_ERR_TRUNCATION = 2,       /* Fock cutoff insufficient */
    GP_ERR_CONVERGENCE = 3,      /* quadrature or optimizer failed */
    GP_ERR_OVERFLOW = 4,         /* result beyond double range */
    GP_ERR_INVALID_ARGUMENT = 5, /* null pointer, bad handle, short buffer */
    GP_ERR_INTERNAL = 6
} gp_status;

typedef enum { GP_SCHEME_OPTIMAL = 0, GP_SCHEME_HETERODYNE = 1, GP_SCHEME_HOMODYNE = 2, GP_SCHEME_CANONICAL = 3 } gp_scheme;
typedef enum { GP_FAMILY_COHERENT = 0, GP_FAMILY_SQUEEZED = 1 } gp_family;
typedef enum { GP_METHOD_QUADRATURE = 0, GP_METHOD_SERIES = 1, GP_METHOD_ASYMPTOTIC_LARGE = 2, GP_METHOD_ASYMPTOTIC_SMALL = 3 } gp_method;
typedef enum { GP_INPUT_COHERENT = 0, GP_INPUT_SQUEEZED = 1 } gp_input;

GP_API const char* gp_version(void);
GP_API const char* gp_last_error(void);
/* Human-readable name of a status code. */
GP_API const char* gp_status_name(gp_status status);

/* numerics */
GP_API gp_status gp_bessel_i0(double t, double* out);
GP_API gp_status gp_lambert_w0(double x, double* out);

/* Gaussian states */
GP_API gp_status gp_lossy_channel_output(double r0, double T, double* n_beta, double* r);
/* Pure squeezing with the same mean photon number T sinh^2 r0 as the lossy output. */
GP_API gp_status gp_energy_matched_squeeze(double r0, double T, double* out);
GP_API gp_status gp_mean_photon_number(double n_beta, double r, double alpha_re, double alpha_im, double* out);

/* single-copy fidelities */
typedef struct {
    double value;
    double error_estimate;
    int method; /* gp_method */
    int converged;
} gp_fidelity;

typedef struct {
    double value;
    double high_temperature;
    double low_temperature;
    int near_boundary;
} gp_small_alpha_fidelity;

GP_API gp_status gp_coherent_thermal_fidelity(double alpha_abs, double n_beta, gp_fidelity* out);
GP_API gp_status gp_coherent_fidelity_large_alpha(double n_alpha, double n_beta, double* out);
GP_API gp_status gp_coherent_fidelity_small_alpha(double n_alpha, double n_beta, gp_small_alpha_fidelity* out);
GP_API gp_status gp_squeezed_thermal_fidelity(double r0, double T, gp_fidelity* out);
GP_API gp_status gp_squeezed_thermal_fidelity_series(double r0, double T, int term_budget, gp_fidelity* out);
GP_API gp_status gp_xi_of_T(double T, double* out);
GP_API gp_status gp_xi_interpolated(double T, double* out);
GP_API gp_status gp_squeezed_fidelity_large(double n0, double T, double* out);

/* many-copy variances */
typedef struct {
    int scheme; /* gp_scheme */
    int family; /* gp_family */
    double fisher_per_copy;
    double variance;
    long long n_copies;
    int outside_regime;
    char regime_note[128];
} gp_variance_report;

GP_API gp_status gp_optimal_var_coherent(double n_alpha, double n_beta, long long n_copies, gp_variance_report* out);
GP_API gp_status gp_optimal_var_squeezed(double n_r, double n_beta, long long n_copies, gp_variance_report* out);
GP_API gp_status gp_optimal_var_squeezed_lossy(double n0, double T, long long n_copies, gp_variance_report* out);
GP_API gp_status gp_heterodyne_var_squeezed(double n_r, double n_beta, long long n_copies, gp_variance_report* out);
GP_API gp_status gp_heterodyne_var_lossy(double n0, double T, long long n_copies, gp_variance_report* out);
GP_API gp_status gp_heterodyne_var_coherent(double n_alpha, double n_beta, long long n_copies, gp_variance_report* out);
GP_API gp_status gp_homodyne_var_squeezed(double n_r, long long n_copies, gp_variance_report* out);
GP_API gp_status gp_homodyne_var_lossy(double n0, double T, long long n_copies, gp_variance_report* out);
GP_API gp_status gp_homodyne_var_coherent(double n_alpha, double n_beta, long long n_copies, gp_variance_report* out);
GP_API gp_status gp_canonical_var_coherent(double n_alpha, double n_beta, long long n_copies, gp_variance_report* out);
GP_API gp_status gp_canonical_var_squeezed_large(double n0, double T, long long n_copies, gp_variance_report* out);
GP_API gp_status gp_canonical_var_squeezed_low(double n0, double T, long long n_copies, gp_variance_report* out);
GP_API gp_status gp_heterodyne_fisher_squeezed(double n_r, double n_beta, double* out);
GP_API gp_status gp_homodyne_fisher(double r, double delta, double* out);
GP_API gp_status gp_homodyne_optimal_angle(double r, double* out);
GP_API gp_status gp_homodyne_fisher_coherent(double n_alpha, double n_beta, double delta, double* out);
GP_API gp_status gp_canonical_prob_large_squeezing(double phi_bar, double lambda0, double T, double* out);

/* Fock-space oracle */
typedef struct gp_fock gp_fock;

GP_API gp_status gp_fock_thermal(double n_beta, int n_max, gp_fock** out);
GP_API gp_status gp_fock_displaced_thermal(double alpha_re, double alpha_im, double n_beta, int n_max, gp_fock** out);
GP_API gp_status gp_fock_squeezed_vacuum(double r, int n_max, gp_fock** out);
GP_API gp_status gp_fock_lossy_squeezed(double r0, double T, int n_max, gp_fock** out);
/* Cutoff grown until the trace deficit is below 1e-10 and boundary l-diagonal entries below 1e-12. */
GP_API gp_status gp_fock_adaptive_displaced_thermal(double alpha_re, double alpha_im, double n_beta, int l, gp_fock** out);
GP_API gp_status gp_fock_adaptive_lossy_squeezed(double r0, double T, int l, gp_fock** out);
GP_API void gp_fock_free(gp_fock* rho);
GP_API gp_status gp_fock_n_max(const gp_fock* rho, int* out);
GP_API gp_status gp_fock_trace_deficit(const gp_fock* rho, double* out);
GP_API gp_status gp_fock_entry(const gp_fock* rho, int n, int m, double* re, double* im);
GP_API gp_status gp_fock_phase_shift(const gp_fock* rho, double phi, gp_fock** out);
GP_API gp_status gp_fock_optimal_fidelity(const gp_fock* rho, int l, double* value, double* tail_bound);
/* density must hold grid_size values; theta_j = 2 pi j / grid_size. */
GP_API gp_status gp_fock_canonical_distribution(const gp_fock* rho, double phi, int grid_size, double* density);
GP_API gp_status gp_fock_canonical_fisher(const gp_fock* rho, double phi, double h, int grid_size, double* value,
                                          double* error_estimate);
GP_API gp_status gp_fock_write_csv(const gp_fock* rho, const char* path);

/* Monte Carlo experiments */
typedef struct gp_experiment gp_experiment;

typedef struct {
    size_t n_copies;
    size_t n_trials;
    double empirical_variance;
    double predicted_crlb;
    double ratio;
    double confidence_halfwidth;
} gp_experiment_summary;

/* Parses the flat `key = value` configuration format; unknown keys are rejected. */
GP_API gp_status gp_experiment_parse(const char* text, gp_experiment** out);
/* Sets one key using the same syntax and validation as the parser. */
GP_API gp_status gp_experiment_set(gp_experiment* experiment, const char* key, const char* value);
GP_API gp_status gp_experiment_validate(const gp_experiment* experiment);
GP_API gp_status gp_experiment_run(const gp_experiment* experiment, gp_experiment_summary* out);
GP_API gp_status gp_experiment_predicted_crlb(const gp_experiment* experiment, double* out);
GP_API const char* gp_experiment_csv_header(void);
/* Writes the CSV row (without newline) into buf; fails with GP_ERR_INVALID_ARGUMENT if it does not fit. */
GP_API gp_status gp_experiment_csv_row(const gp_experiment* experiment, const gp_experiment_summary* summary, char* buf,
                                       size_t buf_len);
GP_API void gp_experiment_free(gp_experiment* experiment);

/* Frequency estimation */
typedef struct {
    int scheme; /* gp_scheme */
    int input;  /* gp_input */
    double input_parameter;
    double eta;
    long long n_copies;
    double t_star;
    double var_omega;
    double eta_t_star;
    double numeric_t_star;
    double rescaled_var; /* N Var[omega] / eta^2 */
} gp_freq_optimum;

typedef struct {
    double n0;
    double coherent;
    double squeezed_optimal;
    double squeezed_homodyne;
    double squeezed_heterodyne;
    double eta_t_coherent;
    double eta_t_optimal;
    double eta_t_homodyne;
    double eta_t_heterodyne;
} gp_freq_row;

GP_API gp_status gp_coherent_freq_optimum(double alpha_abs, double eta, long long n_copies, gp_freq_optimum* out);
GP_API gp_status gp_squeezed_freq_optimum(double r0, double eta, long long n_copies, int scheme, gp_freq_optimum* out);
/* Var[omega](t) at time t. */
GP_API gp_status gp_frequency_variance(int input, int scheme, double input_parameter, double eta, long long n_copies,
                                       double t, double* out);
GP_API gp_status gp_frequency_comparison(double eta, long long n_copies, const double* n0, size_t count, gp_freq_row* rows);
GP_API gp_status gp_scaling_exponent(int input, int scheme, double n0_lo, double n0_hi, double eta, double* out);
GP_API gp_status gp_lossless_scaling_exponent(double n0_lo, double n0_hi, double* out);

#ifdef __cplusplus
}
#endif

#endif /* GAUSSPHASE_GAUSSPHASE_H_ */
