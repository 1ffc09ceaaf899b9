/* Public C API for the RGG ensemble-entropy library.
 *
 * All functions return rgg_status; RGG_OK is 0. On failure a thread-local
 * message is available from rgg_last_error(). Opaque handles are released
 * with their matching _free function; strings and buffers returned through
 * out-parameters are released with rgg_string_free / rgg_buffer_free.
 *
 * Ensembles and coordinate distributions are described by JSON documents,
 * e.g. {"geometry":{"kind":"torus","dimension":1},"n":3,
 *       "distribution":{"kind":"uniform"},
 *       "connection":{"kind":"hard","r0":0.25}}
 * and  {"kind":"truncated_gaussian"}.
 */
#ifndef RGG_H
#define RGG_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rgg_status {
    RGG_OK = 0,
    RGG_ERR_SPEC = 2,    /* invalid spec / arguments */
    RGG_ERR_NUMERIC = 3, /* numeric failure (quadrature, Cholesky, fit) */
    RGG_ERR_INTERNAL = 4
} rgg_status;

const char* rgg_version(void);
const char* rgg_last_error(void);
void rgg_set_threads(int n); /* 0 = auto (hardware, capped by RGG_THREADS) */

void rgg_string_free(char* s);
void rgg_buffer_free(void* p);

/* ---- ensembles ---- */

typedef struct rgg_spec rgg_spec;

rgg_status rgg_spec_parse_json(const char* json_text, rgg_spec** out);
rgg_status rgg_spec_to_json(const rgg_spec* spec, char** json_out);
rgg_status rgg_spec_with_r0(const rgg_spec* spec, double r0, rgg_spec** out);
void rgg_spec_free(rgg_spec* spec);

/* ---- graph distributions ---- */

typedef struct rgg_dist rgg_dist;

void rgg_dist_free(rgg_dist* dist);
int rgg_dist_n(const rgg_dist* dist);
const char* rgg_dist_method(const rgg_dist* dist);
double rgg_dist_entropy_bits(const rgg_dist* dist);
/* Borrowed pointer into the handle; valid until rgg_dist_free. */
rgg_status rgg_dist_probs(const rgg_dist* dist, const double** probs, size_t* count);
/* Both arrays have C(n,2)+1 entries. */
rgg_status rgg_dist_edge_marginals(const rgg_dist* dist, double* unnormalised, double* normalised);
rgg_status rgg_dist_error(const rgg_dist* dist, double* systematic_bits, double* standard_bits);
double rgg_dist_clamped_mass(const rgg_dist* dist);
rgg_status rgg_dist_to_json(const rgg_dist* dist, char** json_out);

/* ---- sampling and MC entropy ---- */

/* counts has 2^C(n,2) entries (n <= 7), released with rgg_buffer_free. */
rgg_status rgg_sample_counts(const rgg_spec* spec, uint64_t L, uint64_t seed,
                             uint64_t** counts, size_t* count_len);
rgg_status rgg_mc_distribution(const rgg_spec* spec, uint64_t L, uint64_t seed, rgg_dist** out);
/* Plug-in entropy with bias/standard errors (reported in bits). */
rgg_status rgg_estimate_entropy(const uint64_t* counts, size_t count_len, uint64_t L,
                                double* entropy_bits, double* systematic_bits,
                                double* standard_bits);
/* One estimate per grid point, arrays of length n_r0. */
rgg_status rgg_entropy_curve(const rgg_spec* spec, const double* r0_grid, size_t n_r0, uint64_t L,
                             uint64_t seed, double* entropy_bits, double* systematic_bits,
                             double* standard_bits);

/* ---- exact n=3, d=1 ensembles; geometry is "torus1d" or "line1d" ---- */

rgg_status rgg_exact_probabilities(const char* geometry, double r0, double p_out[4]);
rgg_status rgg_exact_entropy(const char* geometry, double r0, double* entropy_bits);
rgg_status rgg_exact_pbar(const char* geometry, double r0, double* p_bar);
rgg_status rgg_exact_maximizer(const char* geometry, double* r0_hat, double* entropy_max,
                               double* p_bar_max);

/* ---- d -> infinity Gaussian model; geometry is "cube" or "torus" ---- */

typedef struct rgg_covariance {
    double mu, alpha, beta, gamma;
    double kurtosis;
    int converges_to_er;
} rgg_covariance;

rgg_status rgg_covariance_model(const char* geometry, const char* dist_json, rgg_covariance* out);
rgg_status rgg_kurtosis(const char* dist_json, double* out);
rgg_status rgg_normalised_range(const char* geometry, const char* dist_json, double r0, int d,
                                double* t_out);
rgg_status rgg_r0_for_t(const char* geometry, const char* dist_json, double t, int d,
                        double* r0_out);
rgg_status rgg_limit_distribution(const char* geometry, const char* dist_json, int n, double t,
                                  uint64_t samples, uint64_t seed, int force_mc, rgg_dist** out);
rgg_status rgg_limit_entropy_curve(const char* geometry, const char* dist_json, int n,
                                   const double* t_grid, size_t n_t, uint64_t samples,
                                   uint64_t seed, double* entropy_bits, double* p_bar);
rgg_status rgg_soft_limit_probability(const char* geometry, const char* dist_json, double eta,
                                      double k_scale, double* p_k);
/* Limit-ensemble entropy for n > 7 via the latent exchangeable-Gaussian
 * decomposition (no full probability vector is materialized). */
rgg_status rgg_limit_entropy_large_n(const char* geometry, const char* dist_json, int n, double t,
                                     uint64_t graph_samples, uint64_t inner_samples, uint64_t seed,
                                     double* entropy_bits);

/* ---- Edgeworth correction ---- */

typedef struct rgg_moments {
    double e1, e2, e3, e4, e5, e6, e7, e8;
} rgg_moments;

rgg_status rgg_third_moments(const char* geometry, const char* dist_json, rgg_moments* out);
rgg_status rgg_edgeworth_distribution(const char* geometry, const char* dist_json, int n, double t,
                                      int d, uint64_t samples, uint64_t seed, rgg_dist** out);
/* entropy_bits/clamped_mass are arrays of length n_d; fit_abc is {a,b,c}. */
rgg_status rgg_edgeworth_curve(const char* geometry, const char* dist_json, int n, double t,
                               const int* d_grid, size_t n_d, uint64_t samples, uint64_t seed,
                               double* entropy_bits, double* clamped_mass, double fit_abc[3],
                               double fit_se_a[1]);

/* ---- connection-range optimizer ---- */

typedef struct rgg_optimize_result {
    double r0_hat, se_r0;
    double entropy_max, se_entropy;
    double p_bar_max;
    double fit_a, fit_b, fit_c; /* standardized quadratic coefficients */
    double condition_number;
    int rebracketed;
} rgg_optimize_result;

/* grid_r0/grid_entropy (length grid_size) may be NULL. */
rgg_status rgg_optimize_r0(const rgg_spec* spec, uint64_t L, int grid_size, uint64_t seed,
                           rgg_optimize_result* out, double* grid_r0, double* grid_entropy);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RGG_H */
