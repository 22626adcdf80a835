/* C interface to the coinwalk quantum walk simulator. */

#ifndef COINWALK_H
#define COINWALK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible call.
 */
typedef enum CwStatus {
  /**
   * Success.
   */
  CwStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  CwStatus_NullArgument = 1,
  /**
   * A parameter was out of range or a state was invalid.
   */
  CwStatus_InvalidArgument = 2,
  /**
   * The operation is outside its supported range.
   */
  CwStatus_Unsupported = 3,
} CwStatus;

/**
 * Opaque handle: a position -> probability distribution.
 */
typedef struct CwDistribution CwDistribution;

/**
 * Opaque handle: an exact density-matrix walk plus the parameters that
 * drive it.
 */
typedef struct CwWalk CwWalk;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a walk from a single site `x0` with pure coin state
 * (a_re + i a_im)|R> + (b_re + i b_im)|L>. The amplitudes must be normalized.
 *
 * # Safety
 * `out_walk` must be a valid pointer to a `CwWalk*`.
 */
enum CwStatus cw_walk_new(double theta,
                          double phi1,
                          double phi2,
                          double phi3,
                          double p,
                          int64_t x0,
                          double a_re,
                          double a_im,
                          double b_re,
                          double b_im,
                          struct CwWalk **out_walk);

/**
 * Create a walk from a non-local pure state. `positions` holds `n_sites`
 * site indices; `amplitudes` holds 4 doubles per site
 * (a_re, a_im, b_re, b_im) in the same order. The state must be normalized.
 *
 * # Safety
 * `positions` must point to `n_sites` readable i64 values, `amplitudes` to
 * `4 * n_sites` readable doubles, and `out_walk` to a valid `CwWalk*`.
 */
enum CwStatus cw_walk_new_nonlocal(double theta,
                                   double phi1,
                                   double phi2,
                                   double phi3,
                                   double p,
                                   const int64_t *positions,
                                   const double *amplitudes,
                                   size_t n_sites,
                                   struct CwWalk **out_walk);

/**
 * Advance the walk by `steps` decoherent steps.
 *
 * # Safety
 * `walk` must be a live handle from `cw_walk_new*`.
 */
enum CwStatus cw_walk_step(struct CwWalk *walk, uint32_t steps);

/**
 * Current step count.
 *
 * # Safety
 * `walk` must be a live handle; `out_t` a valid pointer.
 */
enum CwStatus cw_walk_time(const struct CwWalk *walk, uint32_t *out_t);

/**
 * Inclusive position window the walk currently stores.
 *
 * # Safety
 * `walk` must be a live handle; `out_lo` and `out_hi` valid pointers.
 */
enum CwStatus cw_walk_window(const struct CwWalk *walk, int64_t *out_lo, int64_t *out_hi);

/**
 * Extract the position marginal as a new distribution handle.
 *
 * # Safety
 * `walk` must be a live handle; `out_dist` a valid pointer to a
 * `CwDistribution*`.
 */
enum CwStatus cw_walk_marginal(const struct CwWalk *walk, struct CwDistribution **out_dist);

/**
 * Largest off-diagonal magnitude of the coin-traced position density matrix.
 *
 * # Safety
 * `walk` must be a live handle; `out_coherence` a valid pointer.
 */
enum CwStatus cw_walk_coherence(const struct CwWalk *walk, double *out_coherence);

/**
 * Release a walk handle. Null is a no-op.
 *
 * # Safety
 * `walk` must be null or a handle not yet freed.
 */
void cw_walk_free(struct CwWalk *walk);

/**
 * Run the Monte-Carlo engine: `trials` trajectory histograms averaged, from
 * a single site `x0` in coin state |R>. Writes the mean distribution and,
 * when `out_sigma` is non-null, its standard deviation.
 *
 * # Safety
 * `out_dist` must be a valid pointer to a `CwDistribution*`; `out_sigma`
 * may be null.
 */
enum CwStatus cw_mc_run(double theta,
                        double phi1,
                        double phi2,
                        double phi3,
                        double p,
                        uint32_t steps,
                        int64_t x0,
                        uint64_t trials,
                        uint64_t seed,
                        struct CwDistribution **out_dist,
                        double *out_sigma);

/**
 * Run the classical reference sampler from the origin.
 *
 * # Safety
 * `out_dist` must be a valid pointer to a `CwDistribution*`; `out_sigma`
 * may be null.
 */
enum CwStatus cw_classical_run(uint32_t steps,
                               uint64_t trials,
                               uint64_t seed,
                               struct CwDistribution **out_dist,
                               double *out_sigma);

/**
 * The unbiased classical walk law p(y, t). Pure function, no handle needed.
 */
double cw_binomial_pmf(int64_t y, uint32_t t);

/**
 * Number of support points.
 *
 * # Safety
 * `dist` must be a live handle; `out_len` a valid pointer.
 */
enum CwStatus cw_distribution_len(const struct CwDistribution *dist, size_t *out_len);

/**
 * Copy the support into caller buffers, ascending by position. Fails with
 * `Unsupported` when `capacity` is too small; `out_written` receives the
 * required length either way.
 *
 * # Safety
 * `positions` and `probabilities` must each point to `capacity` writable
 * elements; `out_written` may be null.
 */
enum CwStatus cw_distribution_copy(const struct CwDistribution *dist,
                                   int64_t *positions,
                                   double *probabilities,
                                   size_t capacity,
                                   size_t *out_written);

/**
 * Probability at one position (zero off the support).
 *
 * # Safety
 * `dist` must be a live handle; `out_prob` a valid pointer.
 */
enum CwStatus cw_distribution_prob(const struct CwDistribution *dist, int64_t x, double *out_prob);

/**
 * Mean and standard deviation of the distribution. Either out-pointer may
 * be null to skip it.
 *
 * # Safety
 * `dist` must be a live handle.
 */
enum CwStatus cw_distribution_stats(const struct CwDistribution *dist,
                                    double *out_mean,
                                    double *out_sigma);

/**
 * Total-variation distance between two distributions.
 *
 * # Safety
 * Both handles must be live; `out_tv` a valid pointer.
 */
enum CwStatus cw_distribution_tv(const struct CwDistribution *a,
                                 const struct CwDistribution *b,
                                 double *out_tv);

/**
 * Release a distribution handle. Null is a no-op.
 *
 * # Safety
 * `dist` must be null or a handle not yet freed.
 */
void cw_distribution_free(struct CwDistribution *dist);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COINWALK_H */
