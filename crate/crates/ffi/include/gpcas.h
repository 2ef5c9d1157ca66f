#ifndef GPCAS_H
#define GPCAS_H

/* Generated from src/lib.rs by cbindgen; edit there, not here. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call. Anything but `Ok` leaves a description for
 * `gp_last_error`.
 */
typedef enum GpStatus {
  GpStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  GpStatus_NullPointer = 1,
  /**
   * An argument lies outside the range where the operation is defined.
   */
  GpStatus_InvalidArgument = 2,
  /**
   * The coupling sits below the threshold where the unstable mode — and
   * with it the condensate — first appears.
   */
  GpStatus_NoCriticalMode = 3,
  /**
   * No admissible elliptic modulus exists for this interval length.
   */
  GpStatus_KGap = 4,
  /**
   * An evaluation point fell on a pole of an elliptic quotient.
   */
  GpStatus_PoleProximity = 5,
  /**
   * The fluctuation spectrum still carries an imaginary frequency, so the
   * vacuum energy does not exist.
   */
  GpStatus_UnstableSpectrum = 6,
  /**
   * Any other failure, including an internal one.
   */
  GpStatus_Failure = 7,
} GpStatus;

/**
 * Solution of the linear eigenvalue problem for the unstable mode.
 */
typedef struct GpBoundState GpBoundState;

/**
 * Exact condensate profile.
 */
typedef struct GpCondensate GpCondensate;

/**
 * A model choice together with the field's mass and self-coupling.
 */
typedef struct GpModel GpModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates an attractive delta potential -2κ·δ(x) on the whole line.
 */
enum GpStatus gp_model_delta(double m, double lambda, double kappa, struct GpModel **out);

/**
 * Creates the interval [0, L] with φ'(0) = -κ·φ(0) and φ(L) = 0.
 */
enum GpStatus gp_model_robin(double m,
                             double lambda,
                             double kappa,
                             double length,
                             struct GpModel **out);

/**
 * Creates the square hole of depth U₀ on 0 < x < R with a Dirichlet wall at
 * x = 0 and a free half line beyond.
 */
enum GpStatus gp_model_hole(double m,
                            double lambda,
                            double depth,
                            double width,
                            struct GpModel **out);

/**
 * Releases a model handle. Null is ignored.
 */
void gp_model_free(struct GpModel *model);

/**
 * Coupling κ_c above which the interval of length L carries an unstable
 * mode, m/tanh(mL).
 */
enum GpStatus gp_critical_kappa(double m, double length, double *out);

/**
 * Interval lengths separating the condensate branches at fixed κ > m:
 * below `l0` no unstable mode, between `l1` and `l2` no admissible modulus.
 * `l1` and `l2` are set to NaN when κ < √2·m, where no gap exists.
 */
enum GpStatus gp_robin_thresholds(double m, double kappa, double *l0, double *l1, double *l2);

/**
 * Hole depth at which the first unstable mode appears for width R.
 */
enum GpStatus gp_hole_threshold(double m, double width, double *out);

/**
 * Solves the linear eigenvalue problem for the model's unstable mode.
 */
enum GpStatus gp_bound_state_solve(const struct GpModel *model, struct GpBoundState **out);

/**
 * Binding strength ε of the unstable mode; its eigenvalue is -ε².
 */
enum GpStatus gp_bound_state_epsilon(const struct GpBoundState *bs, double *out);

/**
 * Variational amplitude μ of the condensate approximation μ·φ_bs.
 */
enum GpStatus gp_bound_state_mu(const struct GpBoundState *bs, double *out);

/**
 * Variational condensate energy E_bs, an upper bound on the exact one.
 */
enum GpStatus gp_bound_state_energy(const struct GpBoundState *bs, double *out);

/**
 * The approximate condensate profile μ·φ_bs at a point of the model's
 * domain.
 */
enum GpStatus gp_bound_state_eval(const struct GpBoundState *bs, double x, double *out);

/**
 * Releases a bound-state handle. Null is ignored.
 */
void gp_bound_state_free(struct GpBoundState *bs);

/**
 * Solves the full nonlinear field equation for the model's condensate.
 */
enum GpStatus gp_condensate_solve(const struct GpModel *model, struct GpCondensate **out);

/**
 * Exact condensate energy.
 */
enum GpStatus gp_condensate_energy(const struct GpCondensate *cond, double *out);

/**
 * Elliptic modulus k of the profile, or NaN for the delta model whose
 * profile is the degenerate k = 1 shape.
 */
enum GpStatus gp_condensate_modulus(const struct GpCondensate *cond, double *out);

/**
 * Condensate profile φ₀ at a point of the model's domain.
 */
enum GpStatus gp_condensate_eval(const struct GpCondensate *cond, double x, double *out);

/**
 * Releases a condensate handle. Null is ignored.
 */
void gp_condensate_free(struct GpCondensate *cond);

/**
 * Renormalized vacuum energy of the fluctuations for the interval model.
 * Below threshold (κ < m) the closed subcritical form is used and
 * `background` is ignored; above the critical coupling the spectrum is
 * integrated over the condensate background selected by `background`
 * (0 = exact profile, 1 = bound-state approximation).
 */
enum GpStatus gp_vacuum_energy(const struct GpModel *model, int background, double *out);

/**
 * Total force on the movable wall of the interval model: the condensate
 * part plus the fluctuation part over the selected background
 * (0 = exact profile, 1 = bound-state approximation). Positive values push
 * the wall outward.
 */
enum GpStatus gp_total_force(const struct GpModel *model, int background, double *out);

/**
 * Copies the description of the current thread's most recent failure into
 * `buf` (always NUL-terminated when `len` > 0) and returns the full length
 * of the message including the NUL, so a call with a null buffer sizes a
 * retry.
 */
size_t gp_last_error(char *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GPCAS_H */
