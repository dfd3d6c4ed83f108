/* alhazen: specular reflection point on a sphere for two external focal
 * points, solved three independent ways (quartic, fixed-point iteration,
 * single-iteration closed form) plus a brute-force bisection oracle.
 *
 * C API over an opaque scene handle. All angles are radians. The scene
 * normalizes labels so that the nearer focal point (A) satisfies
 * r_a <= r_b; if the caller's labels were swapped, every phi value
 * crossing this API is mirrored back into the caller's frame (negated),
 * point y-coordinates included, and mixed classification kinds exchange
 * roles. The `swapped` accessor reports whether that happened.
 */
#ifndef ALHAZEN_H
#define ALHAZEN_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#  define ALH_API __declspec(dllexport)
#else
#  define ALH_API __attribute__((visibility("default")))
#endif

typedef enum alh_status {
    ALH_OK = 0,
    ALH_NON_POSITIVE_RADIUS = 1,
    ALH_FOCAL_INSIDE_SPHERE = 2,
    ALH_THETA_OUT_OF_RANGE = 3,
    ALH_NON_FINITE_INPUT = 4,
    ALH_INVALID_ARGUMENT = 5,
    ALH_INVALID_TOLERANCE = 6,
    ALH_MAX_ITER_EXCEEDED = 7,
    ALH_INSUFFICIENT_TRACE = 8,
    ALH_COMPLEX_ROOTS_DETECTED = 9,
    ALH_DEGENERATE_LEADING_COEFFICIENT = 10,
    ALH_NOT_A_ROOT = 11,
    ALH_NO_PHYSICAL_ROOT = 12,
    ALH_MULTIPLE_PHYSICAL_ROOTS = 13,
    ALH_PRECONDITION_VIOLATED = 14,
    ALH_DENOMINATOR_VANISHES = 15,
    ALH_NO_SIGN_CHANGE = 16
} alh_status;

/* Stable identifier for diagnostics, e.g. "FocalInsideSphere". */
ALH_API const char *alh_status_name(alh_status s);

/* ------------------------------------------------------------------ */
/* scene                                                               */

typedef struct alh_scene alh_scene;

/* r: sphere radius; r_a, r_b: focal distances from the center; angle2:
 * the full angle between the focal rays (2*theta). Fails with
 * NonPositiveRadius, FocalInsideSphere, ThetaOutOfRange or
 * NonFiniteInput; on success *out owns the handle. */
ALH_API alh_status alh_scene_create(double r, double r_a, double r_b,
                                    double angle2, alh_scene **out);
ALH_API void alh_scene_destroy(alh_scene *s);

ALH_API double alh_scene_r(const alh_scene *s);
ALH_API double alh_scene_ra(const alh_scene *s);    /* normalized, <= rb */
ALH_API double alh_scene_rb(const alh_scene *s);
ALH_API double alh_scene_theta(const alh_scene *s); /* half angle */
ALH_API int alh_scene_swapped(const alh_scene *s);
ALH_API int alh_scene_grazing(const alh_scene *s);  /* 2*theta at the tangency bound */

/* Largest valid full angle before segment AB cuts the sphere.
 * Preconditions r < r_a <= r_b (any label order accepted). */
ALH_API alh_status alh_theta2_max(double r, double r_a, double r_b, double *out);

/* Upper end of the arc interval containing the specular point, measured
 * from the bisector (always >= 0; the caller-frame interval is
 * [-bound, 0] when swapped). */
ALH_API double alh_phi_upper_bound(const alh_scene *s);
ALH_API double alh_focal_separation(const alh_scene *s);

/* psi_A - psi_B at M = (r, phi): the difference of the angles each focal
 * ray makes with the outward normal at M. Zero exactly at a specular
 * point. */
ALH_API double alh_specular_mismatch(const alh_scene *s, double phi);

ALH_API void alh_to_cartesian(double radius, double phi, double *x, double *y);

/* ------------------------------------------------------------------ */
/* quartic route                                                       */

/* Monomial coefficients (descending powers of t = tan phi) of the
 * specular condition, out_c = {c4, c3, c2, c1, c0}; also the scene
 * combinations p and q they are built from. */
ALH_API alh_status alh_quartic_coefficients(const alh_scene *s, double out_c[5],
                                            double *out_p, double *out_q);

/* All four real roots of c[0] t^4 + ... + c[4], ascending. Closed-form
 * solve with Newton polishing and an iterative fallback; every returned
 * root has scaled residual <= 1e-11. ComplexRootsDetected if any root
 * has a non-negligible imaginary part (surfaced, never dropped);
 * DegenerateLeadingCoefficient if c[0] == 0. */
ALH_API alh_status alh_solve_quartic(const double c[5], double out_t[4]);

typedef enum alh_reflection_kind {
    ALH_KIND_EXTERNAL = 0,          /* both rays reflect from outside  */
    ALH_KIND_EXTERNAL_INTERNAL = 1, /* A-side outside, B-side inside   */
    ALH_KIND_INTERNAL = 2,          /* both inside                     */
    ALH_KIND_INTERNAL_EXTERNAL = 3  /* A-side inside, B-side outside   */
} alh_reflection_kind;

ALH_API const char *alh_reflection_kind_name(alh_reflection_kind k);

/* Classify one root of the quartic by which side of the surface each
 * focal ray reflects from; out_angle_sum receives the cross-check sum
 * of the two angles at the center (2*theta for the pure kinds,
 * pi - 2*theta for the mixed ones). NotARoot if phi does not satisfy
 * the quartic to within a scaled residual of 1e-5. */
ALH_API alh_status alh_classify_root(const alh_scene *s, double phi,
                                     alh_reflection_kind *out_kind,
                                     double *out_angle_sum);

/* Full classified root table, sorted by phi ascending. out_physical
 * receives the index of the unique physically realized reflection
 * (External kind inside [0, phi_upper_bound], caller frame when
 * swapped). Arrays must hold 4 entries. */
ALH_API alh_status alh_root_table(const alh_scene *s, double out_t[4],
                                  double out_phi[4], int out_kind[4],
                                  double out_residual[4],
                                  double out_angle_sum[4], int *out_physical);

/* The specular phi via the quartic route alone. */
ALH_API alh_status alh_specular_root_quartic(const alh_scene *s, double *out_phi);

/* ------------------------------------------------------------------ */
/* fixed-point route                                                   */

/* Intersection of segment M0->B with the circle of the given radius
 * centered at the origin; requires |M0| < radius <= |B|
 * (PreconditionViolated otherwise). */
ALH_API alh_status alh_line_circle_intersection(double m0x, double m0y,
                                                double bx, double by,
                                                double radius,
                                                double *out_x, double *out_y);

/* One iteration of the geometric construction: from M0 = (r, phi), find
 * A' on segment M0->B at distance r_a from the center, return the
 * half-angle position of the bisector point. */
ALH_API alh_status alh_iterate_once(const alh_scene *s, double phi, double *out);

/* The same map evaluated analytically (two arcsines); agrees with
 * alh_iterate_once to ~1e-15 everywhere on the valid domain. */
ALH_API alh_status alh_closed_form_iterate(const alh_scene *s, double phi, double *out);

typedef struct alh_trace alh_trace;

/* Iterate the map from phi0 until successive values differ by at most
 * tol, or max_iter applications are exhausted (MaxIterExceeded; the
 * partial trace IS still returned and owned by the caller).
 * InvalidTolerance if tol <= 0, InvalidArgument if max_iter < 1 or phi0
 * is outside [0, phi_upper_bound] (caller frame when swapped). */
ALH_API alh_status alh_solve_fixed_point(const alh_scene *s, double phi0,
                                         double tol, int max_iter,
                                         alh_trace **out_trace);
ALH_API void alh_trace_destroy(alh_trace *t);

ALH_API int alh_trace_length(const alh_trace *t);           /* number of phi entries */
ALH_API double alh_trace_phi(const alh_trace *t, int i);
ALH_API double alh_trace_residual(const alh_trace *t, int i); /* |phi_{i+1}-phi_i|, i < length-1 */
ALH_API double alh_trace_mismatch(const alh_trace *t, int i);
ALH_API int alh_trace_converged(const alh_trace *t);

/* Geometric-mean estimate of the linear convergence factor from the
 * trace errors; 0 for an immediate fixed point. InsufficientTrace when
 * the trace is too short to estimate. */
ALH_API alh_status alh_convergence_rate(const alh_trace *t, double *out_k);

/* Result accessors (the last iterate; meaningful when converged). */
ALH_API double alh_result_phi(const alh_trace *t);
ALH_API void alh_result_point(const alh_trace *t, double *x, double *y);
ALH_API double alh_result_incidence(const alh_trace *t); /* common reflection angle psi */
ALH_API int alh_result_iterations(const alh_trace *t);
ALH_API double alh_result_final_mismatch(const alh_trace *t);

/* ------------------------------------------------------------------ */
/* first-order approximation                                           */

/* Triangle areas and chord length entering the closed-form first
 * iteration: e_b = area(O,M0,B), e_a = area(O,M0,F) with F on the
 * sphere along OB, r_m0b = |M0 B|, gamma = theta + phi0. */
ALH_API alh_status alh_first_order_terms(const alh_scene *s, double phi0,
                                         double *out_e_a, double *out_e_b,
                                         double *out_r_m0b, double *out_gamma);

/* The arctangent area-identity formula exactly as printed in the source
 * derivation (known not to reproduce the construction; exposed for
 * comparison). DenominatorVanishes when its denominator is zero. */
ALH_API alh_status alh_area_form_printed(const alh_scene *s, double phi0, double *out);

/* Same formula under the alternate reading of the small triangle's
 * area (circle of radius r_a instead of r); equals exactly twice the
 * closed-form iterate. */
ALH_API alh_status alh_area_form_alt(const alh_scene *s, double phi0, double *out);

/* The first-order approximation to the specular phi: one exact
 * iteration of the map from phi0. */
ALH_API alh_status alh_first_order_phi(const alh_scene *s, double phi0, double *out);

/* |first_order_phi - phi_M| / |phi_M|; switches to the absolute error
 * |first_order_phi| (and sets *out_absolute_mode) when |phi_M| < 1e-12. */
ALH_API alh_status alh_relative_error(const alh_scene *s, double phi0,
                                      double *out_err, int *out_absolute_mode);

/* ------------------------------------------------------------------ */
/* oracle                                                              */

/* Brute-force specular point: scan the mismatch sign on a grid of
 * grid_n cells over the valid arc, bisect the first crossing to a
 * bracket below 1e-15. Slow, dumb, trustworthy. grid_n >= 1000
 * (InvalidArgument otherwise); NoSignChange signals a bound bug and
 * must never occur for a valid scene. */
ALH_API alh_status alh_brute_force_specular(const alh_scene *s, long grid_n,
                                            double *out_phi, double *out_lo,
                                            double *out_hi,
                                            long *out_evaluations);

#ifdef __cplusplus
}
#endif

#endif /* ALHAZEN_H */
