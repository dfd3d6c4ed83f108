#include "alhazen/alhazen.h"

#include "approx.hpp"
#include "iterate.hpp"
#include "oracle.hpp"
#include "quartic.hpp"
#include "scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <new>

struct alh_scene {
    alh::Scene s;
};

struct alh_trace {
    alh::Trace t; // stored in the caller's frame (already mirrored)
};

namespace {

alh_status to_c(alh::Status st) {
    return static_cast<alh_status>(static_cast<int>(st));
}

double frame_sign(const alh_scene *s) { return s->s.swapped ? -1.0 : 1.0; }

alh_reflection_kind to_c_kind(alh::ReflectionKind k, bool swapped) {
    if (swapped) {
        if (k == alh::ReflectionKind::ExternalInternal)
            k = alh::ReflectionKind::InternalExternal;
        else if (k == alh::ReflectionKind::InternalExternal)
            k = alh::ReflectionKind::ExternalInternal;
    }
    return static_cast<alh_reflection_kind>(static_cast<int>(k));
}

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

} // namespace

extern "C" {

const char *alh_status_name(alh_status s) {
    return alh::status_name(static_cast<alh::Status>(static_cast<int>(s)));
}

/* ------------------------------------------------------------------ */
/* scene                                                               */

alh_status alh_scene_create(double r, double r_a, double r_b, double angle2,
                            alh_scene **out) {
    if (!out)
        return ALH_INVALID_ARGUMENT;
    *out = nullptr;
    alh::Scene scene;
    if (alh::Status st = alh::make_scene(r, r_a, r_b, angle2, scene);
        st != alh::Status::Ok)
        return to_c(st);
    auto *handle = new (std::nothrow) alh_scene{scene};
    if (!handle)
        return ALH_INVALID_ARGUMENT;
    *out = handle;
    return ALH_OK;
}

void alh_scene_destroy(alh_scene *s) { delete s; }

double alh_scene_r(const alh_scene *s) { return s ? s->s.r : kNan; }
double alh_scene_ra(const alh_scene *s) { return s ? s->s.ra : kNan; }
double alh_scene_rb(const alh_scene *s) { return s ? s->s.rb : kNan; }
double alh_scene_theta(const alh_scene *s) { return s ? s->s.theta : kNan; }
int alh_scene_swapped(const alh_scene *s) { return s && s->s.swapped ? 1 : 0; }
int alh_scene_grazing(const alh_scene *s) { return s && s->s.grazing ? 1 : 0; }

alh_status alh_theta2_max(double r, double r_a, double r_b, double *out) {
    if (!out)
        return ALH_INVALID_ARGUMENT;
    if (!std::isfinite(r) || !std::isfinite(r_a) || !std::isfinite(r_b))
        return ALH_NON_FINITE_INPUT;
    if (r <= 0.0)
        return ALH_NON_POSITIVE_RADIUS;
    if (r_a > r_b)
        std::swap(r_a, r_b);
    if (r_a <= r)
        return ALH_FOCAL_INSIDE_SPHERE;
    *out = alh::theta2_max(r, r_a, r_b);
    return ALH_OK;
}

double alh_phi_upper_bound(const alh_scene *s) {
    return s ? alh::phi_upper_bound(s->s) : kNan;
}

double alh_focal_separation(const alh_scene *s) {
    return s ? alh::focal_separation(s->s) : kNan;
}

double alh_specular_mismatch(const alh_scene *s, double phi) {
    if (!s)
        return kNan;
    const double sign = frame_sign(s);
    return sign * alh::specular_mismatch(s->s, sign * phi);
}

void alh_to_cartesian(double radius, double phi, double *x, double *y) {
    const alh::Vec2 p = alh::to_cartesian(radius, phi);
    if (x)
        *x = p.x;
    if (y)
        *y = p.y;
}

/* ------------------------------------------------------------------ */
/* quartic route                                                       */

alh_status alh_quartic_coefficients(const alh_scene *s, double out_c[5],
                                    double *out_p, double *out_q) {
    if (!s || !out_c)
        return ALH_INVALID_ARGUMENT;
    const alh::QuarticCoefficients k = alh::quartic_coefficients(s->s);
    const double sign = frame_sign(s);
    // mirroring phi -> -phi flips the sign of every odd-power coefficient
    out_c[0] = k.c4;
    out_c[1] = sign * k.c3;
    out_c[2] = k.c2;
    out_c[3] = sign * k.c1;
    out_c[4] = k.c0;
    if (out_p)
        *out_p = sign * k.p;
    if (out_q)
        *out_q = k.q;
    return ALH_OK;
}

alh_status alh_solve_quartic(const double c[5], double out_t[4]) {
    if (!c || !out_t)
        return ALH_INVALID_ARGUMENT;
    std::array<double, 4> roots{};
    if (alh::Status st = alh::solve_quartic(c, roots); st != alh::Status::Ok)
        return to_c(st);
    std::copy(roots.begin(), roots.end(), out_t);
    return ALH_OK;
}

const char *alh_reflection_kind_name(alh_reflection_kind k) {
    return alh::kind_name(static_cast<alh::ReflectionKind>(static_cast<int>(k)));
}

alh_status alh_classify_root(const alh_scene *s, double phi,
                             alh_reflection_kind *out_kind,
                             double *out_angle_sum) {
    if (!s || !out_kind)
        return ALH_INVALID_ARGUMENT;
    const double sign = frame_sign(s);
    alh::ReflectionKind kind{};
    double angle_sum = 0.0;
    if (alh::Status st = alh::classify_root(s->s, sign * phi, kind, angle_sum);
        st != alh::Status::Ok)
        return to_c(st);
    *out_kind = to_c_kind(kind, s->s.swapped);
    if (out_angle_sum)
        *out_angle_sum = angle_sum;
    return ALH_OK;
}

alh_status alh_root_table(const alh_scene *s, double out_t[4],
                          double out_phi[4], int out_kind[4],
                          double out_residual[4], double out_angle_sum[4],
                          int *out_physical) {
    if (!s || !out_t || !out_phi || !out_kind || !out_residual ||
        !out_angle_sum || !out_physical)
        return ALH_INVALID_ARGUMENT;
    std::array<alh::RootEntry, 4> rows{};
    int physical = -1;
    if (alh::Status st = alh::root_table(s->s, rows, physical);
        st != alh::Status::Ok)
        return to_c(st);
    const bool sw = s->s.swapped;
    for (int i = 0; i < 4; ++i) {
        // negating phi reverses the ascending order
        const alh::RootEntry &e = rows[sw ? 3 - i : i];
        out_t[i] = sw ? -e.t : e.t;
        out_phi[i] = sw ? -e.phi : e.phi;
        out_kind[i] = static_cast<int>(to_c_kind(e.kind, sw));
        out_residual[i] = e.residual;
        out_angle_sum[i] = e.angle_sum;
    }
    *out_physical = sw ? 3 - physical : physical;
    return ALH_OK;
}

alh_status alh_specular_root_quartic(const alh_scene *s, double *out_phi) {
    if (!s || !out_phi)
        return ALH_INVALID_ARGUMENT;
    double phi = 0.0;
    if (alh::Status st = alh::specular_root_quartic(s->s, phi);
        st != alh::Status::Ok)
        return to_c(st);
    *out_phi = frame_sign(s) * phi;
    return ALH_OK;
}

/* ------------------------------------------------------------------ */
/* fixed-point route                                                   */

alh_status alh_line_circle_intersection(double m0x, double m0y, double bx,
                                        double by, double radius,
                                        double *out_x, double *out_y) {
    if (!out_x || !out_y)
        return ALH_INVALID_ARGUMENT;
    alh::Vec2 p{};
    if (alh::Status st =
            alh::line_circle_intersection({m0x, m0y}, {bx, by}, radius, p);
        st != alh::Status::Ok)
        return to_c(st);
    *out_x = p.x;
    *out_y = p.y;
    return ALH_OK;
}

alh_status alh_iterate_once(const alh_scene *s, double phi, double *out) {
    if (!s || !out)
        return ALH_INVALID_ARGUMENT;
    const double sign = frame_sign(s);
    double next = 0.0;
    if (alh::Status st = alh::iterate_once(s->s, sign * phi, next);
        st != alh::Status::Ok)
        return to_c(st);
    *out = sign * next;
    return ALH_OK;
}

alh_status alh_closed_form_iterate(const alh_scene *s, double phi, double *out) {
    if (!s || !out)
        return ALH_INVALID_ARGUMENT;
    const double sign = frame_sign(s);
    double next = 0.0;
    if (alh::Status st = alh::closed_form_iterate(s->s, sign * phi, next);
        st != alh::Status::Ok)
        return to_c(st);
    *out = sign * next;
    return ALH_OK;
}

alh_status alh_solve_fixed_point(const alh_scene *s, double phi0, double tol,
                                 int max_iter, alh_trace **out_trace) {
    if (!s || !out_trace)
        return ALH_INVALID_ARGUMENT;
    *out_trace = nullptr;
    const double sign = frame_sign(s);
    alh::Trace trace;
    const alh::Status st =
        alh::solve_fixed_point(s->s, sign * phi0, tol, max_iter, trace);
    const bool has_trace = st == alh::Status::Ok ||
                           st == alh::Status::MaxIterExceeded ||
                           st == alh::Status::NotARoot;
    if (!has_trace)
        return to_c(st);
    if (s->s.swapped) {
        for (double &phi : trace.phis)
            phi = -phi;
        for (double &m : trace.mismatches)
            m = -m;
        trace.phi_M = -trace.phi_M;
        trace.point.y = -trace.point.y;
    }
    auto *handle = new (std::nothrow) alh_trace{std::move(trace)};
    if (!handle)
        return ALH_INVALID_ARGUMENT;
    *out_trace = handle;
    return to_c(st);
}

void alh_trace_destroy(alh_trace *t) { delete t; }

int alh_trace_length(const alh_trace *t) {
    return t ? static_cast<int>(t->t.phis.size()) : 0;
}

double alh_trace_phi(const alh_trace *t, int i) {
    if (!t || i < 0 || i >= static_cast<int>(t->t.phis.size()))
        return kNan;
    return t->t.phis[static_cast<std::size_t>(i)];
}

double alh_trace_residual(const alh_trace *t, int i) {
    // residual i belongs to the step phi_i -> phi_{i+1}
    if (!t || i < 0 || i + 1 >= static_cast<int>(t->t.residuals.size()))
        return kNan;
    return t->t.residuals[static_cast<std::size_t>(i) + 1];
}

double alh_trace_mismatch(const alh_trace *t, int i) {
    if (!t || i < 0 || i >= static_cast<int>(t->t.mismatches.size()))
        return kNan;
    return t->t.mismatches[static_cast<std::size_t>(i)];
}

int alh_trace_converged(const alh_trace *t) {
    return t && t->t.converged ? 1 : 0;
}

alh_status alh_convergence_rate(const alh_trace *t, double *out_k) {
    if (!t || !out_k)
        return ALH_INVALID_ARGUMENT;
    double k = 0.0;
    if (alh::Status st = alh::convergence_rate(t->t, k); st != alh::Status::Ok)
        return to_c(st);
    *out_k = k;
    return ALH_OK;
}

double alh_result_phi(const alh_trace *t) { return t ? t->t.phi_M : kNan; }

void alh_result_point(const alh_trace *t, double *x, double *y) {
    if (x)
        *x = t ? t->t.point.x : kNan;
    if (y)
        *y = t ? t->t.point.y : kNan;
}

double alh_result_incidence(const alh_trace *t) {
    return t ? t->t.incidence : kNan;
}

int alh_result_iterations(const alh_trace *t) {
    return t ? t->t.iterations() : 0;
}

double alh_result_final_mismatch(const alh_trace *t) {
    return t ? t->t.final_mismatch : kNan;
}

/* ------------------------------------------------------------------ */
/* first-order approximation                                           */

alh_status alh_first_order_terms(const alh_scene *s, double phi0,
                                 double *out_e_a, double *out_e_b,
                                 double *out_r_m0b, double *out_gamma) {
    if (!s)
        return ALH_INVALID_ARGUMENT;
    const double sign = frame_sign(s);
    alh::FirstOrderTerms terms;
    if (alh::Status st = alh::first_order_terms(s->s, sign * phi0, terms);
        st != alh::Status::Ok)
        return to_c(st);
    if (out_e_a)
        *out_e_a = terms.e_a;
    if (out_e_b)
        *out_e_b = terms.e_b;
    if (out_r_m0b)
        *out_r_m0b = terms.r_m0b;
    if (out_gamma)
        *out_gamma = terms.gamma;
    return ALH_OK;
}

alh_status alh_area_form_printed(const alh_scene *s, double phi0, double *out) {
    if (!s || !out)
        return ALH_INVALID_ARGUMENT;
    double v = 0.0;
    if (alh::Status st =
            alh::area_form_printed(s->s, frame_sign(s) * phi0, v);
        st != alh::Status::Ok)
        return to_c(st);
    *out = v;
    return ALH_OK;
}

alh_status alh_area_form_alt(const alh_scene *s, double phi0, double *out) {
    if (!s || !out)
        return ALH_INVALID_ARGUMENT;
    double v = 0.0;
    if (alh::Status st = alh::area_form_alt(s->s, frame_sign(s) * phi0, v);
        st != alh::Status::Ok)
        return to_c(st);
    *out = v;
    return ALH_OK;
}

alh_status alh_first_order_phi(const alh_scene *s, double phi0, double *out) {
    if (!s || !out)
        return ALH_INVALID_ARGUMENT;
    const double sign = frame_sign(s);
    double v = 0.0;
    if (alh::Status st = alh::first_order_phi(s->s, sign * phi0, v);
        st != alh::Status::Ok)
        return to_c(st);
    *out = sign * v;
    return ALH_OK;
}

alh_status alh_relative_error(const alh_scene *s, double phi0, double *out_err,
                              int *out_absolute_mode) {
    if (!s || !out_err)
        return ALH_INVALID_ARGUMENT;
    double err = 0.0;
    bool absolute = false;
    if (alh::Status st =
            alh::relative_error(s->s, frame_sign(s) * phi0, err, absolute);
        st != alh::Status::Ok)
        return to_c(st);
    *out_err = err;
    if (out_absolute_mode)
        *out_absolute_mode = absolute ? 1 : 0;
    return ALH_OK;
}

/* ------------------------------------------------------------------ */
/* oracle                                                              */

alh_status alh_brute_force_specular(const alh_scene *s, long grid_n,
                                    double *out_phi, double *out_lo,
                                    double *out_hi, long *out_evaluations) {
    if (!s || !out_phi)
        return ALH_INVALID_ARGUMENT;
    if (grid_n > 100000000L)
        return ALH_INVALID_ARGUMENT;
    alh::OracleResult res;
    if (alh::Status st =
            alh::brute_force_specular(s->s, static_cast<int>(grid_n), res);
        st != alh::Status::Ok)
        return to_c(st);
    const bool sw = s->s.swapped;
    *out_phi = sw ? -res.phi_star : res.phi_star;
    if (out_lo)
        *out_lo = sw ? -res.hi : res.lo;
    if (out_hi)
        *out_hi = sw ? -res.lo : res.hi;
    if (out_evaluations)
        *out_evaluations = static_cast<long>(res.evaluations);
    return ALH_OK;
}

} // extern "C"
