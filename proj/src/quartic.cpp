#include "quartic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

namespace alh {

QuarticCoefficients quartic_coefficients(const Scene &s) {
    const double p = (s.r / s.ra - s.r / s.rb) * std::tan(s.theta);
    const double q = s.r / s.ra + s.r / s.rb;
    const double c = std::cos(s.theta);
    const double sec2 = 1.0 / (c * c);
    QuarticCoefficients out;
    out.p = p;
    out.q = q;
    out.c4 = q * q;
    out.c3 = 2.0 * p * q;
    out.c2 = p * p + q * q - 4.0 * sec2;
    out.c1 = out.c3; // identical by construction, not merely equal
    out.c0 = p * p;
    return out;
}

namespace {

double eval(const double c[5], double t) {
    return (((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4];
}

double eval_deriv(const double c[5], double t) {
    return ((4.0 * c[0] * t + 3.0 * c[1]) * t + 2.0 * c[2]) * t + c[3];
}

// Newton polish keeping the best-residual iterate seen (near-double roots
// can make a late step worse than an early one).
double polish(const double c[5], double t) {
    double best = t;
    double best_v = std::fabs(eval(c, t));
    for (int i = 0; i < 8; ++i) {
        const double d = eval_deriv(c, t);
        if (d == 0.0)
            break;
        t -= eval(c, t) / d;
        const double v = std::fabs(eval(c, t));
        if (v < best_v) {
            best = t;
            best_v = v;
        } else {
            break;
        }
    }
    return best;
}

// Real roots of t^2 + b t + c via the stable (copysign) split; empty when
// the pair is complex.
std::optional<std::pair<double, double>> quad(double b, double c) {
    const double disc = b * b - 4.0 * c;
    if (disc < 0.0)
        return std::nullopt;
    const double s = std::sqrt(disc);
    const double qq = -0.5 * (b + std::copysign(s, b));
    if (qq == 0.0) {
        if (b == 0.0)
            return std::pair{0.0, 0.0};
        return std::pair{0.0, -b};
    }
    return std::pair{qq, c / qq};
}

// Largest real root of z^3 + a2 z^2 + a1 z + a0. Near a double root the
// discriminant sign is rounding noise and either closed-form branch alone
// can return the wrong root, so collect candidates from both branches,
// Newton-polish on the cubic, and keep the largest genuine one.
double cubic_largest_real(double a2, double a1, double a0) {
    const double p = a1 - a2 * a2 / 3.0;
    const double q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
    const double off = -a2 / 3.0;
    const double disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);

    double cand[3];
    int n = 0;
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        const double u = std::cbrt(-q / 2.0 + s);
        const double v = std::cbrt(-q / 2.0 - s);
        cand[n++] = u + v + off;
    }
    if (p < 0.0) {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        cand[n++] = m * std::cos(std::acos(arg) / 3.0) + off;
    }
    if (n == 0)
        cand[n++] = off;

    bool have_best = false;
    double best = 0.0;
    double fallback = cand[0];
    for (int i = 0; i < n; ++i) {
        double z = cand[i];
        fallback = std::max(fallback, cand[i]);
        for (int it = 0; it < 12; ++it) {
            const double fz = ((z + a2) * z + a1) * z + a0;
            const double dz = (3.0 * z + 2.0 * a2) * z + a1;
            if (dz == 0.0)
                break;
            const double step = fz / dz;
            z -= step;
            if (std::fabs(step) <= 1e-16 * std::max(1.0, std::fabs(z)))
                break;
        }
        const double fz = ((z + a2) * z + a1) * z + a0;
        const double den = std::fabs(z) * std::fabs(z) * std::fabs(z) +
                           std::fabs(a2) * z * z + std::fabs(a1) * std::fabs(z) +
                           std::fabs(a0) + 1.0;
        if (std::fabs(fz) <= 1e-8 * den && (!have_best || z > best)) {
            best = z;
            have_best = true;
        }
    }
    return have_best ? best : fallback;
}

// Simultaneous iteration on the monic polynomial; last-resort fallback.
// Steps are capped: with widely split root magnitudes the uncapped
// iteration can shoot a point to infinity and poison every root with NaN.
std::vector<std::complex<double>> durand_kerner(const double m[5]) {
    const double radius =
        1.0 + std::max({std::fabs(m[1]), std::fabs(m[2]), std::fabs(m[3]),
                        std::fabs(m[4])});
    std::vector<std::complex<double>> z(4);
    const std::complex<double> seed(0.4, 0.9);
    std::complex<double> w = seed;
    for (int k = 0; k < 4; ++k) {
        z[k] = w * radius;
        w *= seed;
    }
    const double cap = 2.0 * radius;
    for (int iter = 0; iter < 500; ++iter) {
        double delta = 0.0;
        auto next = z;
        for (int i = 0; i < 4; ++i) {
            std::complex<double> num(1.0, 0.0);
            num = num * z[i] + m[1];
            num = num * z[i] + m[2];
            num = num * z[i] + m[3];
            num = num * z[i] + m[4];
            std::complex<double> den(1.0, 0.0);
            for (int j = 0; j < 4; ++j)
                if (j != i)
                    den *= z[i] - z[j];
            if (den == std::complex<double>(0.0, 0.0))
                continue;
            std::complex<double> step = num / den;
            const double mag = std::abs(step);
            if (mag > cap)
                step *= cap / mag;
            next[i] = z[i] - step;
            delta = std::max(delta, std::abs(step));
        }
        z = std::move(next);
        double scale = 1.0;
        for (const auto &x : z)
            scale = std::max(scale, std::abs(x));
        if (delta < 1e-14 * scale)
            break;
    }
    return z;
}

bool residuals_ok(const double c[5], const std::array<double, 4> &ts, double tol) {
    for (double t : ts)
        if (!std::isfinite(t) || scaled_residual(c, t) > tol)
            return false;
    return true;
}

} // namespace

double scaled_residual(const double c[5], double t) {
    const double m = std::max(1.0, std::fabs(t));
    return std::fabs(eval(c, t)) / (std::fabs(c[0]) * m * m * m * m);
}

Status solve_quartic(const double c[5], std::array<double, 4> &out) {
    for (int i = 0; i < 5; ++i)
        if (!std::isfinite(c[i]))
            return Status::InvalidArgument;
    if (c[0] == 0.0)
        return Status::DegenerateLeadingCoefficient;

    const double a = c[1] / c[0];
    const double b = c[2] / c[0];
    const double cc = c[3] / c[0];
    const double d = c[4] / c[0];

    std::vector<double> roots;
    roots.reserve(4);
    bool closed_form_ok = true;

    if (d == 0.0) {
        // t divides the quartic
        roots.push_back(0.0);
        if (cc == 0.0) {
            // t^2 (t^2 + a t + b)
            roots.push_back(0.0);
            if (auto r2 = quad(a, b)) {
                roots.push_back(r2->first);
                roots.push_back(r2->second);
            } else {
                closed_form_ok = false;
            }
        } else {
            // t (t^3 + a t^2 + b t + cc)
            const double z = cubic_largest_real(a, b, cc);
            if (auto r2 = quad(a + z, z != 0.0 ? -cc / z : b)) {
                roots.push_back(z);
                roots.push_back(r2->first);
                roots.push_back(r2->second);
            } else {
                closed_form_ok = false;
            }
        }
    } else {
        // depressed quartic y^4 + e y^2 + f y + g, t = y - a/4
        const double e = b - 3.0 * a * a / 8.0;
        const double f = cc + a * a * a / 8.0 - a * b / 2.0;
        const double g =
            d - 3.0 * a * a * a * a / 256.0 + a * a * b / 16.0 - a * cc / 4.0;

        std::vector<double> ys;
        if (f == 0.0) {
            // biquadratic in y^2
            if (auto y2 = quad(e, g)) {
                for (double v : {y2->first, y2->second}) {
                    if (v < 0.0) {
                        closed_form_ok = false;
                        continue;
                    }
                    const double sq = std::sqrt(v);
                    ys.push_back(sq);
                    ys.push_back(-sq);
                }
            } else {
                closed_form_ok = false;
            }
        } else {
            const double z = cubic_largest_real(2.0 * e, e * e - 4.0 * g, -f * f);
            if (z <= 0.0) {
                closed_form_ok = false;
            } else {
                const double alpha = std::sqrt(z);
                const double beta = 0.5 * (e + z - f / alpha);
                const double gamma = 0.5 * (e + z + f / alpha);
                if (auto q1 = quad(alpha, beta)) {
                    ys.push_back(q1->first);
                    ys.push_back(q1->second);
                } else {
                    closed_form_ok = false;
                }
                if (auto q2 = quad(-alpha, gamma)) {
                    ys.push_back(q2->first);
                    ys.push_back(q2->second);
                } else {
                    closed_form_ok = false;
                }
            }
        }
        for (double y : ys)
            roots.push_back(y - a / 4.0);
    }

    std::array<double, 4> res{};
    bool have4 = closed_form_ok && roots.size() == 4;
    if (have4) {
        for (int i = 0; i < 4; ++i)
            res[i] = polish(c, roots[i]);
        std::sort(res.begin(), res.end());

        // Tiny-root pairs come out of the Ferrari split with catastrophic
        // cancellation (and can even collapse onto one genuine root, which
        // residual checks cannot see). When the magnitude split is extreme,
        // rebuild the small pair from the two well-conditioned large roots
        // via the sum/product identities.
        std::array<double, 4> by_mag = res;
        std::sort(by_mag.begin(), by_mag.end(),
                  [](double x, double y) { return std::fabs(x) < std::fabs(y); });
        const double small_max = std::max(std::fabs(by_mag[0]), std::fabs(by_mag[1]));
        const double big_min = std::min(std::fabs(by_mag[2]), std::fabs(by_mag[3]));
        if (small_max > 0.0 && small_max * 1e6 < big_min && by_mag[2] * by_mag[3] != 0.0 &&
            scaled_residual(c, by_mag[2]) <= 1e-11 &&
            scaled_residual(c, by_mag[3]) <= 1e-11) {
            const double sum_small = -c[1] / c[0] - (by_mag[2] + by_mag[3]);
            const double prod_small = (c[4] / c[0]) / (by_mag[2] * by_mag[3]);
            if (auto rq = quad(-sum_small, prod_small)) {
                res = {by_mag[2], by_mag[3], polish(c, rq->first),
                       polish(c, rq->second)};
                std::sort(res.begin(), res.end());
            }
        }
    }

    if (have4 && residuals_ok(c, res, 1e-11)) {
        out = res;
        return Status::Ok;
    }

    // fallback: simultaneous iteration, then polish
    const double monic[5] = {1.0, a, b, cc, d};
    const auto zs = durand_kerner(monic);
    double scale = 1.0;
    for (const auto &z : zs)
        scale = std::max(scale, std::abs(z));
    for (const auto &z : zs)
        if (std::fabs(z.imag()) > 1e-8 * scale)
            return Status::ComplexRootsDetected;
    for (int i = 0; i < 4; ++i)
        res[i] = polish(c, zs[i].real());
    std::sort(res.begin(), res.end());
    if (!residuals_ok(c, res, 1e-9))
        return Status::ComplexRootsDetected; // numerical failure, surfaced
    out = res;
    return Status::Ok;
}

const char *kind_name(ReflectionKind k) {
    switch (k) {
    case ReflectionKind::External: return "External";
    case ReflectionKind::ExternalInternal: return "ExternalInternal";
    case ReflectionKind::Internal: return "Internal";
    case ReflectionKind::InternalExternal: return "InternalExternal";
    }
    return "Unknown";
}

namespace {

constexpr double kClassifyTol = 1e-5;

double wrap_abs(double x) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double y = std::fmod(x, two_pi);
    if (y > std::numbers::pi)
        y -= two_pi;
    if (y < -std::numbers::pi)
        y += two_pi;
    return std::fabs(y);
}

// Classification at an explicit configuration angle (phi or its antipode).
void classify_at(const Scene &s, double cfg, ReflectionKind &kind,
                 double &angle_sum) {
    const double da = s.ra * std::cos(s.theta - cfg) - s.r;
    const double db = s.rb * std::cos(s.theta + cfg) - s.r;
    const bool ext_a = da > 0.0;
    const bool ext_b = db > 0.0;
    if (ext_a && ext_b)
        kind = ReflectionKind::External;
    else if (ext_a)
        kind = ReflectionKind::ExternalInternal;
    else if (ext_b)
        kind = ReflectionKind::InternalExternal;
    else
        kind = ReflectionKind::Internal;

    const double raw_a = wrap_abs(s.theta - cfg);
    const double raw_b = wrap_abs(-s.theta - cfg);
    const double at_a = ext_a ? raw_a : std::numbers::pi - raw_a;
    const double at_b = ext_b ? raw_b : std::numbers::pi - raw_b;
    // The two central angles can straddle the reflex side of either ray;
    // fold their sum back into [0, pi] so pure kinds read 2*theta and the
    // mixed kinds pi - 2*theta regardless of which side the root sits on.
    const double sum = at_a + at_b;
    angle_sum = std::min(sum, 2.0 * std::numbers::pi - sum);
}

// The quartic is stated in tan(phi), which cannot tell phi from its
// antipode; the unsquared specular relation g(phi) = p + q tan(phi)
// - 2 sin(phi)/cos(theta) can. Pick whichever configuration point
// satisfies it better.
double configuration_angle(const QuarticCoefficients &k, double theta, double phi) {
    const double t = std::tan(phi);
    const double sweep = 2.0 * std::sin(phi) / std::cos(theta);
    const double g_here = k.p + k.q * t - sweep;
    const double g_anti = k.p + k.q * t + sweep;
    return std::fabs(g_here) <= std::fabs(g_anti) ? phi : phi + std::numbers::pi;
}

} // namespace

Status classify_root(const Scene &s, double phi, ReflectionKind &kind,
                     double &angle_sum) {
    const QuarticCoefficients k = quartic_coefficients(s);
    const double c[5] = {k.c4, k.c3, k.c2, k.c1, k.c0};
    if (!std::isfinite(phi) || scaled_residual(c, std::tan(phi)) > kClassifyTol)
        return Status::NotARoot;
    classify_at(s, configuration_angle(k, s.theta, phi), kind, angle_sum);
    return Status::Ok;
}

Status root_table(const Scene &s, std::array<RootEntry, 4> &out, int &physical_idx) {
    const QuarticCoefficients k = quartic_coefficients(s);
    const double c[5] = {k.c4, k.c3, k.c2, k.c1, k.c0};
    std::array<double, 4> ts{};
    if (Status st = solve_quartic(c, ts); st != Status::Ok)
        return st;

    const double bound = phi_upper_bound(s);
    constexpr double slack = 1e-9;
    int zeros_seen = 0;
    physical_idx = -1;
    int physical_count = 0;

    for (int i = 0; i < 4; ++i) {
        RootEntry &e = out[i];
        e.t = ts[i];
        e.phi = std::atan(ts[i]);
        e.residual = scaled_residual(c, ts[i]);
        double cfg = configuration_angle(k, s.theta, e.phi);
        if (e.t == 0.0) {
            // the double root at the bisector stands for both configuration
            // points at once: one reflection on the near side, one on the far
            cfg = (zeros_seen++ == 0) ? 0.0 : std::numbers::pi;
        }
        classify_at(s, cfg, e.kind, e.angle_sum);
        e.physical = e.kind == ReflectionKind::External &&
                     e.phi >= -slack && e.phi <= bound + slack;
        if (e.physical) {
            if (physical_idx < 0)
                physical_idx = i;
            ++physical_count;
        }
    }
    if (physical_count == 0)
        return Status::NoPhysicalRoot;
    if (physical_count > 1)
        return Status::MultiplePhysicalRoots;
    return Status::Ok;
}

Status specular_root_quartic(const Scene &s, double &out_phi) {
    std::array<RootEntry, 4> table;
    int idx = -1;
    if (Status st = root_table(s, table, idx); st != Status::Ok)
        return st;
    const double phi = table[idx].phi;
    if (std::fabs(specular_mismatch(s, phi)) > 1e-10)
        return Status::NoPhysicalRoot; // internal inconsistency, surfaced
    out_phi = phi;
    return Status::Ok;
}

} // namespace alh
