#include "iterate.hpp"

#include <algorithm>
#include <cmath>

namespace alh {

Status line_circle_intersection(Vec2 m0, Vec2 b, double radius, Vec2 &out) {
    const double rm = std::hypot(m0.x, m0.y);
    const double rb = std::hypot(b.x, b.y);
    // the chord has to re-enter the circle: start strictly inside, end on or
    // outside (tiny slack on the outside test so points constructed on the
    // circle do not round their way into a rejection)
    if (!(rm < radius) || !(rb >= radius * (1.0 - 1e-12)))
        return Status::PreconditionViolated;

    const double dx = b.x - m0.x;
    const double dy = b.y - m0.y;
    const double dd = dx * dx + dy * dy;
    if (dd == 0.0)
        return Status::PreconditionViolated;

    // |m0 + s d|^2 = radius^2; with m0 inside the root product is negative,
    // so exactly one s > 0 and it lies in (0, 1] up to roundoff
    const double bq = 2.0 * (m0.x * dx + m0.y * dy);
    const double cq = m0.x * m0.x + m0.y * m0.y - radius * radius;
    double disc = bq * bq - 4.0 * dd * cq;
    if (disc < 0.0)
        disc = 0.0;
    const double sq = std::sqrt(disc);
    const double qq = -0.5 * (bq + std::copysign(sq, bq));
    double s1 = qq / dd;
    double s2 = (qq != 0.0) ? cq / qq : 0.0;
    if (s1 > s2)
        std::swap(s1, s2);
    double s = s2 > 0.0 ? s2 : s1;
    if (s <= 0.0 || s > 1.0 + 1e-9)
        return Status::PreconditionViolated;
    out = {m0.x + s * dx, m0.y + s * dy};
    return Status::Ok;
}

Status iterate_once(const Scene &s, double phi, double &out) {
    if (!std::isfinite(phi))
        return Status::InvalidArgument;
    const Vec2 m0 = to_cartesian(s.r, phi);
    const Vec2 b = focal_b(s);
    Vec2 ap{};
    if (Status st = line_circle_intersection(m0, b, s.ra, ap); st != Status::Ok)
        return st;
    const double phi_ap = -std::atan2(ap.y, ap.x);
    out = 0.5 * (s.theta - phi_ap);
    return Status::Ok;
}

Status closed_form_iterate(const Scene &s, double phi, double &out) {
    if (!std::isfinite(phi))
        return Status::InvalidArgument;
    const double gamma = s.theta + phi;
    const double d2 =
        s.r * s.r + s.rb * s.rb - 2.0 * s.r * s.rb * std::cos(gamma);
    if (d2 <= 0.0)
        return Status::DenominatorVanishes;
    const double d = std::sqrt(d2);
    const double sg = std::sin(gamma);
    // both arguments live in [0,1] on the valid domain; clamp is defensive
    const double ua = std::clamp(s.r * s.rb * sg / (s.ra * d), -1.0, 1.0);
    const double ub = std::clamp(s.r * sg / d, -1.0, 1.0);
    out = 0.5 * (std::asin(ua) - std::asin(ub));
    return Status::Ok;
}

Status solve_fixed_point(const Scene &s, double phi0, double tol, int max_iter,
                         Trace &out) {
    if (!std::isfinite(tol) || tol <= 0.0)
        return Status::InvalidTolerance;
    if (max_iter < 1)
        return Status::InvalidArgument;
    const double bound = phi_upper_bound(s);
    if (!std::isfinite(phi0) || phi0 < -1e-12 || phi0 > bound + 1e-9)
        return Status::InvalidArgument;

    out = Trace{};
    out.phis.push_back(phi0);
    out.residuals.push_back(0.0);
    out.mismatches.push_back(specular_mismatch(s, phi0));

    double phi = phi0;
    Status result = Status::MaxIterExceeded;
    for (int k = 0; k < max_iter; ++k) {
        double next = 0.0;
        if (Status st = iterate_once(s, phi, next); st != Status::Ok) {
            result = st;
            break;
        }
        const double step = std::fabs(next - phi);
        phi = next;
        out.phis.push_back(phi);
        out.residuals.push_back(step);
        out.mismatches.push_back(specular_mismatch(s, phi));
        if (step <= tol) {
            out.converged = true;
            result = Status::Ok;
            break;
        }
    }

    out.phi_M = phi;
    out.point = to_cartesian(s.r, phi);
    out.incidence = incidence_angle(s, phi);
    out.final_mismatch = out.mismatches.back();
    if (result == Status::Ok && std::fabs(out.final_mismatch) > 10.0 * tol)
        return Status::NotARoot; // converged, but not onto the specular point
    return result;
}

Status convergence_rate(const Trace &t, double &out) {
    const int n = static_cast<int>(t.phis.size());
    if (n < 2)
        return Status::InsufficientTrace;
    const double last = t.phis.back();
    // ratios taken only where both errors clear the terminal rounding noise
    const double floor = std::max(1e-12, 50.0 * t.residuals.back());

    double log_sum = 0.0;
    int count = 0;
    for (int k = 0; k + 1 < n; ++k) {
        const double e0 = std::fabs(t.phis[k] - last);
        const double e1 = std::fabs(t.phis[k + 1] - last);
        if (e0 >= floor && e1 >= floor) {
            log_sum += std::log(e1 / e0);
            ++count;
        }
    }
    if (count == 0) {
        if (t.converged) {
            out = 0.0; // collapsed onto the fixed point with no measurable ratio
            return Status::Ok;
        }
        return Status::InsufficientTrace;
    }
    if (!t.converged && n < 4)
        return Status::InsufficientTrace;
    out = std::exp(log_sum / count);
    return Status::Ok;
}

} // namespace alh
