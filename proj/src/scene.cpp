#include "scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace alh {

const char *status_name(Status s) {
    switch (s) {
    case Status::Ok: return "Ok";
    case Status::NonPositiveRadius: return "NonPositiveRadius";
    case Status::FocalInsideSphere: return "FocalInsideSphere";
    case Status::ThetaOutOfRange: return "ThetaOutOfRange";
    case Status::NonFiniteInput: return "NonFiniteInput";
    case Status::InvalidArgument: return "InvalidArgument";
    case Status::InvalidTolerance: return "InvalidTolerance";
    case Status::MaxIterExceeded: return "MaxIterExceeded";
    case Status::InsufficientTrace: return "InsufficientTrace";
    case Status::ComplexRootsDetected: return "ComplexRootsDetected";
    case Status::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case Status::NotARoot: return "NotARoot";
    case Status::NoPhysicalRoot: return "NoPhysicalRoot";
    case Status::MultiplePhysicalRoots: return "MultiplePhysicalRoots";
    case Status::PreconditionViolated: return "PreconditionViolated";
    case Status::DenominatorVanishes: return "DenominatorVanishes";
    case Status::NoSignChange: return "NoSignChange";
    }
    return "UnknownStatus";
}

namespace {

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

} // namespace

double theta2_max(double r, double ra, double rb) {
    const double tangent = std::sqrt((ra * ra - r * r) * (rb * rb - r * r));
    return std::acos(clamp_unit((r * r - tangent) / (ra * rb)));
}

Status make_scene(double r, double ra, double rb, double angle2, Scene &out) {
    if (!std::isfinite(r) || !std::isfinite(ra) || !std::isfinite(rb) ||
        !std::isfinite(angle2))
        return Status::NonFiniteInput;
    if (r <= 0.0)
        return Status::NonPositiveRadius;

    bool swapped = false;
    if (ra > rb) {
        std::swap(ra, rb);
        swapped = true;
    }
    if (ra <= r || rb <= r)
        return Status::FocalInsideSphere;

    const double bound = theta2_max(r, ra, rb);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (angle2 < 0.0 || angle2 > bound * (1.0 + 4.0 * eps) + 4.0 * eps)
        return Status::ThetaOutOfRange;

    out.r = r;
    out.ra = ra;
    out.rb = rb;
    out.theta = 0.5 * angle2;
    out.swapped = swapped;
    out.grazing = angle2 >= bound - 1e-12;
    return Status::Ok;
}

double focal_separation(const Scene &s) {
    return std::sqrt(s.ra * s.ra + s.rb * s.rb -
                     2.0 * s.ra * s.rb * std::cos(2.0 * s.theta));
}

double phi_upper_bound(const Scene &s) {
    if (s.theta == 0.0)
        return 0.0; // collinear: the specular point sits on the bisector
    const double rab = focal_separation(s);
    if (rab == 0.0)
        return 0.0;
    const double at_a = std::acos(
        clamp_unit((rab * rab + s.ra * s.ra - s.rb * s.rb) / (2.0 * s.ra * rab)));
    const double half_pi = std::asin(1.0);
    return std::max(0.0, s.theta + at_a - half_pi);
}

Vec2 to_cartesian(double radius, double phi) {
    return {radius * std::cos(phi), radius * std::sin(phi)};
}

Vec2 focal_a(const Scene &s) { return to_cartesian(s.ra, s.theta); }
Vec2 focal_b(const Scene &s) { return to_cartesian(s.rb, -s.theta); }

double specular_mismatch(const Scene &s, double phi) {
    const double psi_a = std::atan2(std::fabs(s.ra * std::sin(s.theta - phi)),
                                    s.ra * std::cos(s.theta - phi) - s.r);
    const double psi_b = std::atan2(std::fabs(s.rb * std::sin(s.theta + phi)),
                                    s.rb * std::cos(s.theta + phi) - s.r);
    return psi_a - psi_b;
}

double incidence_angle(const Scene &s, double phi) {
    return std::atan2(std::fabs(s.ra * std::sin(s.theta - phi)),
                      s.ra * std::cos(s.theta - phi) - s.r);
}

} // namespace alh
