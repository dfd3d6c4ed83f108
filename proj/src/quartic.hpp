#pragma once

#include "scene.hpp"

#include <array>

namespace alh {

// Monomial form of the specular condition in t = tan phi:
//   c4 t^4 + c3 t^3 + c2 t^2 + c1 t + c0 = 0
// with p = (r/ra - r/rb) tan(theta), q = r/ra + r/rb,
//   c4 = q^2, c3 = c1 = 2pq, c2 = p^2 + q^2 - 4 sec^2(theta), c0 = p^2.
struct QuarticCoefficients {
    double c4, c3, c2, c1, c0;
    double p, q;
};

QuarticCoefficients quartic_coefficients(const Scene &s);

// |P(t)| / (|c4| * max(1, |t|)^4)
double scaled_residual(const double c[5], double t);

// All four real roots, ascending. ComplexRootsDetected when any root has
// a non-negligible imaginary part (also used for outright numerical
// failure: surfaced, never dropped). DegenerateLeadingCoefficient when
// c[0] == 0.
Status solve_quartic(const double c[5], std::array<double, 4> &out);

enum class ReflectionKind {
    External = 0,
    ExternalInternal = 1,
    Internal = 2,
    InternalExternal = 3,
};

const char *kind_name(ReflectionKind k);

// Classify a root of the quartic by which side of the surface each focal
// ray reflects from, at the configuration point the root actually
// describes (phi or its antipode — tan is blind to the difference, the
// unsquared specular relation is not). angle_sum returns the cross-check
// sum of the two angles at the center: 2*theta for the pure kinds,
// pi - 2*theta for the mixed ones.
Status classify_root(const Scene &s, double phi, ReflectionKind &kind,
                     double &angle_sum);

struct RootEntry {
    double t = 0.0;
    double phi = 0.0;
    double residual = 0.0;
    double angle_sum = 0.0;
    ReflectionKind kind = ReflectionKind::External;
    bool physical = false;
};

// Classified table sorted by phi ascending; physical_idx points to the
// unique External root inside [0, phi_upper_bound].
Status root_table(const Scene &s, std::array<RootEntry, 4> &out, int &physical_idx);

// The specular phi by the quartic route alone.
Status specular_root_quartic(const Scene &s, double &out_phi);

} // namespace alh
