#pragma once

#include "scene.hpp"

#include <vector>

namespace alh {

// One step of the ruler-and-compass construction: drop the chord from the
// current surface point toward B, cut the circle of radius `radius` with it,
// and bisect. The intersection helper is exposed separately because it is a
// reusable primitive (and the place where the construction can fail).
Status line_circle_intersection(Vec2 m0, Vec2 b, double radius, Vec2 &out);

Status iterate_once(const Scene &s, double phi, double &out);

// Same map written as a single closed-form expression; agrees with the
// geometric route to roundoff and is cheaper to evaluate on dense grids.
Status closed_form_iterate(const Scene &s, double phi, double &out);

struct Trace {
    std::vector<double> phis;       // phi_0 .. phi_n
    std::vector<double> residuals;  // |phi_k - phi_{k-1}|, aligned with phis (0 first)
    std::vector<double> mismatches; // specular mismatch at each phi_k
    bool converged = false;
    double phi_M = 0.0;
    Vec2 point{};
    double incidence = 0.0;
    double final_mismatch = 0.0;

    int iterations() const { return static_cast<int>(phis.size()) - 1; }
};

// Iterates the map from phi0 until successive angles differ by less than
// tol or max_iter steps are taken. On MaxIterExceeded the partial trace is
// still filled in so the caller can inspect how far it got.
Status solve_fixed_point(const Scene &s, double phi0, double tol, int max_iter,
                         Trace &out);

// Geometric-mean contraction ratio over the recorded trace; needs at least
// four entries, and skips ratios drowned by terminal rounding noise.
Status convergence_rate(const Trace &t, double &out);

} // namespace alh
