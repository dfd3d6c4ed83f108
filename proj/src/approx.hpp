#pragma once

#include "scene.hpp"

namespace alh {

// Triangle areas and chord length entering the first-order angle estimate,
// all evaluated at the starting angle phi0 (gamma = theta + phi0).
struct FirstOrderTerms {
    double e_a = 0.0;   // area of (O, M0, F), F on the r-circle along OB
    double e_b = 0.0;   // area of (O, M0, B)
    double r_m0b = 0.0; // |M0 - B|
    double gamma = 0.0;
};

Status first_order_terms(const Scene &s, double phi0, FirstOrderTerms &out);

// One-step angle estimate assembled from the area terms, in the widely
// circulated arctan form with E_A = r^2 sin(gamma)/2. Kept verbatim for
// comparison: it does NOT agree with the construction it is meant to
// summarize (see area_form_alt), and is never used by the solver.
Status area_form_printed(const Scene &s, double phi0, double &out);

// Same arctan assembly with E_A = r*r_A*sin(gamma)/2 instead; this variant
// does reproduce the construction — it equals exactly twice
// closed_form_iterate, i.e. theta - phi_{A'}.
Status area_form_alt(const Scene &s, double phi0, double &out);

// The first-order approximation itself: one exact iteration of the map.
Status first_order_phi(const Scene &s, double phi0, double &out);

// |first_order_phi - phi_M| / |phi_M|, phi_M from the fixed-point solver.
// Degenerate scenes with phi_M ~ 0 switch to the absolute error and set
// the flag.
Status relative_error(const Scene &s, double phi0, double &out,
                      bool &absolute_mode);

} // namespace alh
