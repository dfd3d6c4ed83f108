#include "approx.hpp"

#include "iterate.hpp"

#include <cmath>

namespace alh {

Status first_order_terms(const Scene &s, double phi0, FirstOrderTerms &out) {
    if (!std::isfinite(phi0))
        return Status::InvalidArgument;
    const double gamma = s.theta + phi0;
    out.gamma = gamma;
    const double sg = std::sin(gamma);
    out.e_b = 0.5 * s.r * s.rb * sg;
    out.e_a = 0.5 * s.r * s.r * sg;
    out.r_m0b = std::sqrt(
        s.r * s.r + s.rb * s.rb - 2.0 * s.r * s.rb * std::cos(gamma));
    return Status::Ok;
}

namespace {

// atan[(2 E_B sqrt(ra^2 d^2 - 4 E_B^2) - 2 E_A sqrt(ra^2 d^2 - 4 E_A^2))
//      / (ra^2 d^2 - 4 E_B^2 - 4 E_A^2)] with d = r_m0b
Status arctan_assembly(double ra, double d, double ea, double eb, double &out) {
    const double s2 = ra * ra * d * d;
    const double den = s2 - 4.0 * eb * eb - 4.0 * ea * ea;
    if (den == 0.0)
        return Status::DenominatorVanishes;
    const double ub = std::max(0.0, s2 - 4.0 * eb * eb);
    const double ua = std::max(0.0, s2 - 4.0 * ea * ea);
    const double num = 2.0 * eb * std::sqrt(ub) - 2.0 * ea * std::sqrt(ua);
    out = std::atan(num / den);
    return Status::Ok;
}

} // namespace

Status area_form_printed(const Scene &s, double phi0, double &out) {
    FirstOrderTerms t;
    if (Status st = first_order_terms(s, phi0, t); st != Status::Ok)
        return st;
    return arctan_assembly(s.ra, t.r_m0b, t.e_a, t.e_b, out);
}

Status area_form_alt(const Scene &s, double phi0, double &out) {
    FirstOrderTerms t;
    if (Status st = first_order_terms(s, phi0, t); st != Status::Ok)
        return st;
    const double e_a_alt = 0.5 * s.r * s.ra * std::sin(t.gamma);
    return arctan_assembly(s.ra, t.r_m0b, e_a_alt, t.e_b, out);
}

Status first_order_phi(const Scene &s, double phi0, double &out) {
    return closed_form_iterate(s, phi0, out);
}

Status relative_error(const Scene &s, double phi0, double &out,
                      bool &absolute_mode) {
    double fo = 0.0;
    if (Status st = first_order_phi(s, phi0, fo); st != Status::Ok)
        return st;
    Trace tr;
    if (Status st = solve_fixed_point(s, 0.0, 1e-12, 64, tr); st != Status::Ok)
        return st;
    const double phi_m = tr.phi_M;
    if (std::fabs(phi_m) < 1e-12) {
        absolute_mode = true;
        out = std::fabs(fo);
    } else {
        absolute_mode = false;
        out = std::fabs(fo - phi_m) / std::fabs(phi_m);
    }
    return Status::Ok;
}

} // namespace alh
