#include "oracle.hpp"

#include <cmath>

namespace alh {

Status brute_force_specular(const Scene &s, int grid_n, OracleResult &out) {
    if (grid_n < 1000)
        return Status::InvalidArgument;

    out = OracleResult{};
    const double bound = phi_upper_bound(s);
    const double m0 = specular_mismatch(s, 0.0);
    out.evaluations = 1;
    if (bound == 0.0 || m0 == 0.0) {
        out.phi_star = out.lo = out.hi = 0.0;
        return Status::Ok;
    }

    // The mismatch starts positive at the bisector and has its first zero at
    // the specular point. A plain sweep can miss it: for nearly collinear
    // scenes both that zero and the spurious one beyond it sit inside the
    // first grid cell, so the whole sweep looks one-signed. In that case the
    // first cell becomes the new sweep interval and the scan repeats.
    double lo = 0.0, hi = 0.0;
    double m_lo = m0, m_hi = 0.0;
    bool bracketed = false;
    double span = bound;
    for (int level = 0; level < 80 && !bracketed; ++level) {
        double prev_phi = 0.0;
        double prev_m = m0;
        for (int i = 1; i <= grid_n; ++i) {
            const double phi = span * static_cast<double>(i) /
                               static_cast<double>(grid_n);
            const double m = specular_mismatch(s, phi);
            ++out.evaluations;
            if (prev_m * m <= 0.0) {
                lo = prev_phi;
                hi = phi;
                m_lo = prev_m;
                m_hi = m;
                bracketed = true;
                break;
            }
            prev_phi = phi;
            prev_m = m;
        }
        if (!bracketed) {
            span /= static_cast<double>(grid_n);
            if (span == 0.0)
                break;
        }
    }
    if (!bracketed)
        return Status::NoSignChange;

    while (hi - lo > 1e-15) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break; // interval no longer splittable in doubles
        const double m = specular_mismatch(s, mid);
        ++out.evaluations;
        if (m_lo * m > 0.0) {
            lo = mid;
            m_lo = m;
        } else {
            hi = mid;
            m_hi = m;
        }
    }

    out.lo = lo;
    out.hi = hi;
    out.phi_star = (std::fabs(m_lo) <= std::fabs(m_hi)) ? lo : hi;
    return Status::Ok;
}

} // namespace alh
