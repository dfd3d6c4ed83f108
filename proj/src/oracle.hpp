#pragma once

#include "scene.hpp"

#include <cstdint>

namespace alh {

struct OracleResult {
    double phi_star = 0.0;
    double lo = 0.0; // final bracket, lo <= phi_star <= hi
    double hi = 0.0;
    std::int64_t evaluations = 0;
};

// Brute-force reference: scan [0, phi_upper_bound] on a uniform grid for the
// first sign change of the specular mismatch, re-scanning the first cell at
// finer resolution if the whole sweep stays one-signed, then bisect the
// bracket down to 1e-15. Slow on purpose; exists to check the clever routes.
Status brute_force_specular(const Scene &s, int grid_n, OracleResult &out);

} // namespace alh
