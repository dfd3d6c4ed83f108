#include "doctest.h"

#include "scene.hpp"

#include <cmath>
#include <random>

using namespace alh;

namespace {

// canonical instance used across the suite: r=1, ra=2, rb=3, 2*theta = pi/6
Scene pinned() {
    Scene s;
    REQUIRE(make_scene(1.0, 2.0, 3.0, 0.52359877559829893, s) == Status::Ok);
    return s;
}

double u01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1p-53;
}

} // namespace

TEST_SUITE_BEGIN("scene");

TEST_CASE("tangency bound pins") {
    CHECK(theta2_max(1.0, 2.0, 3.0) == doctest::Approx(2.2781569685373726).epsilon(1e-15));
    // ra = rb = sqrt(2): the tangent lengths are 1, the bound lands on pi/2
    CHECK(theta2_max(1.0, std::sqrt(2.0), std::sqrt(2.0)) ==
          doctest::Approx(1.5707963267948966).epsilon(1e-15));
    CHECK(theta2_max(1.0, 2.0, 2.0) == doctest::Approx(2.0943951023931957).epsilon(1e-15));
}

TEST_CASE("tangency bound shrinks as the sphere grows") {
    double prev = theta2_max(1.0, 5.0, 7.0);
    for (double r : {1.5, 2.0, 3.0, 4.0, 4.9}) {
        const double cur = theta2_max(r, 5.0, 7.0);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("scene validation") {
    Scene s;
    CHECK(make_scene(0.0, 2.0, 3.0, 0.5, s) == Status::NonPositiveRadius);
    CHECK(make_scene(-1.0, 2.0, 3.0, 0.5, s) == Status::NonPositiveRadius);
    CHECK(make_scene(1.0, 1.0, 3.0, 0.5, s) == Status::FocalInsideSphere);
    CHECK(make_scene(1.0, 2.0, 0.5, 0.5, s) == Status::FocalInsideSphere);
    CHECK(make_scene(1.0, 2.0, 3.0, -0.1, s) == Status::ThetaOutOfRange);
    CHECK(make_scene(1.0, 2.0, 3.0, 2.2782, s) == Status::ThetaOutOfRange);
    CHECK(make_scene(1.0, std::nan(""), 3.0, 0.5, s) == Status::NonFiniteInput);
    CHECK(make_scene(1.0, 2.0, 3.0, std::nan(""), s) == Status::NonFiniteInput);

    CHECK(make_scene(1.0, 2.0, 3.0, 0.0, s) == Status::Ok); // collinear is legal
    CHECK(s.theta == 0.0);

    // the exact tangency angle is legal but flagged
    CHECK(make_scene(1.0, 2.0, 3.0, theta2_max(1.0, 2.0, 3.0), s) == Status::Ok);
    CHECK(s.grazing);
    CHECK(make_scene(1.0, 2.0, 3.0, 2.0, s) == Status::Ok);
    CHECK_FALSE(s.grazing);
}

TEST_CASE("label normalization") {
    Scene s;
    REQUIRE(make_scene(1.0, 3.0, 2.0, 0.5, s) == Status::Ok);
    CHECK(s.swapped);
    CHECK(s.ra == 2.0);
    CHECK(s.rb == 3.0);

    // the normalized scene computes identically to the pre-sorted one
    Scene t;
    REQUIRE(make_scene(1.0, 2.0, 3.0, 0.5, t) == Status::Ok);
    CHECK_FALSE(t.swapped);
    for (double phi : {0.0, 0.01, 0.1, 0.3})
        CHECK(specular_mismatch(s, phi) == specular_mismatch(t, phi));
}

TEST_CASE("geometry pins") {
    const Scene s = pinned();
    CHECK(focal_separation(s) == doctest::Approx(1.6148359528406395).epsilon(1e-15));
    CHECK(phi_upper_bound(s) == doctest::Approx(0.64119965052402805).epsilon(1e-15));

    const Vec2 a = focal_a(s);
    const Vec2 b = focal_b(s);
    CHECK(a.x == doctest::Approx(1.9318516525781366).epsilon(1e-15));
    CHECK(a.y == doctest::Approx(0.51763809020504148).epsilon(1e-15));
    CHECK(b.x == doctest::Approx(2.897777478867205).epsilon(1e-15));
    CHECK(b.y == doctest::Approx(-0.77645713530756233).epsilon(1e-15));
}

TEST_CASE("polar round trip") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const double radius = 0.5 + 4.0 * u01(rng);
        const double phi = -1.5 + 3.0 * u01(rng);
        const Vec2 p = to_cartesian(radius, phi);
        CHECK(std::hypot(p.x, p.y) == doctest::Approx(radius).epsilon(1e-14));
        CHECK(std::atan2(p.y, p.x) == doctest::Approx(phi).epsilon(1e-13));
    }
}

TEST_CASE("mismatch pins") {
    const Scene s = pinned();
    CHECK(specular_mismatch(s, 0.0) ==
          doctest::Approx(0.11869056074970459).epsilon(1e-13));
    // at the rounded literature angle the mismatch is small but distinctly nonzero
    CHECK(specular_mismatch(s, 0.036118) ==
          doctest::Approx(4.4763237558764755e-06).epsilon(1e-6));
    // at the true specular angle it vanishes
    CHECK(std::fabs(specular_mismatch(s, 0.036119356509677313)) < 1e-13);
}

TEST_CASE("mismatch vanishes identically on the bisector for equal radii") {
    Scene s;
    REQUIRE(make_scene(1.0, 2.0, 2.0, 1.0, s) == Status::Ok);
    CHECK(specular_mismatch(s, 0.0) == 0.0);
    CHECK(incidence_angle(s, 0.0) > 0.0);
}

TEST_CASE("mismatch changes sign exactly once before the focal ray") {
    std::mt19937_64 rng(12);
    for (int scene_i = 0; scene_i < 1000; ++scene_i) {
        const double ra = 1.1 + 8.9 * u01(rng);
        const double rb = ra + (10.0 - ra) * u01(rng);
        const double frac = 0.05 + 0.9 * u01(rng);
        Scene s;
        REQUIRE(make_scene(1.0, ra, rb, frac * theta2_max(1.0, ra, rb), s) ==
                Status::Ok);
        const double top = std::fmin(s.theta, phi_upper_bound(s));
        if (top <= 0.0 || ra == rb)
            continue;
        int changes = 0;
        double prev = specular_mismatch(s, 0.0);
        for (int i = 1; i <= 64; ++i) {
            const double cur = specular_mismatch(s, top * i / 64.0);
            if (prev * cur <= 0.0)
                ++changes;
            prev = cur;
        }
        CHECK(changes == 1);
    }
}

TEST_CASE("status names") {
    CHECK(std::string(status_name(Status::Ok)) == "Ok");
    CHECK(std::string(status_name(Status::FocalInsideSphere)) == "FocalInsideSphere");
    CHECK(std::string(status_name(Status::ThetaOutOfRange)) == "ThetaOutOfRange");
    CHECK(std::string(status_name(Status::NoSignChange)) == "NoSignChange");
}

TEST_SUITE_END();
