#pragma once

namespace alh {

enum class Status {
    Ok = 0,
    NonPositiveRadius,
    FocalInsideSphere,
    ThetaOutOfRange,
    NonFiniteInput,
    InvalidArgument,
    InvalidTolerance,
    MaxIterExceeded,
    InsufficientTrace,
    ComplexRootsDetected,
    DegenerateLeadingCoefficient,
    NotARoot,
    NoPhysicalRoot,
    MultiplePhysicalRoots,
    PreconditionViolated,
    DenominatorVanishes,
    NoSignChange,
};

const char *status_name(Status s);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Normalized problem instance: sphere radius r, focal distances ra <= rb,
// half-angle theta between the bisector and either focal ray. A sits at
// polar angle +theta, B at -theta; phi is measured from the bisector,
// positive toward A.
struct Scene {
    double r = 1.0;
    double ra = 2.0;
    double rb = 3.0;
    double theta = 0.0;
    bool swapped = false; // input had ra > rb; labels exchanged
    bool grazing = false; // 2*theta sits at the tangency bound
};

Status make_scene(double r, double ra, double rb, double angle2, Scene &out);

// Largest full angle 2*theta for which segment AB clears the sphere.
// Pre: r < ra <= rb.
double theta2_max(double r, double ra, double rb);

double focal_separation(const Scene &s);

// Upper end of the arc interval [0, bound] that contains the specular
// point: the polar angle of the foot of the perpendicular from the center
// onto line AB. Always in [0, pi/2).
double phi_upper_bound(const Scene &s);

Vec2 to_cartesian(double radius, double phi);
Vec2 focal_a(const Scene &s);
Vec2 focal_b(const Scene &s);

// psi_A - psi_B at M = (r, phi): psi_X is the angle in [0, pi] between
// the outward normal at M and the ray M->X. Zero exactly at a specular
// configuration.
double specular_mismatch(const Scene &s, double phi);

// The angle the ray M->A makes with the outward normal at M = (r, phi);
// equals the B-side angle at the specular point.
double incidence_angle(const Scene &s, double phi);

} // namespace alh
