#pragma once

// Two-body element conversions for bound and hyperbolic sub-orbits.
//
// `energy` is the physical two-body orbital energy (reduced mass times the
// specific energy), so an equal-mass binary of 15 + 15 at a = 5 carries
// energy -22.5. Angles are in radians: inclination in [0, pi], node
// longitude and pericenter argument in [0, 2 pi), elliptic mean anomaly in
// [0, 2 pi); the hyperbolic mean anomaly is any real number.

#include <stdexcept>
#include <string>

#include "threebody/vec3.hpp"

namespace threebody {

class SolverError : public std::runtime_error {
  public:
    explicit SolverError(const std::string &what) : std::runtime_error(what) {}
};

class ElementsError : public std::invalid_argument {
  public:
    explicit ElementsError(const std::string &what) : std::invalid_argument(what) {}
};

enum class OrbitClass { elliptic, hyperbolic };

struct OrbitalElements {
    OrbitClass orbit_class = OrbitClass::elliptic;
    double energy = -1.0;
    double eccentricity = 0.0;
    double inclination = 0.0;
    double node_longitude = 0.0;
    double pericenter_argument = 0.0;
    double mean_anomaly = 0.0;
    double total_mass = 1.0;
    double reduced_mass = 0.25;
    /// Set by cartesian_to_elements for zero angular momentum; eccentricity is then 1.
    bool radial = false;

    /// Negative for hyperbolic orbits.
    double semi_major_axis() const;
    /// Angular momentum magnitude mu * sqrt(G M a (1 - e^2)).
    double angular_momentum() const;
    /// Orbital period; infinite for hyperbolic orbits.
    double period() const;
    /// a(1+e) for bound orbits.
    double apocenter() const;
};

struct RelativeState {
    Vec3 position;
    Vec3 velocity;
};

double solve_kepler_elliptic(double mean_anomaly, double eccentricity);
double solve_kepler_hyperbolic(double mean_anomaly, double eccentricity);

/// Mean anomaly of the hyperbolic orbit at separation r on the incoming
/// (negative anomaly) branch.
double hyperbolic_mean_anomaly_at_radius(double semi_major_axis_abs, double eccentricity, double r,
                                         bool incoming);

RelativeState elements_to_cartesian(const OrbitalElements &elem, double reduced_mass);
inline RelativeState elements_to_cartesian(const OrbitalElements &elem) {
    return elements_to_cartesian(elem, elem.reduced_mass);
}

OrbitalElements cartesian_to_elements(const RelativeState &rel, double total_mass, double reduced_mass);

void validate(const OrbitalElements &elem);

} // namespace threebody
