#pragma once

// Newtonian three-body state, conserved charges and the binary + single
// decomposition. Units: G = 1, masses in solar masses, lengths in au-like
// N-body units; one year is 2*pi time units.

#include <array>
#include <stdexcept>
#include <string>
#include <utility>

#include "threebody/vec3.hpp"

namespace threebody {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kTimeUnitsPerYear = kTwoPi;

class SingularConfiguration : public std::runtime_error {
  public:
    explicit SingularConfiguration(const std::string &what) : std::runtime_error(what) {}
};

struct BodyState {
    double mass = 1.0;
    Vec3 position;
    Vec3 velocity;
};

struct ThreeBodyState {
    std::array<BodyState, 3> bodies;
    double time = 0.0;

    double total_mass() const { return bodies[0].mass + bodies[1].mass + bodies[2].mass; }
};

struct ConservedCharges {
    double energy = 0.0;
    Vec3 angular_momentum;
    Vec3 linear_momentum;
};

/// One of the three binary/single splittings. Indices are zero-based
/// internally; `escaper_label()` gives the 1-based identity s.
class PairId {
  public:
    constexpr PairId() = default;
    static constexpr PairId from_single(int single) { return PairId(single); }

    /// Pairs in canonical order (1,2), (1,3), (2,3).
    static constexpr std::array<PairId, 3> all() { return {PairId(2), PairId(1), PairId(0)}; }

    constexpr int single() const { return single_; }
    constexpr int first() const { return single_ == 0 ? 1 : 0; }
    constexpr int second() const { return single_ == 2 ? 1 : 2; }
    constexpr int escaper_label() const { return single_ + 1; }

    friend constexpr bool operator==(PairId, PairId) = default;

  private:
    constexpr explicit PairId(int single) : single_(single) {}
    int single_ = 2;
};

struct BinarySingleSplit {
    PairId pairing;
    double eps_B = 0.0;
    Vec3 l_B;
    double eps_F = 0.0;
    Vec3 l_F;
    Vec3 r_B; // relative position of the pair (second - first)
    Vec3 v_B;
    Vec3 r_F; // single relative to the pair's center of mass
    Vec3 v_F;
    double binary_mass = 0.0;
    double binary_reduced_mass = 0.0;
    double outer_reduced_mass = 0.0;
    double single_mass = 0.0;
};

/// Build a state from bodies and shift it to the center-of-mass frame.
ThreeBodyState make_cm_state(const std::array<BodyState, 3> &bodies, double time = 0.0);
ThreeBodyState to_cm_frame(ThreeBodyState state);

Vec3 center_of_mass(const ThreeBodyState &state);
Vec3 center_of_mass_velocity(const ThreeBodyState &state);

double separation(const ThreeBodyState &state, int i, int j);
double min_separation(const ThreeBodyState &state);

double kinetic_energy(const ThreeBodyState &state);
double potential_energy(const ThreeBodyState &state);
double total_energy(const ThreeBodyState &state);
Vec3 total_angular_momentum(const ThreeBodyState &state);
Vec3 total_linear_momentum(const ThreeBodyState &state);
ConservedCharges conserved_charges(const ThreeBodyState &state);

/// k = mu (G m_a m_b)^2 with mu the reduced mass of the pair.
double binary_constant(double mass_a, double mass_b);

/// Two-body energy of the pair (i, j) in its own center-of-mass frame.
double pair_energy(const ThreeBodyState &state, PairId pairing);

/// Pair with the lowest two-body energy; ties go to the lowest pair index.
std::pair<PairId, double> most_bound_pair(const ThreeBodyState &state);

/// Jacobi split into the pair's internal motion and the motion of the single
/// relative to the pair's center of mass. l_B + l_F equals the total angular
/// momentum about the center of mass exactly.
BinarySingleSplit decompose(const ThreeBodyState &state, PairId pairing);

} // namespace threebody
