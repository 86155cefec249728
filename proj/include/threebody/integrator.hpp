#pragma once

// Adaptive Gragg-Bulirsch-Stoer integration of the three-body equations.
//
// The integrator evolves chain coordinates: the two shortest separations are
// carried as relative vectors, so a tight pair far from the center of mass
// keeps full precision. The chain is re-selected after any step in which
// the closing pair becomes shorter than a link.
//
// The base method is a leapfrog extrapolated in the squared substep. With the
// time transformation enabled it is the logarithmic-Hamiltonian leapfrog:
// drifts advance time by ds / (T - E) and kicks by ds / U, U = sum m_i m_j / r_ij,
// so the step density follows the inverse closest separation and two-body
// encounters are followed without a collision singularity. Each chain vector
// is error-controlled relative to its own length and each chain velocity
// relative to its own dynamical velocity, at `relative_tolerance` per step.

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "threebody/core.hpp"
#include "threebody/kernels.hpp"

namespace threebody {

struct IntegratorConfig {
    double relative_tolerance = 1e-10;
    std::int64_t max_steps = 20'000'000;
    double max_time = std::numeric_limits<double>::infinity();
    double conservation_alarm = 1e-6;
    bool time_transform_enabled = true;
    /// Upper bound of one step in units of the shortest pair dynamical time
    /// r / sqrt(v^2 + G M / r); keeps per-step snapshots dense enough for
    /// the hierarchy classifier.
    double max_step_fraction = 0.2;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

class StepUnderflow : public SingularConfiguration {
  public:
    explicit StepUnderflow(const std::string &what) : SingularConfiguration(what) {}
};

enum class TerminationReason { terminator, max_steps, max_time, conservation_alarm, singular };

const char *to_string(TerminationReason reason);

using StepMonitor = std::function<void(const ThreeBodyState &)>;
using Terminator = std::function<bool(const ThreeBodyState &)>;

struct IntegrationResult {
    ThreeBodyState final_state;
    TerminationReason reason = TerminationReason::terminator;
    std::int64_t steps = 0;
    double energy_drift = 0.0;  // |dE / E|
    double angmom_drift = 0.0;  // |dL| / |L|
    std::string message;
};

/// Shortest pair dynamical time r / sqrt(v^2 + G M_pair / r).
double dynamical_time(const ThreeBodyState &state);

class Integrator {
  public:
    explicit Integrator(IntegratorConfig cfg, const kernels::KernelTable &table = kernels::active_kernels());

    /// Loads a state; the chain is selected from its geometry.
    void begin(const ThreeBodyState &state);

    /// One accepted adaptive step from the current state. Step size and
    /// extrapolation order carry over between calls. Throws StepUnderflow when
    /// the required step falls below what double precision can resolve.
    void step();

    /// Steps until the time is within 1e-12 relative of `t_end`, shortening
    /// the final steps. Returns the number of accepted steps.
    std::int64_t advance_to(double t_end);

    /// Current state in absolute coordinates.
    const ThreeBodyState &current() const { return state_; }

    /// Energy and angular momentum evaluated from the chain vectors.
    double current_energy() const;
    Vec3 current_angular_momentum() const;

    /// begin(state) followed by step().
    ThreeBodyState advance_step(const ThreeBodyState &state);

    /// Runs step() until the terminator fires, the conservation alarm
    /// trips or a cap is hit. Monitors see the initial state and every
    /// accepted step before the terminator is asked.
    IntegrationResult integrate_until(const ThreeBodyState &state, const std::vector<StepMonitor> &monitors,
                                      const Terminator &terminator);

    const IntegratorConfig &config() const { return cfg_; }
    std::int64_t function_evaluations() const { return evaluations_; }
    std::int64_t chain_switches() const { return switches_; }
    const kernels::KernelTable &kernel_table() const { return *k_; }

  private:
    using StateVec = kernels::StateVec;

    double potential(const StateVec &y) const;
    double kinetic(const StateVec &y) const;
    void drift(StateVec &z, double h) const;
    void kick(StateVec &z, double h);
    void step_limited(double limit);
    void leapfrog(const StateVec &y0, double big_h, int substeps, StateVec &out);
    void error_scale(const StateVec &y, StateVec &scale) const;
    double chain_dynamical_time(const StateVec &y) const;
    // Separation r_j - r_i and relative velocity of every body pair.
    struct PairTable {
        Vec3 r[3][3];
        Vec3 v[3][3];
    };

    void pair_table(const StateVec &y, PairTable &t) const;
    void select_chain(const PairTable &t, double time);
    void maybe_rechain();
    void export_state();

    IntegratorConfig cfg_;
    const kernels::KernelTable *k_;
    std::array<int, 3> order_{0, 1, 2};
    std::array<double, 3> body_mass_{};
    std::array<double, 3> chain_mass_{};
    Vec3 cm_position_;
    Vec3 cm_velocity_;
    double start_time_ = 0.0;
    double binding_ = 0.0;
    StateVec y_;
    ThreeBodyState state_;
    double step_ = 0.0;
    double last_step_ = 0.0;
    int column_ = 4;
    std::int64_t evaluations_ = 0;
    std::int64_t switches_ = 0;
};

/// Stateless single step with a fresh step-size estimate.
ThreeBodyState advance_step(const ThreeBodyState &state, const IntegratorConfig &cfg);

IntegrationResult integrate_until(const ThreeBodyState &state, const IntegratorConfig &cfg,
                                  const std::vector<StepMonitor> &monitors, const Terminator &terminator);

} // namespace threebody
