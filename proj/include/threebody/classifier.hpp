#pragma once

// Online trajectory classification: hierarchy snapshots, democratic
// configuration counting, excursion detection and the final-breakup test.
// A TrajectoryTracker is fed every accepted integrator step and decides
// when a run is over.

#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "threebody/core.hpp"
#include "threebody/integrator.hpp"
#include "threebody/kepler.hpp"

namespace threebody {

struct ClassifierConfig {
    double democracy_threshold = 0.33;
    int absorbed_min_democratic = 4;
    double lifetime_cut = 100.0 * kPi; // 50 yr
    double f_escape_threshold = 1e-3;
    double escape_distance_multiple = 20.0;
    int escape_snapshots = 3;
    /// Breakup also requires |E - eps_B - eps_F| <= coupling_fraction * eps_F,
    /// so the recorded binary energy never exceeds the total energy.
    double coupling_fraction = 0.1;

    void validate() const;
};

struct HierarchySnapshot {
    double time = 0.0;
    PairId pairing;
    BinarySingleSplit split;
    double f_tid = 0.0;
    double R_H = 0.0;
    bool binary_bound = false;
    bool single_bound = false; // bound binary and eps_F < 0
    double a_bin = 0.0;        // semi-major axis; 0 when the pair is unbound
    double e_bin = 0.0;
    double binary_period = 0.0;
    double coupling_energy = 0.0; // E - eps_B - eps_F

    OrbitalElements binary_elements() const;
};

/// 2 m_bin m3 / (m1 m2) * (a (1 + e) / R)^3 for the given pairing. An unbound
/// pair uses its current separation in place of a (1 + e).
double tidal_factor(const ThreeBodyState &state, PairId pairing);

/// 3 r_min^2 / (r12^2 + r13^2 + r23^2); 1 for an equilateral triangle.
double homology_radius(const ThreeBodyState &state);

HierarchySnapshot take_snapshot(const ThreeBodyState &state);

struct DemocracyCounter {
    int N_D = 0;
    bool above_threshold = false;
    double threshold = 0.33;

    void reset() {
        N_D = 0;
        above_threshold = false;
    }
};

/// Counts one democratic configuration per complete rise above and fall
/// below the threshold.
DemocracyCounter update_democracy(DemocracyCounter counter, double R_H_sample);

/// Streaming median with two heaps.
class RunningMedian {
  public:
    void push(double x);
    double median() const;
    std::size_t size() const { return low_.size() + high_.size(); }
    void clear();

  private:
    std::priority_queue<double> low_;
    std::priority_queue<double, std::vector<double>, std::greater<>> high_;
};

struct ExcursionRecord {
    double start_time = 0.0;
    double end_time = 0.0;
    double median_binary_period = 0.0;
    bool accepted = false;
};

/// Online excursion detection. A candidate opens when the single is bound
/// and f_tid < 1, and is accepted as soon as its duration exceeds the median
/// binary period sampled since it opened.
class ExcursionDetector {
  public:
    enum class Event { none, opened, accepted, closed };

    Event update(const HierarchySnapshot &snap);

    bool open() const { return open_; }
    bool accepted() const { return accepted_; }
    const ExcursionRecord &current() const { return record_; }

  private:
    bool open_ = false;
    bool accepted_ = false;
    ExcursionRecord record_;
    RunningMedian periods_;
};

/// First candidate in a time-ordered stream, or nothing if none opens.
std::optional<ExcursionRecord> detect_excursion(std::span<const HierarchySnapshot> stream);

/// Consecutive-snapshot test for the final breakup.
class BreakupDetector {
  public:
    explicit BreakupDetector(const ClassifierConfig &cfg) : cfg_(cfg) {}

    bool update(const HierarchySnapshot &snap);
    bool fired() const { return fired_; }
    const HierarchySnapshot &at_breakup() const { return at_; }

  private:
    ClassifierConfig cfg_;
    int streak_ = 0;
    bool fired_ = false;
    HierarchySnapshot at_;
};

/// True when the snapshot satisfies every breakup condition on its own.
bool breakup_conditions(const HierarchySnapshot &snap, const ClassifierConfig &cfg);

/// Index of the first snapshot at which the breakup fires.
std::optional<std::size_t> detect_final_breakup(std::span<const HierarchySnapshot> stream,
                                                const ClassifierConfig &cfg);

enum class VerdictKind { Absorbed, RegularEjection, Escape, Undecided };

const char *to_string(VerdictKind kind);

struct TrajectoryVerdict {
    VerdictKind kind = VerdictKind::Undecided;
    PairId escaper; // meaningful for Escape
    double eps_B = 0.0;
    Vec3 l_B;
    double eps_F = 0.0;
    Vec3 l_F;
    double lifetime = 0.0;
    int N_D_final_segment = 0;
    int N_D_total = 0;
    int excursion_count = 0;
    TerminationReason reason = TerminationReason::terminator;
    std::int64_t steps = 0;
    double energy_drift = 0.0;
    double angmom_drift = 0.0;
    std::string message;
};

enum class RunKind { absorptivity, outcome };

/// Per-trajectory classifier state, fed at every accepted step.
class TrajectoryTracker {
  public:
    TrajectoryTracker(const ClassifierConfig &cfg, RunKind kind);

    void observe(const ThreeBodyState &state);
    bool finished() const { return finished_; }

    const DemocracyCounter &democracy() const { return democracy_; }
    int total_democratic() const { return total_democratic_; }
    int excursion_count() const { return excursions_; }
    const std::vector<ExcursionRecord> &excursions() const { return records_; }
    const BreakupDetector &breakup() const { return breakup_; }
    bool ejected_into_excursion() const { return excursion_ejection_; }

  private:
    ClassifierConfig cfg_;
    RunKind kind_;
    DemocracyCounter democracy_;
    int total_democratic_ = 0;
    ExcursionDetector excursion_;
    BreakupDetector breakup_;
    std::vector<ExcursionRecord> records_;
    int excursions_ = 0;
    bool excursion_ejection_ = false;
    bool finished_ = false;
};

/// Integrates an absorptivity-style IC to its first ejection (accepted
/// excursion or escape) and returns Absorbed, RegularEjection or Undecided.
TrajectoryVerdict classify_absorption(const ThreeBodyState &ic, const IntegratorConfig &icfg,
                                      const ClassifierConfig &ccfg);

/// Integrates an outcome IC to the final breakup and returns Escape (with the
/// asymptotic parameters) or Undecided.
TrajectoryVerdict run_outcome(const ThreeBodyState &ic, const IntegratorConfig &icfg, const ClassifierConfig &ccfg);

/// Lifetime above the cut and at least `absorbed_min_democratic` democratic
/// configurations since the last accepted excursion. Throws
/// std::invalid_argument for non-Escape verdicts.
bool classify_chaotic_escape(const TrajectoryVerdict &verdict, const ClassifierConfig &cfg);

} // namespace threebody
