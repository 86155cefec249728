#pragma once

// Campaign orchestration: config parsing, per-realization records, the
// resumable ordered runner, aggregation and report files.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "threebody/classifier.hpp"
#include "threebody/flux.hpp"
#include "threebody/grids.hpp"
#include "threebody/integrator.hpp"
#include "threebody/setup.hpp"

namespace threebody {

class ConfigError : public std::invalid_argument {
  public:
    explicit ConfigError(const std::string &what) : std::invalid_argument(what) {}
};

class RecordError : public std::runtime_error {
  public:
    explicit RecordError(const std::string &what) : std::runtime_error(what) {}
};

enum class CampaignMode { absorptivity_bivariate, absorptivity_trivariate, outcome, predict, compare };

const char *to_string(CampaignMode mode);
CampaignMode parse_campaign_mode(const std::string &s);

struct CampaignConfig {
    CampaignMode mode = CampaignMode::outcome;
    std::int64_t realizations = 1000; // per grid point, or outcome runs
    std::uint64_t master_seed = 1;
    int workers = 0; // 0: hardware concurrency
    double flagged_fraction_limit = 0.01;
    std::filesystem::path output_dir = "out";

    // physics
    double E = kReferenceEnergy;
    double L = kReferenceAngularMomentum;
    std::array<double, 3> masses{15.0, 15.0, 15.0};
    double a_bin = 5.0;
    double distance = 100.0;
    double separation_multiple = 20.0;

    // trivariate disks
    int chebyshev_N = 28;
    double inner_radius_fraction = 0.4;
    double inner_spacing_fraction = 0.1;
    std::vector<double> levels = trivariate_energy_levels();
    /// Nodes at the disk center are realized at this fraction of l_max.
    double center_offset_fraction = 0.01;

    // bivariate grid
    BivariateSpec bivariate;

    IntegratorConfig integrator;
    ClassifierConfig classifier;
    HistogramSpec histogram;
    std::int64_t min_count = 20;

    // predict / compare inputs
    std::filesystem::path absorptivity_input;
    std::filesystem::path prediction_input;
    std::filesystem::path measured_input;

    double binary_constant() const;
    /// Multiplies the realization count; the result is at least 1.
    void apply_scale(double factor);
    /// Throws ConfigError.
    void validate() const;
};

CampaignConfig default_campaign_config(CampaignMode mode);

/// INI-style text: [section] headers and key = value lines. List values are
/// whitespace- or comma-separated. Unknown sections or keys throw ConfigError.
CampaignConfig parse_campaign_config(std::istream &is);
CampaignConfig load_campaign_config(const std::filesystem::path &path);

/// Canonical key = value dump; parse_campaign_config reads it back.
std::string dump_campaign_config(const CampaignConfig &cfg);

/// Stable identifier of everything that affects a campaign's records.
std::string campaign_id(const CampaignConfig &cfg);

/// One measurement location of an absorptivity campaign.
struct GridPoint {
    double eps_B = 0.0;
    double l_Bx = 0.0;
    double l_By = 0.0;
    double l_B = 0.0;
    bool boundary = false;
    bool shifted_center = false; // moved off l_B = 0
};

std::vector<GridPoint> campaign_points(const CampaignConfig &cfg);

struct RealizationRecord {
    std::string campaign;
    std::int64_t point = 0;
    std::int64_t realization = 0;
    std::uint64_t seed = 0;
    VerdictKind verdict = VerdictKind::Undecided;
    int escaper = 0; // 1-based; 0 unless Escape
    // Absorptivity runs: the requested point. Escapes: values at breakup, with
    // l_Bx along the total angular momentum and l_By >= 0 perpendicular to it.
    double eps_B = 0.0;
    double l_Bx = 0.0;
    double l_By = 0.0;
    double l_B = 0.0;
    double eps_F = 0.0;
    double l_F = 0.0;
    double lifetime = 0.0;
    int N_D = 0;
    int N_D_total = 0;
    int excursions = 0;
    bool chaotic = false;
    bool flagged = false;
    double energy_drift = 0.0;
    double angmom_drift = 0.0;
    std::int64_t steps = 0;
    TerminationReason reason = TerminationReason::terminator;
};

extern const char *const kRecordHeader;

std::string format_record(const RealizationRecord &rec);
RealizationRecord parse_record(const std::string &line);

/// Reads records.csv; with `tolerate_partial` a final line without a newline
/// is ignored instead of rejected.
std::vector<RealizationRecord> read_records(std::istream &is, bool tolerate_partial = false);

/// Generates, integrates and classifies realization `index` of `point`.
RealizationRecord run_realization(const CampaignConfig &cfg, const std::string &id,
                                  const std::vector<GridPoint> &points, std::int64_t point, std::int64_t index);

struct CampaignProgress {
    std::int64_t total = 0;
    std::int64_t resumed = 0; // records found on disk
    std::int64_t completed = 0;
};

using ProgressCallback = std::function<void(const CampaignProgress &)>;

/// Runs every (point, realization) item not yet in `<out>/records.csv` and
/// appends records in item order. A truncated last line is discarded.
CampaignProgress run_records(const CampaignConfig &cfg, const ProgressCallback &progress = {});

struct PointMeasurement {
    GridPoint point;
    GridMeasurement m;
};

/// Per-point counts keyed by point index. Throws RecordError on records from
/// more than one campaign. Undecided runs are excluded from the estimate.
std::map<std::int64_t, GridMeasurement> aggregate_absorptivity(const std::vector<RealizationRecord> &records);

struct OutcomeSummary {
    std::int64_t runs = 0;
    std::int64_t escapes = 0;
    std::int64_t undecided = 0;
    std::int64_t flagged = 0;
    std::int64_t chaotic = 0;
    std::array<std::int64_t, 3> chaotic_by_body{};
    std::int64_t domain_violations = 0;
    std::int64_t above_nominal_energy = 0; // escapes with eps_B above the nominal E
    double max_energy_drift = 0.0; // over unflagged runs
    double max_angmom_drift = 0.0;
    std::vector<std::array<double, 2>> samples; // (eps_B, l_B) of chaotic escapes
};

/// Escapes violate the domain when -2 eps_B l_B^2 > k or eps_B exceeds the
/// total energy of their run, given by run_energy (the nominal E if empty).
OutcomeSummary aggregate_outcome(const std::vector<RealizationRecord> &records, double k, double E,
                                 double slack = 1e-6,
                                 const std::function<double(const RealizationRecord &)> &run_energy = {});

/// Total energy of the outcome IC a record was started from, rebuilt from its seed.
double outcome_run_energy(const CampaignConfig &cfg, const RealizationRecord &record);

/// Absorptivity map file: one row per grid point.
void write_absorptivity_map(std::ostream &os, const CampaignConfig &cfg, const std::vector<GridPoint> &points,
                            const std::map<std::int64_t, GridMeasurement> &counts);
std::vector<PointMeasurement> read_absorptivity_map(std::istream &is);

/// Disk levels of a trivariate map, sorted by decreasing eps_B. Shifted
/// center nodes are put back at the origin.
std::vector<DiskLevel> disk_levels(const std::vector<PointMeasurement> &map, const CampaignConfig &cfg);

BivariateMap bivariate_map(const std::vector<PointMeasurement> &map);

/// Area-weighted mean over the half-disk of the interpolated field, and the
/// same restricted to l_Bx > 0 and l_Bx < 0.
struct DiskMeans {
    double eps_B = 0.0;
    double all = 0.0;
    double prograde = 0.0;
    double retrograde = 0.0;
};
DiskMeans disk_means(const DiskLevel &level, int samples = 200);

/// Stage results; each writes its files into cfg.output_dir.
struct StageResult {
    int exit_code = 0;
    std::string report;
};

StageResult run_absorptivity_campaign(const CampaignConfig &cfg, const ProgressCallback &progress = {});
StageResult run_outcome_campaign(const CampaignConfig &cfg, const ProgressCallback &progress = {});
StageResult run_predict(const CampaignConfig &cfg);
StageResult run_compare(const CampaignConfig &cfg);
/// Writes grid.csv with the measurement nodes of the configured mode.
StageResult run_grid_dump(const CampaignConfig &cfg);

} // namespace threebody
