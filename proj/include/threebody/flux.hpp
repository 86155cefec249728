#pragma once

// Flux-based outcome theory: asymptotic flux densities, flux-weighted
// marginalization of absorptivity, the predicted outcome density, and the
// comparison against a measured histogram.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "threebody/grids.hpp"

namespace threebody {

class FluxDomainError : public std::domain_error {
  public:
    explicit FluxDomainError(const std::string &what) : std::domain_error(what) {}
};

class CoverageError : public std::domain_error {
  public:
    explicit CoverageError(const std::string &what) : std::domain_error(what) {}
};

/// Charges shared by every flux evaluation.
struct FluxCharges {
    double E = -27.0;
    double L = 0.0;
    double k = 0.0;
};

/// l_B / (-eps_B)^(3/2), unnormalized. Throws outside the allowed region.
double marginal_flux_density(double eps_B, double l_B, const FluxCharges &c);

/// sqrt(k) / (-2 eps_B)^(3/2) / (l_B l_F) with l_F = |L - l_B| resolved from
/// the angle sigma between l_B and L. The pericenter angles carry uniform
/// weight and do not enter.
double full_flux_density(double eps_B, double l_B, double cos_sigma, double psi_B, double psi_F,
                         const FluxCharges &c);

/// Nodes and weights of n-point Gauss-Legendre quadrature on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

struct MarginalizationOptions {
    int sigma_nodes = 128; // Gauss-Legendre in cos(sigma)
    int angle_nodes = 8;   // trapezoid in each pericenter angle
};

/// Integral of full_flux_density over the directions of l_B at fixed
/// magnitude (measure l_B^2 dcos(sigma) dphi) and over both pericenter angles.
double marginalize_flux_numeric(double eps_B, double l_B, const FluxCharges &c,
                                const MarginalizationOptions &opt = {});

/// C = (2 pi)^3 sqrt(k) / (sqrt(2) L), so that for l_B <= L the shell theorem
/// gives marginalize_flux_numeric = C * marginal_flux_density.
double marginal_flux_constant(const FluxCharges &c);

/// Absorptivity measured on one disk at fixed eps_B.
struct DiskLevel {
    double eps_B = 0.0;
    DiskGrid grid;
    std::vector<double> values; // per grid point
};

/// Flux-weighted average of a disk field over the ring |l_B| = l_B, i.e. the
/// uniform average over l_F in [L - l_B, L + l_B]. Throws CoverageError when
/// part of the ring lies outside the triangulated nodes.
double marginalize_absorptivity(const DiskLevel &level, const Triangulation &tri, double l_B, double L,
                                int nodes = 64);
double marginalize_absorptivity(const DiskLevel &level, double l_B, double L, int nodes = 64);

/// Rectangular (eps_B, l_B) binning with per-cell values.
struct DensityMap2D {
    enum class Tag { raw, probability, median_scaled };

    std::vector<double> eps_edges;
    std::vector<double> l_edges;
    std::vector<double> values;       // row-major [eps bin][l bin]
    std::vector<std::int64_t> counts; // measured maps only; empty otherwise
    std::vector<double> allowed_area; // area of cell inside the allowed region
    Tag tag = Tag::raw;
    std::int64_t samples = 0; // measured maps: samples inside the binned range

    std::size_t n_eps() const { return eps_edges.size() - 1; }
    std::size_t n_l() const { return l_edges.size() - 1; }
    std::size_t index(std::size_t i, std::size_t j) const { return i * n_l() + j; }
    double eps_center(std::size_t i) const { return 0.5 * (eps_edges[i] + eps_edges[i + 1]); }
    double l_center(std::size_t j) const { return 0.5 * (l_edges[j] + l_edges[j + 1]); }
};

const char *to_string(DensityMap2D::Tag tag);

struct HistogramSpec {
    double eps_lo = -150.0;
    double eps_hi = -30.0;
    double l_lo = 1.5;
    double l_hi = 70.0;
    int eps_bins = 40;
    int l_bins = 40;
};

std::vector<double> linear_edges(double lo, double hi, int bins);

/// Area of [e0, e1] x [l0, l1] with -2 eps l^2 <= k and eps <= E.
double allowed_cell_area(double e0, double e1, double l0, double l1, double k, double E);

/// Density = count / (N * area(bin inside the allowed region)), N counting the
/// samples inside the binned range. Throws FluxDomainError when a bin with
/// no allowed area receives samples.
DensityMap2D boundary_corrected_histogram(const std::vector<std::array<double, 2>> &samples,
                                          const HistogramSpec &spec, double k, double E);

/// Bivariate absorptivity measurements at scattered (eps_B, l_B) nodes.
struct BivariateMap {
    std::vector<BivariatePoint> points;
    std::vector<double> values;
};

/// Scaled-axes triangulation of the bivariate nodes.
class BivariateInterpolator {
  public:
    explicit BivariateInterpolator(const BivariateMap &map);
    /// Clamped to [0, 1]; throws ExtrapolationError outside the node hull.
    double operator()(double eps_B, double l_B) const;

  private:
    Triangulation tri_;
    std::vector<double> values_;
    double eps_scale_ = 1.0, l_scale_ = 1.0;
};

/// Cell averages of E(eps_B, l_B) * l_B / (-eps_B)^(3/2) over the allowed part
/// of each histogram cell, sampled on a sub x sub midpoint lattice. Tagged raw.
DensityMap2D predict_outcome_distribution(const BivariateMap &absorptivity, const HistogramSpec &spec,
                                          const FluxCharges &c, int sub = 8);

/// Scales `pred` by one constant so that its median over cells with allowed
/// area agrees with the median of `meas` over the same cells.
DensityMap2D normalize_by_median(const DensityMap2D &pred, const DensityMap2D &meas);

/// Percentile with linear interpolation between order statistics.
double percentile(std::vector<double> values, double q);

struct ComparisonReport {
    std::vector<double> ratio; // per cell; NaN where masked
    double percentile_16 = 0.0;
    double percentile_84 = 0.0;
    std::int64_t masked = 0;
    std::int64_t used = 0;
    double scale = 1.0; // median-normalization factor applied to the prediction
};

/// pred / meas over cells with at least `min_count` measured samples.
ComparisonReport residual_ratio_map(const DensityMap2D &pred, const DensityMap2D &meas, std::int64_t min_count = 20);

/// Columnar text with '#'-prefixed metadata lines.
void write_density_map(std::ostream &os, const DensityMap2D &map, const std::string &title);
DensityMap2D read_density_map(std::istream &is);

} // namespace threebody
