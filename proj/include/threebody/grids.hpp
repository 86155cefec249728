#pragma once

// Measurement grids over (eps_B, l_B) and over the l_Bx-l_By disk, the
// allowed region, and piecewise-linear interpolation on a Delaunay
// triangulation of scattered nodes.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace threebody {

class GridError : public std::invalid_argument {
  public:
    explicit GridError(const std::string &what) : std::invalid_argument(what) {}
};

class ExtrapolationError : public std::domain_error {
  public:
    explicit ExtrapolationError(const std::string &what) : std::domain_error(what) {}
};

/// sqrt(-k / (2 eps_B)): the circular-orbit angular momentum.
double max_binary_angmom(double eps_B, double k);

/// -2 eps_B l_B^2 <= k and eps_B <= E.
bool allowed_region(double eps_B, double l_B, double k, double E);

struct DiskPoint {
    double x = 0.0; // l_Bx, along L
    double y = 0.0; // l_By
    enum class Source { chebyshev, uniform } source = Source::chebyshev;
};

struct DiskGrid {
    std::vector<DiskPoint> points;
    double l_max = 0.0;
    int chebyshev_N = 0;          // 0 if absent
    double uniform_radius = 0.0;  // 0 if absent
    double uniform_spacing = 0.0; // 0 if absent
};

/// Boundary nodes at angles (2i-1) pi / (2N), i = 1..N, plus (+-l_max, 0).
std::vector<DiskPoint> chebyshev_boundary(double l_max, int N);

/// Cartesian product of the distinct boundary abscissae and ordinates,
/// clipped to the closed upper half-disk. Contains the boundary nodes.
DiskGrid chebyshev_disk_grid(double l_max, int N = 28);

/// Square lattice with the given spacing clipped to the disk of `radius`
/// (full disk, both signs of y).
DiskGrid uniform_disk_grid(double radius, double spacing);

/// Chebyshev lattice plus the upper half of the inner uniform grid, with
/// coincident nodes merged. This is the measured node set at one eps_B.
DiskGrid measurement_disk_grid(double l_max, int N = 28, double inner_radius_fraction = 0.4,
                               double inner_spacing_fraction = 0.1);

/// Delaunay triangulation of scattered 2D nodes with linear interpolation.
class Triangulation {
  public:
    Triangulation() = default;
    /// Nodes must be distinct and not all collinear.
    explicit Triangulation(std::vector<std::array<double, 2>> nodes);

    const std::vector<std::array<double, 2>> &nodes() const { return nodes_; }
    const std::vector<std::array<int, 3>> &triangles() const { return tris_; }

    /// Triangle index and barycentric weights of a query, or nothing when
    /// the query lies outside the convex hull.
    struct Location {
        int triangle = -1;
        std::array<double, 3> weights{};
    };
    std::optional<Location> locate(double x, double y) const;

    /// Linear interpolant; throws ExtrapolationError outside the hull.
    double interpolate(const std::vector<double> &values, double x, double y) const;

  private:
    std::vector<std::array<double, 2>> nodes_;
    std::vector<std::array<int, 3>> tris_;
};

/// Interpolates node values on a half-disk grid. Queries with y < 0 use the
/// mirror image. With `clamp_unit` the result is clamped to [0, 1].
double interpolate_disk(const DiskGrid &grid, const std::vector<double> &values, double x, double y,
                        bool clamp_unit = true);

/// Same, reusing a prebuilt triangulation of `grid.points`.
double interpolate_disk(const Triangulation &tri, const std::vector<double> &values, double x, double y,
                        bool clamp_unit = true);

Triangulation triangulate(const DiskGrid &grid);

struct BivariatePoint {
    double eps_B = 0.0;
    double l_B = 0.0;
    bool boundary = false; // l_B = l_B,max(eps_B)
};

struct BivariateSpec {
    double eps_hi = -30.0;
    double eps_lo = -150.0;
    int eps_count = 100;
    std::vector<double> l_B_values{1.5, 2.5, 7.5, 10, 20, 30, 40, 50, 60, 70};
    bool include_boundary = true;
    /// When non-empty, used instead of the regular eps_B spacing.
    std::vector<double> eps_values;
};

/// Regular eps_B values crossed with the l_B list, plus the circular-orbit
/// point for each eps_B; combinations outside the allowed region dropped.
std::vector<BivariatePoint> bivariate_grid(double k, double E, const BivariateSpec &spec = {});

/// {-30, -40, ..., -160} then {-180, -200, ..., -300}.
std::vector<double> trivariate_energy_levels();

struct GridMeasurement {
    std::int64_t n_total = 0;
    std::int64_t n_absorbed = 0;
    std::int64_t n_undecided = 0;
    std::int64_t n_flagged = 0; // conservation alarms, also counted as undecided

    std::int64_t decided() const { return n_total - n_undecided; }
    /// n_absorbed / decided; NaN when nothing was decided.
    double estimate() const;
    double standard_error() const;
};

} // namespace threebody
