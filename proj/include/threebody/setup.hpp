#pragma once

// Initial conditions for the two experiment families: binary-single
// scattering at fixed asymptotic charges (absorptivity runs) and a circular
// binary with a single at rest (outcome runs). Bodies 1 and 2 form the
// initial binary; body 3 is the single.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "threebody/core.hpp"
#include "threebody/random.hpp"

namespace threebody {

class GenerationError : public std::invalid_argument {
  public:
    explicit GenerationError(const std::string &what) : std::invalid_argument(what) {}
};

inline const double kReferenceEnergy = -27.0;
inline const double kReferenceAngularMomentum = 75.0 * std::sqrt(1.5);

struct AbsorptivityConfig {
    enum class Mode { bivariate, trivariate };

    double E = kReferenceEnergy;
    double L = kReferenceAngularMomentum;
    std::array<double, 3> masses{15.0, 15.0, 15.0};
    double eps_B = -30.0;
    Mode mode = Mode::bivariate;
    double l_B = 0.0;  // bivariate: magnitude, sigma marginalized
    double l_Bx = 0.0; // trivariate: component along L
    double l_By = 0.0; // trivariate: perpendicular component
    double separation_multiple = 20.0;

    double binary_constant() const;
    /// l_B magnitude in either mode.
    double l_B_magnitude() const;
    /// Throws GenerationError for requests outside the allowed region.
    void validate() const;
};

struct OutcomeConfig {
    std::array<double, 3> masses{15.0, 15.0, 15.0};
    double a_bin = 5.0;
    double distance = 100.0;

    void validate() const;
};

/// Uniform in [L - l_B, L + l_B].
double sample_l_F(double L, double l_B, Rng &rng);

ThreeBodyState build_absorptivity_ic(const AbsorptivityConfig &cfg, Rng &rng);
ThreeBodyState build_outcome_ic(const OutcomeConfig &cfg, Rng &rng);

} // namespace threebody
