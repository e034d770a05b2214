#pragma once

// Single-photon scattering off a giant atom with discrete coupling points:
// exact coefficients (retarded, detuning-dependent phases), the Markov
// Lorentzian, and the feature finders for regular arrays.

#include "giant_atom/core_model.hpp"

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace giant_atom {

/// Line-shape terms of the exact spectrum at one detuning:
/// T = (delta - shift)^2 / [(delta - shift)^2 + half_width^2].
struct LineTerms {
    double shift = 0.0;
    double half_width = 0.0;
};

LineTerms line_terms_general(const SystemParams& params, const DiscreteCoupling& coupling, Detuning delta);
Scattering scatter_general(const SystemParams& params, const DiscreteCoupling& coupling, Detuning delta);

/// The two trigonometric ratios of the regular-array formula at phase theta:
/// shift_ratio = (N sin t - sin N t) / (1 - cos t),
/// width_ratio = (1 - cos N t) / (1 - cos t),
/// with series branches near t = 2 n pi.
struct RegularRatios {
    double shift_ratio = 0.0;
    double width_ratio = 0.0;
};

inline constexpr double kRegularSeriesRadius = 1e-4;

RegularRatios regular_ratios(int n_points, double theta);
/// Closed-form branch only (no series switch); exposed for seam tests.
RegularRatios regular_ratios_direct(int n_points, double theta);
RegularRatios regular_ratios_series(int n_points, double theta);

LineTerms line_terms_regular(const SystemParams& params, const RegularArray& array, Detuning delta);
Scattering scatter_regular(const SystemParams& params, const RegularArray& array, Detuning delta);

MarkovCharacterization markov_characterize(const DiscreteCoupling& coupling);
MarkovCharacterization markov_characterize(const DiscreteCoupling& coupling, const SystemParams& params,
                                           const RegimeThresholds& thresholds = {});
/// Regular-array closed forms for the Lamb shift and effective decay.
MarkovCharacterization markov_characterize_regular(const RegularArray& array);

Scattering scatter_markov(const MarkovCharacterization& markov, Detuning delta) noexcept;

RegimeAssessment classify_regime(const SystemParams& params, const DiscreteCoupling& coupling,
                                 const RegimeThresholds& thresholds = {});

struct DetuningWindow {
    double lo = 0.0;
    double hi = 0.0;
};

/// Detunings of total transmission for a regular array inside the window,
/// ascending. Empty when theta == 0.
std::vector<double> transmission_zeros(const SystemParams& params, const RegularArray& array,
                                       DetuningWindow window);

class GridResolutionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct FeatureOptions {
    std::size_t grid_points = 4001;
    double r_gap = 0.99;
    /// Acceptance level for reflection-unity points: 1 - R below this.
    double unity_tolerance = 1e-9;
    /// Acceptance level for transmission zeros: R below this.
    double zero_tolerance = 1e-10;
    /// A wall foot is the first R minimum below this level outside the central band.
    double wall_level = 1e-3;
};

struct VerifiedPoint {
    double delta_k = 0.0;
    double residual = 0.0;  ///< R for zeros, 1 - R for unity points
};

struct BandGap {
    double lo = 0.0;
    double hi = 0.0;
    double threshold = 0.0;
    double width() const noexcept { return hi - lo; }
};

struct FeatureReport {
    std::vector<VerifiedPoint> transmission_zeros;
    std::vector<VerifiedPoint> reflection_unity_points;
    bool triple_peak = false;
    std::optional<BandGap> band_gap;
    std::vector<double> gamma_eff_zero_thetas;
    std::vector<double> gamma_eff_local_max_thetas;
    /// Feet of the steep walls around the central reflection band.
    std::optional<std::pair<double, double>> walls;
    std::vector<std::string> warnings;
};

/// theta = 2 n pi and theta > 6 omega_a / (N (N^2 - 1) gamma).
bool triple_peak_condition(const SystemParams& params, const RegularArray& array);

/// Phases in (0, 2 pi) where the regular-array effective decay vanishes.
std::vector<double> gamma_eff_zero_thetas(int n_points);
/// Interior local maxima of the regular-array effective decay on (0, 2 pi):
/// roots of N cot(N t / 2) = cot(t / 2).
std::vector<double> gamma_eff_local_max_thetas(int n_points);

FeatureReport feature_report(const SystemParams& params, const RegularArray& array, DetuningWindow window,
                             const FeatureOptions& options = {});

// Building blocks shared with the continuum feature report.

/// Unity points: sign changes of delta - shift(delta), verified against R.
std::vector<VerifiedPoint> find_unity_points(const std::function<LineTerms(double)>& terms,
                                             std::span<const double> grid, double unity_tolerance);
/// Widest contiguous run with R > threshold, edges refined by bisection.
std::optional<BandGap> widest_band(const std::function<double(double)>& reflectance,
                                   std::span<const double> grid, double threshold);
/// Foot of the wall on either side of centre: first local R minimum below
/// wall_level, refined by golden section.
std::optional<std::pair<double, double>> find_walls(const std::function<double(double)>& reflectance,
                                                    std::span<const double> grid, double centre,
                                                    double wall_level);

}  // namespace giant_atom
