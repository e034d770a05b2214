#pragma once

// Scattering off a giant atom coupled through a continuous region.
//
// All continuum quantities reduce to two double integrals at phase scale
// s = 1 + delta / omega_a:
//   shift(s)      = int int v(p) v(p') sin(s |p - p'|)
//   half_width(s) = int int v(p) v(p') cos(s (p - p'))
// with T = (delta - shift)^2 / [(delta - shift)^2 + half_width^2]. In the
// Markov limit (s = 1) the Lamb shift is shift(1) and Gamma_eff = 2 half_width(1).

#include "giant_atom/core_model.hpp"
#include "giant_atom/discrete_scatter.hpp"
#include "giant_atom/quadrature.hpp"

#include <complex>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace giant_atom {

class UnsupportedVariantError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class TruncationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

double distribution_value(const CouplingDistribution& dist, double phi);

/// Mass of v on [a, b], exact for every variant.
double distribution_mass(const CouplingDistribution& dist, double a, double b);

/// Points where v is not smooth (kinks, lobe centres, table samples).
std::vector<double> distribution_kinks(const CouplingDistribution& dist);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Support truncated so the omitted mass fraction is at most tail_fraction
/// (exact support for compact variants).
Interval truncated_support(const CouplingDistribution& dist, double tail_fraction);

/// Disjoint lobes covering the retained mass; DoubleExponential yields two
/// lobes while they do not overlap.
std::vector<Interval> support_lobes(const CouplingDistribution& dist, double tail_fraction);

/// Closed-form line terms at phase scale s for named variants: width and
/// centre parameters scale with s while the lobe-overlap factor
/// exp(-2 phi_0 / Theta) is scale free.
LineTerms closed_line_terms(const CouplingDistribution& dist, double scale);

MarkovCharacterization markov_characterize_closed(const CouplingDistribution& dist);

inline constexpr double kRaisedCosineSeriesRadius = 1e-3;
inline constexpr double kSmallThetaSeriesBelow = 0.5;

struct ContinuumQuadratureOptions {
    double rel_tol = 1e-10;
    /// Omitted mass fraction for infinite-support variants.
    double tail_fraction = 1e-14;
    int max_intervals = 400000;
};

struct ContinuumIntegrals {
    double shift = 0.0;
    double half_width = 0.0;
    std::complex<double> transform{};  ///< int v(p) e^{i s p} dp
    double shift_error = 0.0;
    double width_error = 0.0;
    double tail_fraction = 0.0;
    long evaluations = 0;
};

/// c(u) = int v(p) v(p + u) dp on the truncated support.
double autocorrelation(const CouplingDistribution& dist, double u, const ContinuumQuadratureOptions& opts = {});

ContinuumIntegrals continuum_integrals(const CouplingDistribution& dist, double scale,
                                       const ContinuumQuadratureOptions& opts = {});

MarkovCharacterization markov_characterize_quadrature(const CouplingDistribution& dist,
                                                      const ContinuumQuadratureOptions& opts = {});

/// Exact spectrum by quadrature (any variant, including Tabulated).
Scattering scatter_continuum(const SystemParams& params, const CouplingDistribution& dist, Detuning delta,
                             const ContinuumQuadratureOptions& opts = {});

/// Exact spectrum from the closed forms (named variants only).
Scattering scatter_continuum_closed(const SystemParams& params, const CouplingDistribution& dist,
                                    Detuning delta);

LineTerms line_terms_double_exp(const SystemParams& params, double gamma_tilde, double theta_big, double phi_0,
                                Detuning delta);
Scattering scatter_double_exp(const SystemParams& params, double gamma_tilde, double theta_big, double phi_0,
                              Detuning delta);

RegimeAssessment classify_regime(const SystemParams& params, const CouplingDistribution& dist,
                                 const RegimeThresholds& thresholds = {});

/// Splits the (truncated) support into M cells, one point per cell at the
/// cell midpoint with sqrt(gamma_m / 2) equal to the cell mass. Throws
/// TruncationError if the omitted mass fraction exceeds 1e-6.
DiscreteCoupling discretize(const CouplingDistribution& dist, int m_points, double tail_fraction = 1e-8);

struct LoadedTable {
    CouplingDistribution dist;
    double raw_mass = 0.0;          ///< integral of the file's samples
    double correction = 0.0;        ///< |raw_mass / target - 1|
    std::vector<std::string> warnings;
};

class TableFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two-column (phi, v) text, '#' comments. Samples are rescaled so the mass is
/// (Gamma_tilde / 2)^{1/2}; a warning is recorded when the correction exceeds 1e-6.
LoadedTable load_tabulated(std::istream& in, double gamma_tilde);
LoadedTable load_tabulated_file(const std::string& path, double gamma_tilde);

/// Features of the double-exponential spectrum: transmission zeros where
/// cos(s phi_0) = -1, unity points, widest high-reflection band and walls.
FeatureReport feature_report_double_exp(const SystemParams& params, const CouplingDistribution& dist,
                                        DetuningWindow window, const FeatureOptions& options = {});

}  // namespace giant_atom
