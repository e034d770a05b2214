#pragma once

// Shared value types for giant-atom scattering.
//
// Units: every rate (gamma_m, Gamma_tilde, detuning, omega_a) is expressed in
// one reference rate, gamma for discrete runs and Gamma_tilde for continuum
// runs. Positions are stored as phases phi = omega_a * x / v_g, so neither the
// group velocity nor absolute lengths appear anywhere.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace giant_atom {

/// Raised for inputs outside the physical domain (k <= 0, negative rates, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class SystemParams {
public:
    explicit SystemParams(double omega_a);

    double omega_a() const noexcept { return omega_a_; }

private:
    double omega_a_;
};

/// Photon-atom detuning delta_k = v_g k - omega_a. The k > 0 restriction
/// depends on omega_a and is checked where both are known.
struct Detuning {
    double delta_k = 0.0;
};

/// Scale factor k / k_a = 1 + delta_k / omega_a. Throws DomainError for k <= 0.
double phase_scale(const SystemParams& params, Detuning delta);

/// Phase accumulated over a phase separation phi_tilde at detuning delta.
double detuned_phase(const SystemParams& params, Detuning delta, double phi_tilde);

struct CouplingPoint {
    double phi = 0.0;    ///< position in phase units
    double gamma = 0.0;  ///< decay rate of this point alone, 2 V_m^2 / v_g
};

/// Arbitrary set of coupling points. Points are kept sorted by phase; every
/// result depends only on phase differences so input order is irrelevant.
class DiscreteCoupling {
public:
    explicit DiscreteCoupling(std::vector<CouplingPoint> points);

    std::span<const CouplingPoint> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }

    /// max |phi_m - phi_n|
    double phase_span() const noexcept;
    /// Dipole-limit decay rate (sum_m sqrt(gamma_m))^2.
    double gamma_dipole() const noexcept;

private:
    std::vector<CouplingPoint> points_;
};

/// N identical points with constant neighbour phase delay theta.
class RegularArray {
public:
    RegularArray(int n_points, double gamma, double theta);

    int n_points() const noexcept { return n_points_; }
    double gamma() const noexcept { return gamma_; }
    double theta() const noexcept { return theta_; }
    double gamma_dipole() const noexcept { return double(n_points_) * n_points_ * gamma_; }

private:
    int n_points_;
    double gamma_;
    double theta_;
};

DiscreteCoupling expand_regular(const RegularArray& array);

enum class DistributionKind { Uniform, Exponential, Triangular, RaisedCosine, DoubleExponential, Tabulated };

std::string to_string(DistributionKind kind);
DistributionKind distribution_kind_from_string(const std::string& name);

struct TableSample {
    double phi = 0.0;
    double v = 0.0;
};

/// Continuous coupling density v(phi) with integral (Gamma_tilde / 2)^{1/2}.
///
/// Named variants are centred on phi = 0; DoubleExponential has lobes at
/// +-phi_0 / 2. Tabulated densities are linear between samples and zero
/// outside the sampled range; theta_big is then the sampled span.
class CouplingDistribution {
public:
    static CouplingDistribution uniform(double gamma_tilde, double theta_big);
    static CouplingDistribution exponential(double gamma_tilde, double theta_big);
    static CouplingDistribution triangular(double gamma_tilde, double theta_big);
    static CouplingDistribution raised_cosine(double gamma_tilde, double theta_big);
    static CouplingDistribution double_exponential(double gamma_tilde, double theta_big, double phi_0);
    /// Samples must have strictly increasing phi and v >= 0; no renormalisation here.
    static CouplingDistribution tabulated(double gamma_tilde, std::vector<TableSample> samples);
    static CouplingDistribution named(DistributionKind kind, double gamma_tilde, double theta_big,
                                      double phi_0 = 0.0);

    DistributionKind kind() const noexcept { return kind_; }
    double gamma_tilde() const noexcept { return gamma_tilde_; }
    double theta_big() const noexcept { return theta_big_; }
    double phi_0() const noexcept { return phi_0_; }
    std::span<const TableSample> table() const noexcept { return table_; }
    bool is_named() const noexcept { return kind_ != DistributionKind::Tabulated; }
    bool has_compact_support() const noexcept;

    /// (Gamma_tilde / 2)^{1/2}
    double total_mass() const noexcept;

private:
    CouplingDistribution(DistributionKind kind, double gamma_tilde, double theta_big, double phi_0,
                         std::vector<TableSample> table);

    DistributionKind kind_;
    double gamma_tilde_;
    double theta_big_;
    double phi_0_;
    std::vector<TableSample> table_;
};

enum class Regime { Markovian, ModeratelyNonMarkovian, DeepNonMarkovian };

std::string to_string(Regime regime);

struct RegimeThresholds {
    double markovian_below = 0.1;
    double deep_above = 10.0;
};

struct RegimeAssessment {
    double rho = 0.0;  ///< phase_span * Gamma_tilde / omega_a
    Regime regime = Regime::Markovian;
};

RegimeAssessment classify_rho(double rho, const RegimeThresholds& thresholds = {});

struct MarkovCharacterization {
    double lamb_shift = 0.0;
    double gamma_eff = 0.0;
    double gamma_dipole = 0.0;
    /// Filled only when omega_a is known.
    std::optional<RegimeAssessment> regime;
};

struct Scattering {
    double T = 0.0;
    double R = 0.0;
};

/// T = h^2 / (h^2 + b^2), R = b^2 / (h^2 + b^2) with h = delta - shift and b
/// the half-width term. Both vanishing (decoupled atom at its line centre) is
/// resolved as full transmission.
Scattering lorentz_form(double h, double b) noexcept;

struct SpectrumRow {
    double delta_k = 0.0;
    double T = 0.0;
    double R = 0.0;
};

struct SpectrumTable {
    std::vector<SpectrumRow> rows;
    std::string formula;
    std::vector<std::pair<std::string, std::string>> meta;  ///< parameter echo, in order

    double max_conservation_error() const noexcept;
};

}  // namespace giant_atom
