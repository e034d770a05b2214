#include "giant_atom/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace giant_atom {

namespace {

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

SystemParams::SystemParams(double omega_a) : omega_a_(omega_a)
{
    if (!finite_positive(omega_a))
        throw DomainError("omega_a must be finite and positive");
}

double phase_scale(const SystemParams& params, Detuning delta)
{
    if (!std::isfinite(delta.delta_k))
        throw DomainError("detuning must be finite");
    if (delta.delta_k <= -params.omega_a())
        throw DomainError("detuning must exceed -omega_a (wave vector k > 0)");
    return 1.0 + delta.delta_k / params.omega_a();
}

double detuned_phase(const SystemParams& params, Detuning delta, double phi_tilde)
{
    return phase_scale(params, delta) * phi_tilde;
}

DiscreteCoupling::DiscreteCoupling(std::vector<CouplingPoint> points) : points_(std::move(points))
{
    if (points_.empty())
        throw DomainError("coupling needs at least one point");
    for (const auto& p : points_) {
        if (!std::isfinite(p.phi))
            throw DomainError("coupling phase must be finite");
        if (!std::isfinite(p.gamma) || p.gamma < 0.0)
            throw DomainError("coupling rate must be finite and non-negative");
    }
    std::stable_sort(points_.begin(), points_.end(),
                     [](const CouplingPoint& a, const CouplingPoint& b) { return a.phi < b.phi; });
}

double DiscreteCoupling::phase_span() const noexcept
{
    return points_.back().phi - points_.front().phi;
}

double DiscreteCoupling::gamma_dipole() const noexcept
{
    double s = 0.0;
    for (const auto& p : points_)
        s += std::sqrt(p.gamma);
    return s * s;
}

RegularArray::RegularArray(int n_points, double gamma, double theta)
    : n_points_(n_points), gamma_(gamma), theta_(theta)
{
    if (n_points < 1)
        throw DomainError("regular array needs N >= 1");
    if (!finite_positive(gamma))
        throw DomainError("regular array rate must be finite and positive");
    if (!std::isfinite(theta) || theta < 0.0)
        throw DomainError("neighbour phase delay must be finite and non-negative");
}

DiscreteCoupling expand_regular(const RegularArray& array)
{
    std::vector<CouplingPoint> pts;
    pts.reserve(static_cast<std::size_t>(array.n_points()));
    for (int m = 0; m < array.n_points(); ++m)
        pts.push_back({m * array.theta(), array.gamma()});
    return DiscreteCoupling(std::move(pts));
}

std::string to_string(DistributionKind kind)
{
    switch (kind) {
    case DistributionKind::Uniform: return "uniform";
    case DistributionKind::Exponential: return "exponential";
    case DistributionKind::Triangular: return "triangular";
    case DistributionKind::RaisedCosine: return "raised_cosine";
    case DistributionKind::DoubleExponential: return "double_exponential";
    case DistributionKind::Tabulated: return "tabulated";
    }
    return "unknown";
}

DistributionKind distribution_kind_from_string(const std::string& name)
{
    for (auto k : {DistributionKind::Uniform, DistributionKind::Exponential, DistributionKind::Triangular,
                   DistributionKind::RaisedCosine, DistributionKind::DoubleExponential,
                   DistributionKind::Tabulated}) {
        if (to_string(k) == name)
            return k;
    }
    throw DomainError("unknown distribution '" + name + "'");
}

CouplingDistribution::CouplingDistribution(DistributionKind kind, double gamma_tilde, double theta_big,
                                           double phi_0, std::vector<TableSample> table)
    : kind_(kind), gamma_tilde_(gamma_tilde), theta_big_(theta_big), phi_0_(phi_0), table_(std::move(table))
{
    if (!finite_positive(gamma_tilde))
        throw DomainError("Gamma_tilde must be finite and positive");
    if (!finite_positive(theta_big))
        throw DomainError("distribution width Theta must be finite and positive");
    if (!std::isfinite(phi_0) || phi_0 < 0.0)
        throw DomainError("lobe separation phi_0 must be finite and non-negative");
}

CouplingDistribution CouplingDistribution::uniform(double gamma_tilde, double theta_big)
{
    return {DistributionKind::Uniform, gamma_tilde, theta_big, 0.0, {}};
}

CouplingDistribution CouplingDistribution::exponential(double gamma_tilde, double theta_big)
{
    return {DistributionKind::Exponential, gamma_tilde, theta_big, 0.0, {}};
}

CouplingDistribution CouplingDistribution::triangular(double gamma_tilde, double theta_big)
{
    return {DistributionKind::Triangular, gamma_tilde, theta_big, 0.0, {}};
}

CouplingDistribution CouplingDistribution::raised_cosine(double gamma_tilde, double theta_big)
{
    return {DistributionKind::RaisedCosine, gamma_tilde, theta_big, 0.0, {}};
}

CouplingDistribution CouplingDistribution::double_exponential(double gamma_tilde, double theta_big, double phi_0)
{
    return {DistributionKind::DoubleExponential, gamma_tilde, theta_big, phi_0, {}};
}

CouplingDistribution CouplingDistribution::tabulated(double gamma_tilde, std::vector<TableSample> samples)
{
    if (samples.size() < 2)
        throw DomainError("tabulated distribution needs at least two samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i].phi) || !std::isfinite(samples[i].v))
            throw DomainError("tabulated distribution has non-finite entries");
        if (samples[i].v < 0.0)
            throw DomainError("tabulated distribution must be non-negative");
        if (i > 0 && !(samples[i].phi > samples[i - 1].phi))
            throw DomainError("tabulated phases must be strictly increasing");
    }
    const double span = samples.back().phi - samples.front().phi;
    return {DistributionKind::Tabulated, gamma_tilde, span, 0.0, std::move(samples)};
}

CouplingDistribution CouplingDistribution::named(DistributionKind kind, double gamma_tilde, double theta_big,
                                                 double phi_0)
{
    switch (kind) {
    case DistributionKind::Uniform: return uniform(gamma_tilde, theta_big);
    case DistributionKind::Exponential: return exponential(gamma_tilde, theta_big);
    case DistributionKind::Triangular: return triangular(gamma_tilde, theta_big);
    case DistributionKind::RaisedCosine: return raised_cosine(gamma_tilde, theta_big);
    case DistributionKind::DoubleExponential: return double_exponential(gamma_tilde, theta_big, phi_0);
    case DistributionKind::Tabulated: break;
    }
    throw DomainError("tabulated distributions are built from samples");
}

bool CouplingDistribution::has_compact_support() const noexcept
{
    return kind_ != DistributionKind::Exponential && kind_ != DistributionKind::DoubleExponential;
}

double CouplingDistribution::total_mass() const noexcept
{
    return std::sqrt(0.5 * gamma_tilde_);
}

std::string to_string(Regime regime)
{
    switch (regime) {
    case Regime::Markovian: return "markovian";
    case Regime::ModeratelyNonMarkovian: return "moderately_non_markovian";
    case Regime::DeepNonMarkovian: return "deep_non_markovian";
    }
    return "unknown";
}

RegimeAssessment classify_rho(double rho, const RegimeThresholds& thresholds)
{
    Regime r = Regime::ModeratelyNonMarkovian;
    if (rho < thresholds.markovian_below)
        r = Regime::Markovian;
    else if (rho > thresholds.deep_above)
        r = Regime::DeepNonMarkovian;
    return {rho, r};
}

Scattering lorentz_form(double h, double b) noexcept
{
    const double scale = std::max(std::abs(h), std::abs(b));
    if (scale == 0.0)
        return {1.0, 0.0};
    const double hs = h / scale;
    const double bs = b / scale;
    const double h2 = hs * hs;
    const double b2 = bs * bs;
    const double den = h2 + b2;
    return {h2 / den, b2 / den};
}

double SpectrumTable::max_conservation_error() const noexcept
{
    double e = 0.0;
    for (const auto& r : rows)
        e = std::max(e, std::abs(r.T + r.R - 1.0));
    return e;
}

}  // namespace giant_atom
