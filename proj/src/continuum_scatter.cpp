#include "giant_atom/continuum_scatter.hpp"

#include "giant_atom/roots.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>

namespace giant_atom {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
constexpr double kPi4 = kPi2 * kPi2;

double sq(double x) { return x * x; }

// Odd power series sum_k c_k x^(2k+1).
template <std::size_t N>
double odd_series(const double (&c)[N], double x)
{
    const double x2 = x * x;
    double acc = 0.0;
    for (std::size_t k = N; k-- > 0;)
        acc = acc * x2 + c[k];
    return acc * x;
}

// Small-Theta expansions of the closed-form Lamb shifts (per unit Gamma_tilde).
constexpr double kUniformShiftSeries[] = {1.0 / 6.0, -1.0 / 120.0, 1.0 / 5040.0, -1.0 / 362880.0,
                                          1.0 / 39916800.0, -1.6059043836821614599e-10,
                                          7.6471637318198164759e-13};
constexpr double kTriangularShiftSeries[] = {0.11666666666666666667, -0.0030753968253968253968,
                                             0.000043747244268077601411, -4.0005085578002244669e-7,
                                             2.5681924010917066473e-9, -1.2233968384245335304e-11,
                                             4.4981943287665858812e-14};
constexpr double kRaisedCosineShiftSeries[] = {0.10334092689020555951, -0.0021355849813507173690,
                                               0.000023916691770728558441, -1.7385581776919807426e-7,
                                               8.9894893388496387079e-10, -3.4991071048312464175e-12,
                                               1.0662423709921318787e-14};

// Expansions about Theta = 2 pi in e = Theta - 2 pi, through e^4.
constexpr double kRaisedCosineShiftAt2Pi[] = {15.0 / (16.0 * kPi), (kPi2 - 15.0) / (24.0 * kPi2),
                                              (105.0 - 16.0 * kPi2) / (256.0 * kPi2 * kPi),
                                              (460.0 * kPi2 - 1995.0 - 16.0 * kPi4) / (7680.0 * kPi4),
                                              (3255.0 - 960.0 * kPi2 + 64.0 * kPi4) / (20480.0 * kPi4 * kPi)};
constexpr double kRaisedCosineDecayAt2Pi[] = {0.25, -3.0 / (8.0 * kPi), 23.0 / (64.0 * kPi2) - 1.0 / 48.0,
                                              (kPi2 - 9.0) / (32.0 * kPi2 * kPi),
                                              (9045.0 - 1380.0 * kPi2 + 32.0 * kPi4) / (46080.0 * kPi4)};

double poly(const double (&c)[5], double e)
{
    return c[0] + e * (c[1] + e * (c[2] + e * (c[3] + e * c[4])));
}

double uniform_shift(double t)
{
    return t < kSmallThetaSeriesBelow ? odd_series(kUniformShiftSeries, t) : (t - std::sin(t)) / (t * t);
}

double triangular_shift(double t)
{
    if (t < kSmallThetaSeriesBelow)
        return odd_series(kTriangularShiftSeries, t);
    return 4.0 / (3.0 * sq(sq(t))) * (12.0 * t + t * t * t - 48.0 * std::sin(0.5 * t) + 12.0 * std::sin(t));
}

double raised_cosine_shift(double t)
{
    if (t < kSmallThetaSeriesBelow)
        return odd_series(kRaisedCosineShiftSeries, t);
    const double e = t - 2.0 * kPi;
    if (std::abs(e) < kRaisedCosineSeriesRadius)
        return poly(kRaisedCosineShiftAt2Pi, e);
    // Numerator and denominator both vanish like e^2 near 2 pi.
    const long double lt = t;
    const long double pi2 = std::numbers::pi_v<long double> * std::numbers::pi_v<long double>;
    const long double pi4 = pi2 * pi2;
    const long double t3 = lt * lt * lt;
    const long double den = t3 - 4.0L * pi2 * lt;
    return static_cast<double>((32.0L * pi4 * (lt - std::sin(lt)) - 20.0L * pi2 * t3 + 3.0L * t3 * lt * lt)
                               / (2.0L * den * den));
}

double raised_cosine_decay(double t)
{
    const double e = t - 2.0 * kPi;
    if (std::abs(e) < kRaisedCosineSeriesRadius)
        return poly(kRaisedCosineDecayAt2Pi, e);
    // 32 pi^4 (1 - cos t) / (t^3 - 4 pi^2 t)^2 with 1 - cos t = 2 sin^2(t / 2)
    return 64.0 * kPi4 * sq(std::sin(0.5 * t)) / sq(t * (t * t - 4.0 * kPi2));
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

// Antiderivative of the unit-mass two-sided exponential of width t, centred at 0.
double exp_cdf(double phi, double t)
{
    const double half = -0.5 * std::expm1(-2.0 * std::abs(phi) / t);
    return phi < 0.0 ? -half : half;
}

double table_value(std::span<const TableSample> tab, double phi)
{
    if (phi < tab.front().phi || phi > tab.back().phi)
        return 0.0;
    auto it = std::upper_bound(tab.begin(), tab.end(), phi,
                               [](double p, const TableSample& s) { return p < s.phi; });
    if (it == tab.end())
        return tab.back().v;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (phi - lo.phi) / (hi.phi - lo.phi);
    return lo.v + w * (hi.v - lo.v);
}

double table_mass(std::span<const TableSample> tab, double a, double b)
{
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < tab.size(); ++i) {
        const double lo = std::max(a, tab[i].phi);
        const double hi = std::min(b, tab[i + 1].phi);
        if (hi <= lo)
            continue;
        m += 0.5 * (hi - lo) * (table_value(tab, lo) + table_value(tab, hi));
    }
    return m;
}

double exponential_half_length(double theta_big, double tail_fraction)
{
    if (!(tail_fraction > 0.0 && tail_fraction < 1.0))
        throw DomainError("tail fraction must lie in (0, 1)");
    return 0.5 * theta_big * std::log(1.0 / tail_fraction);
}

// Kinks plus points at geometrically growing distances from each, so panels
// next to an exponential cusp are no wider than their distance to it.
std::vector<double> graded_breakpoints(const CouplingDistribution& dist, const std::vector<double>& kinks,
                                       double span)
{
    std::vector<double> out(kinks);
    const bool tails = dist.kind() == DistributionKind::Exponential
                       || dist.kind() == DistributionKind::DoubleExponential;
    if (!tails)
        return out;
    for (double k : kinks)
        for (double d = dist.theta_big() / 16.0; d < span; d *= 2.0) {
            out.push_back(k - d);
            out.push_back(k + d);
        }
    return out;
}

}  // namespace

double distribution_value(const CouplingDistribution& dist, double phi)
{
    const double c = dist.total_mass();
    const double t = dist.theta_big();
    const double a = std::abs(phi);
    switch (dist.kind()) {
    case DistributionKind::Uniform:
        return a <= 0.5 * t ? c / t : 0.0;
    case DistributionKind::Exponential:
        return c / t * std::exp(-2.0 * a / t);
    case DistributionKind::Triangular:
        return a <= 0.5 * t ? 2.0 * c / t * (1.0 - 2.0 * a / t) : 0.0;
    case DistributionKind::RaisedCosine:
        return a <= 0.5 * t ? 2.0 * c / t * sq(std::cos(kPi * phi / t)) : 0.0;
    case DistributionKind::DoubleExponential: {
        const double h = 0.5 * dist.phi_0();
        return 0.5 * c / t * (std::exp(-2.0 * std::abs(phi + h) / t) + std::exp(-2.0 * std::abs(phi - h) / t));
    }
    case DistributionKind::Tabulated:
        return table_value(dist.table(), phi);
    }
    return 0.0;
}

double distribution_mass(const CouplingDistribution& dist, double a, double b)
{
    if (!(b > a))
        return 0.0;
    const double c = dist.total_mass();
    const double t = dist.theta_big();
    auto clamp = [t](double x) { return std::clamp(x, -0.5 * t, 0.5 * t); };
    switch (dist.kind()) {
    case DistributionKind::Uniform:
        return c / t * (clamp(b) - clamp(a));
    case DistributionKind::Exponential:
        return c * (exp_cdf(b, t) - exp_cdf(a, t));
    case DistributionKind::Triangular: {
        auto cdf = [t](double x) {
            const double ax = std::abs(x);
            const double g = 2.0 * ax / t - 2.0 * ax * ax / (t * t);
            return x < 0.0 ? -g : g;
        };
        return c * (cdf(clamp(b)) - cdf(clamp(a)));
    }
    case DistributionKind::RaisedCosine: {
        auto cdf = [t](double x) { return (x + t / (2.0 * kPi) * std::sin(2.0 * kPi * x / t)) / t; };
        return c * (cdf(clamp(b)) - cdf(clamp(a)));
    }
    case DistributionKind::DoubleExponential: {
        const double h = 0.5 * dist.phi_0();
        return 0.5 * c
               * (exp_cdf(b + h, t) - exp_cdf(a + h, t) + exp_cdf(b - h, t) - exp_cdf(a - h, t));
    }
    case DistributionKind::Tabulated:
        return table_mass(dist.table(), a, b);
    }
    return 0.0;
}

std::vector<double> distribution_kinks(const CouplingDistribution& dist)
{
    const double t = dist.theta_big();
    switch (dist.kind()) {
    case DistributionKind::Uniform:
    case DistributionKind::RaisedCosine:
        return {-0.5 * t, 0.5 * t};
    case DistributionKind::Exponential:
        return {0.0};
    case DistributionKind::Triangular:
        return {-0.5 * t, 0.0, 0.5 * t};
    case DistributionKind::DoubleExponential:
        if (dist.phi_0() == 0.0)
            return {0.0};
        return {-0.5 * dist.phi_0(), 0.5 * dist.phi_0()};
    case DistributionKind::Tabulated: {
        std::vector<double> k;
        for (const auto& s : dist.table())
            k.push_back(s.phi);
        return k;
    }
    }
    return {};
}

Interval truncated_support(const CouplingDistribution& dist, double tail_fraction)
{
    const double t = dist.theta_big();
    switch (dist.kind()) {
    case DistributionKind::Exponential: {
        const double l = exponential_half_length(t, tail_fraction);
        return {-l, l};
    }
    case DistributionKind::DoubleExponential: {
        const double l = exponential_half_length(t, tail_fraction) + 0.5 * dist.phi_0();
        return {-l, l};
    }
    case DistributionKind::Tabulated:
        return {dist.table().front().phi, dist.table().back().phi};
    default:
        return {-0.5 * t, 0.5 * t};
    }
}

std::vector<Interval> support_lobes(const CouplingDistribution& dist, double tail_fraction)
{
    if (dist.kind() == DistributionKind::DoubleExponential) {
        const double l = exponential_half_length(dist.theta_big(), tail_fraction);
        const double h = 0.5 * dist.phi_0();
        if (h > l)
            return {{-h - l, -h + l}, {h - l, h + l}};
    }
    return {truncated_support(dist, tail_fraction)};
}

LineTerms closed_line_terms(const CouplingDistribution& dist, double scale)
{
    const double g = dist.gamma_tilde();
    const double t = scale * dist.theta_big();
    switch (dist.kind()) {
    case DistributionKind::Uniform:
        return {g * uniform_shift(t), 0.5 * g * sq(sinc(0.5 * t))};
    case DistributionKind::Exponential:
        return {g * t * (t * t + 12.0) / (2.0 * sq(t * t + 4.0)), 8.0 * g / sq(t * t + 4.0)};
    case DistributionKind::Triangular:
        return {g * triangular_shift(t), 0.5 * g * sq(sq(sinc(0.25 * t)))};
    case DistributionKind::RaisedCosine:
        return {g * raised_cosine_shift(t), 0.5 * g * raised_cosine_decay(t)};
    case DistributionKind::DoubleExponential: {
        const double p = scale * dist.phi_0();
        const double overlap = std::exp(-2.0 * dist.phi_0() / dist.theta_big());
        const double d = sq(t * t + 4.0);
        const double shift = g / (4.0 * d)
                             * ((8.0 * p + 12.0 * t + t * t * t + 2.0 * t * t * p) * overlap + 12.0 * t
                                + t * t * t + 16.0 * std::sin(p));
        return {shift, 4.0 * g * (1.0 + std::cos(p)) / d};
    }
    case DistributionKind::Tabulated:
        break;
    }
    throw UnsupportedVariantError("closed forms exist only for named distributions; use quadrature");
}

MarkovCharacterization markov_characterize_closed(const CouplingDistribution& dist)
{
    const auto lt = closed_line_terms(dist, 1.0);
    return {lt.shift, 2.0 * lt.half_width, dist.gamma_tilde(), std::nullopt};
}

double autocorrelation(const CouplingDistribution& dist, double u, const ContinuumQuadratureOptions& opts)
{
    const auto sup = truncated_support(dist, opts.tail_fraction);
    const double hi = sup.hi - u;
    if (!(hi > sup.lo))
        return 0.0;
    std::vector<double> extras;
    for (double k : distribution_kinks(dist)) {
        extras.push_back(k);
        extras.push_back(k - u);
    }
    const auto pts = panel_breakpoints(sup.lo, hi, 0.0, graded_breakpoints(dist, extras, hi - sup.lo));
    const double c = dist.total_mass();
    QuadratureOptions q;
    q.rel_tol = 1e-13;
    q.abs_tol = 1e-4 * opts.rel_tol * c * c / (sup.hi - sup.lo);
    q.max_intervals = opts.max_intervals;
    return integrate([&](double x) { return distribution_value(dist, x) * distribution_value(dist, x + u); },
                     pts, q)
        .value;
}

ContinuumIntegrals continuum_integrals(const CouplingDistribution& dist, double scale,
                                       const ContinuumQuadratureOptions& opts)
{
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw DomainError("phase scale must be positive");
    const auto sup = truncated_support(dist, opts.tail_fraction);
    const auto kinks = distribution_kinks(dist);
    const double c = dist.total_mass();
    const double half_period = kPi / scale;
    ContinuumIntegrals out;
    out.tail_fraction = dist.has_compact_support() ? 0.0 : opts.tail_fraction;

    // Fourier transform of v: half_width = |F|^2.
    QuadratureOptions qf;
    qf.rel_tol = 1e-3 * opts.rel_tol;
    qf.abs_tol = 1e-3 * opts.rel_tol * c;
    qf.max_intervals = opts.max_intervals;
    const auto fpts = panel_breakpoints(sup.lo, sup.hi, half_period, graded_breakpoints(dist, kinks, sup.hi - sup.lo));
    const auto ft = integrate(
        [&](double x) { return distribution_value(dist, x) * std::polar(1.0, scale * x); }, fpts, qf);
    out.transform = ft.value;
    out.half_width = std::norm(ft.value);
    out.width_error = 2.0 * std::abs(ft.value) * ft.abs_error + ft.abs_error * ft.abs_error;
    out.evaluations += ft.evaluations;

    // shift = 2 int_0^L c(u) sin(s u) du, c the autocorrelation of v.
    const double span = sup.hi - sup.lo;
    std::vector<double> lags;
    if (kinks.size() <= 64) {
        for (double a : kinks)
            for (double b : kinks)
                lags.push_back(std::abs(a - b));
        for (double a : kinks) {
            lags.push_back(a - sup.lo);
            lags.push_back(sup.hi - a);
        }
    }
    const auto upts = panel_breakpoints(0.0, span, half_period, graded_breakpoints(dist, lags, span));
    QuadratureOptions qs;
    qs.rel_tol = opts.rel_tol;
    qs.abs_tol = 1e-3 * opts.rel_tol * c * c;
    qs.max_intervals = opts.max_intervals;
    long inner = 0;
    const auto st = integrate(
        [&](double u) {
            ++inner;
            return autocorrelation(dist, u, opts) * std::sin(scale * u);
        },
        upts, qs);
    out.shift = 2.0 * st.value;
    out.shift_error = 2.0 * st.abs_error;
    out.evaluations += inner;
    return out;
}

MarkovCharacterization markov_characterize_quadrature(const CouplingDistribution& dist,
                                                      const ContinuumQuadratureOptions& opts)
{
    const auto ci = continuum_integrals(dist, 1.0, opts);
    return {ci.shift, 2.0 * ci.half_width, dist.gamma_tilde(), std::nullopt};
}

Scattering scatter_continuum(const SystemParams& params, const CouplingDistribution& dist, Detuning delta,
                             const ContinuumQuadratureOptions& opts)
{
    const auto ci = continuum_integrals(dist, phase_scale(params, delta), opts);
    return lorentz_form(delta.delta_k - ci.shift, ci.half_width);
}

Scattering scatter_continuum_closed(const SystemParams& params, const CouplingDistribution& dist,
                                    Detuning delta)
{
    const auto lt = closed_line_terms(dist, phase_scale(params, delta));
    return lorentz_form(delta.delta_k - lt.shift, lt.half_width);
}

LineTerms line_terms_double_exp(const SystemParams& params, double gamma_tilde, double theta_big, double phi_0,
                                Detuning delta)
{
    const auto dist = CouplingDistribution::double_exponential(gamma_tilde, theta_big, phi_0);
    return closed_line_terms(dist, phase_scale(params, delta));
}

Scattering scatter_double_exp(const SystemParams& params, double gamma_tilde, double theta_big, double phi_0,
                              Detuning delta)
{
    const auto lt = line_terms_double_exp(params, gamma_tilde, theta_big, phi_0, delta);
    return lorentz_form(delta.delta_k - lt.shift, lt.half_width);
}

RegimeAssessment classify_regime(const SystemParams& params, const CouplingDistribution& dist,
                                 const RegimeThresholds& thresholds)
{
    double span = dist.theta_big();
    if (dist.kind() == DistributionKind::DoubleExponential)
        span += dist.phi_0();
    return classify_rho(span * dist.gamma_tilde() / params.omega_a(), thresholds);
}

DiscreteCoupling discretize(const CouplingDistribution& dist, int m_points, double tail_fraction)
{
    if (m_points < 2)
        throw DomainError("discretization needs M >= 2");
    const auto lobes = support_lobes(dist, tail_fraction);
    const double total = dist.total_mass();
    double kept = 0.0;
    for (const auto& l : lobes)
        kept += distribution_mass(dist, l.lo, l.hi);
    const double omitted = 1.0 - kept / total;
    if (omitted > 1e-6)
        throw TruncationError("truncation omits mass fraction " + std::to_string(omitted));

    std::vector<CouplingPoint> pts;
    pts.reserve(static_cast<std::size_t>(m_points));
    const int n_lobes = static_cast<int>(lobes.size());
    for (int li = 0; li < n_lobes; ++li) {
        const int cells = m_points / n_lobes + (li < m_points % n_lobes ? 1 : 0);
        const auto& l = lobes[static_cast<std::size_t>(li)];
        const double h = (l.hi - l.lo) / cells;
        for (int j = 0; j < cells; ++j) {
            const double a = l.lo + h * j;
            const double b = (j + 1 == cells) ? l.hi : l.lo + h * (j + 1);
            const double mass = distribution_mass(dist, a, b);
            pts.push_back({0.5 * (a + b), 2.0 * mass * mass});
        }
    }
    return DiscreteCoupling(std::move(pts));
}

LoadedTable load_tabulated(std::istream& in, double gamma_tilde)
{
    std::vector<TableSample> samples;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        double phi = 0.0, v = 0.0;
        if (!(ls >> phi)) {
            if (line.find_first_not_of(" \t\r,") == std::string::npos)
                continue;
            throw TableFormatError("line " + std::to_string(lineno) + ": expected two numbers");
        }
        if (ls.peek() == ',')
            ls.get();
        if (!(ls >> v))
            throw TableFormatError("line " + std::to_string(lineno) + ": expected two numbers");
        std::string rest;
        if (ls >> rest)
            throw TableFormatError("line " + std::to_string(lineno) + ": trailing content '" + rest + "'");
        if (!samples.empty() && !(phi > samples.back().phi))
            throw TableFormatError("line " + std::to_string(lineno) + ": phases must be strictly increasing");
        if (v < 0.0 || !std::isfinite(v) || !std::isfinite(phi))
            throw TableFormatError("line " + std::to_string(lineno) + ": density must be finite and >= 0");
        samples.push_back({phi, v});
    }
    if (samples.size() < 2)
        throw TableFormatError("table needs at least two samples");
    const double raw = table_mass(samples, samples.front().phi, samples.back().phi);
    if (!(raw > 0.0))
        throw TableFormatError("table has zero mass");
    const double target = std::sqrt(0.5 * gamma_tilde);
    const double factor = target / raw;
    for (auto& s : samples)
        s.v *= factor;
    LoadedTable out{CouplingDistribution::tabulated(gamma_tilde, std::move(samples)), raw,
                    std::abs(raw / target - 1.0), {}};
    if (out.correction > 1e-6) {
        std::ostringstream w;
        w << "tabulated density renormalised by relative " << out.correction;
        out.warnings.push_back(w.str());
    }
    return out;
}

LoadedTable load_tabulated_file(const std::string& path, double gamma_tilde)
{
    std::ifstream in(path);
    if (!in)
        throw TableFormatError("cannot open '" + path + "'");
    return load_tabulated(in, gamma_tilde);
}

FeatureReport feature_report_double_exp(const SystemParams& params, const CouplingDistribution& dist,
                                        DetuningWindow window, const FeatureOptions& options)
{
    if (dist.kind() != DistributionKind::DoubleExponential)
        throw UnsupportedVariantError("feature report needs a double-exponential distribution");
    if (!(window.hi > window.lo))
        throw DomainError("feature window needs lo < hi");
    if (window.lo <= -params.omega_a())
        throw DomainError("feature window must stay above -omega_a");
    if (options.grid_points < 3)
        throw GridResolutionError("feature grid needs at least three points");
    const double w = params.omega_a();
    const double p0 = dist.phi_0();
    const double step = (window.hi - window.lo) / double(options.grid_points - 1);
    if (p0 > 0.0) {
        const double spacing = 2.0 * kPi * w / p0;
        if (spacing < 2.0 * step)
            throw GridResolutionError("grid step " + std::to_string(step) + " aliases side features spaced "
                                      + std::to_string(spacing));
    }
    const auto grid = linear_grid(window.lo, window.hi, options.grid_points);
    auto terms = [&](double d) { return closed_line_terms(dist, phase_scale(params, {d})); };
    auto reflectance = [&](double d) { return scatter_continuum_closed(params, dist, {d}).R; };

    FeatureReport rep;
    if (p0 > 0.0) {
        // (1 + d / w) p0 = (2 j + 1) pi
        const auto first = static_cast<long long>(std::ceil(((1.0 + window.lo / w) * p0 / kPi - 1.0) / 2.0));
        const auto last = static_cast<long long>(std::floor(((1.0 + window.hi / w) * p0 / kPi - 1.0) / 2.0));
        for (long long j = std::max(0LL, first); j <= last; ++j) {
            const double d = ((2.0 * double(j) + 1.0) * kPi / p0 - 1.0) * w;
            if (d < window.lo || d > window.hi || d <= -w)
                continue;
            const double r = reflectance(d);
            if (r < options.zero_tolerance)
                rep.transmission_zeros.push_back({d, r});
            else
                rep.warnings.push_back("transmission zero at " + std::to_string(d) + " failed verification");
        }
    }
    rep.reflection_unity_points = find_unity_points(terms, grid, options.unity_tolerance);

    const double mid = 0.5 * (window.lo + window.hi);
    double centre = mid;
    if (!rep.reflection_unity_points.empty()) {
        centre = std::min_element(rep.reflection_unity_points.begin(), rep.reflection_unity_points.end(),
                                  [mid](const VerifiedPoint& a, const VerifiedPoint& b) {
                                      return std::abs(a.delta_k - mid) < std::abs(b.delta_k - mid);
                                  })
                     ->delta_k;
    }
    // Unity points between the transmission zeros that flank the centre.
    double left = window.lo, right = window.hi;
    for (const auto& z : rep.transmission_zeros) {
        if (z.delta_k < centre)
            left = std::max(left, z.delta_k);
        else if (z.delta_k > centre)
            right = std::min(right, z.delta_k);
    }
    const auto central = std::count_if(rep.reflection_unity_points.begin(), rep.reflection_unity_points.end(),
                                       [&](const VerifiedPoint& p) { return p.delta_k > left && p.delta_k < right; });
    rep.triple_peak = central == 3;

    if (auto band = widest_band(reflectance, grid, options.r_gap)) {
        const double gamma_eff = markov_characterize_closed(dist).gamma_eff;
        const double lorentz_width = gamma_eff * std::sqrt((1.0 - options.r_gap) / options.r_gap);
        if (rep.triple_peak || band->width() > 2.0 * lorentz_width)
            rep.band_gap = band;
    }
    // Effective decay vanishes for phi_0 = pi mod 2 pi.
    rep.gamma_eff_zero_thetas = {kPi};
    rep.walls = find_walls(reflectance, grid, centre, options.wall_level);
    return rep;
}

}  // namespace giant_atom
