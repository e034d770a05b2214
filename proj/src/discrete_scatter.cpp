#include "giant_atom/discrete_scatter.hpp"

#include "giant_atom/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace giant_atom {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Offset of theta from the nearest multiple of 2 pi, in [-pi, pi].
double reduce_phase(double theta) { return std::remainder(theta, kTwoPi); }

// Identities used for the general sums (points sorted by phase, a_m = sqrt(gamma_m)):
//   sum_{m,n} a_m a_n cos(phi_m - phi_n)   = |sum_m a_m e^{i phi_m}|^2
//   sum_{m,n} a_m a_n sin|phi_m - phi_n|   = 2 Im sum_n a_n e^{i phi_n} sum_{m<n} a_m e^{-i phi_m}
LineTerms line_terms_scaled(const DiscreteCoupling& coupling, double scale)
{
    std::complex<double> total{0.0, 0.0};
    std::complex<double> prefix{0.0, 0.0};
    double sin_sum = 0.0;
    for (const auto& p : coupling.points()) {
        const double amp = std::sqrt(p.gamma);
        const auto e = std::polar(amp, scale * p.phi);
        sin_sum += (e * prefix).imag();
        prefix += std::conj(e);
        total += e;
    }
    return {sin_sum, 0.5 * std::norm(total)};
}

}  // namespace

LineTerms line_terms_general(const SystemParams& params, const DiscreteCoupling& coupling, Detuning delta)
{
    return line_terms_scaled(coupling, phase_scale(params, delta));
}

Scattering scatter_general(const SystemParams& params, const DiscreteCoupling& coupling, Detuning delta)
{
    const auto lt = line_terms_general(params, coupling, delta);
    return lorentz_form(delta.delta_k - lt.shift, lt.half_width);
}

RegularRatios regular_ratios_direct(int n_points, double theta)
{
    const double n = n_points;
    const double x = reduce_phase(theta);
    const double sh = std::sin(0.5 * x);
    const double one_minus_cos = 2.0 * sh * sh;
    const double sn = std::sin(0.5 * n * x) / sh;
    // N sin x - sin N x cancels down to O(x^3) near the seam.
    const long double lx = x;
    const long double num = static_cast<long double>(n) * std::sin(lx) - std::sin(static_cast<long double>(n) * lx);
    return {static_cast<double>(num / one_minus_cos), sn * sn};
}

RegularRatios regular_ratios_series(int n_points, double theta)
{
    const double n = n_points;
    const double n2 = n * n;
    const double x = reduce_phase(theta);
    const double x2 = x * x;
    const double shift = n * (n2 - 1.0) * x / 3.0
                         * (1.0 + (2.0 - 3.0 * n2) * x2 / 60.0
                            + (2.0 * n2 * n2 - 5.0 * n2 + 2.0) * x2 * x2 / 1680.0);
    const double width = n2 - n2 * (n2 - 1.0) * x2 / 12.0
                         + n2 * (n2 * n2 / 360.0 - n2 / 144.0 + 1.0 / 240.0) * x2 * x2;
    return {shift, width};
}

RegularRatios regular_ratios(int n_points, double theta)
{
    if (std::abs(reduce_phase(theta)) < kRegularSeriesRadius)
        return regular_ratios_series(n_points, theta);
    return regular_ratios_direct(n_points, theta);
}

LineTerms line_terms_regular(const SystemParams& params, const RegularArray& array, Detuning delta)
{
    const double theta = phase_scale(params, delta) * array.theta();
    const auto r = regular_ratios(array.n_points(), theta);
    return {0.5 * array.gamma() * r.shift_ratio, 0.5 * array.gamma() * r.width_ratio};
}

Scattering scatter_regular(const SystemParams& params, const RegularArray& array, Detuning delta)
{
    const auto lt = line_terms_regular(params, array, delta);
    return lorentz_form(delta.delta_k - lt.shift, lt.half_width);
}

MarkovCharacterization markov_characterize(const DiscreteCoupling& coupling)
{
    const auto lt = line_terms_scaled(coupling, 1.0);
    return {lt.shift, 2.0 * lt.half_width, coupling.gamma_dipole(), std::nullopt};
}

MarkovCharacterization markov_characterize(const DiscreteCoupling& coupling, const SystemParams& params,
                                           const RegimeThresholds& thresholds)
{
    auto m = markov_characterize(coupling);
    m.regime = classify_regime(params, coupling, thresholds);
    return m;
}

MarkovCharacterization markov_characterize_regular(const RegularArray& array)
{
    const auto r = regular_ratios(array.n_points(), array.theta());
    return {0.5 * array.gamma() * r.shift_ratio, array.gamma() * r.width_ratio, array.gamma_dipole(),
            std::nullopt};
}

Scattering scatter_markov(const MarkovCharacterization& markov, Detuning delta) noexcept
{
    return lorentz_form(delta.delta_k - markov.lamb_shift, 0.5 * markov.gamma_eff);
}

RegimeAssessment classify_regime(const SystemParams& params, const DiscreteCoupling& coupling,
                                 const RegimeThresholds& thresholds)
{
    return classify_rho(coupling.phase_span() * coupling.gamma_dipole() / params.omega_a(), thresholds);
}

std::vector<double> transmission_zeros(const SystemParams& params, const RegularArray& array,
                                       DetuningWindow window)
{
    std::vector<double> zeros;
    const double theta = array.theta();
    const int n = array.n_points();
    if (theta == 0.0 || n < 2)
        return zeros;
    const double w = params.omega_a();
    const double lo = std::max(window.lo, -w);
    if (!(window.hi > lo))
        return zeros;
    // theta = 2 n pi + offset, offset in [0, 2 pi)
    double offset = std::fmod(theta, kTwoPi);
    if (offset < 0.0)
        offset += kTwoPi;
    const double step = kTwoPi / n;
    // Zeros on the window edges survive the rounding of theta mod 2 pi.
    const double slack = 1e-12 * std::max({1.0, std::abs(window.lo), std::abs(window.hi)});
    const auto first = static_cast<long long>(std::floor((lo * theta / w + offset) / step));
    const auto last = static_cast<long long>(std::ceil((window.hi * theta / w + offset) / step));
    for (long long j = first; j <= last; ++j) {
        if (j % n == 0)
            continue;
        const double d = (double(j) * step - offset) * w / theta;
        if (d > -w && d >= window.lo - slack && d <= window.hi + slack)
            zeros.push_back(d);
    }
    std::sort(zeros.begin(), zeros.end());
    return zeros;
}

bool triple_peak_condition(const SystemParams& params, const RegularArray& array)
{
    const int n = array.n_points();
    if (n < 2 || array.theta() == 0.0)
        return false;
    const double x = reduce_phase(array.theta());
    if (std::abs(x) > 1e-9 * std::max(1.0, array.theta()))
        return false;
    const double threshold = 6.0 * params.omega_a() / (double(n) * (double(n) * n - 1.0) * array.gamma());
    return array.theta() > threshold;
}

std::vector<double> gamma_eff_zero_thetas(int n_points)
{
    std::vector<double> out;
    for (int j = 1; j < n_points; ++j)
        out.push_back(kTwoPi * j / n_points);
    return out;
}

std::vector<double> gamma_eff_local_max_thetas(int n_points)
{
    std::vector<double> out;
    const double n = n_points;
    // Derivative condition multiplied through by sin(t/2) sin(N t/2); changes
    // sign across every zero 2 pi j / N of the effective decay.
    auto g = [n](double t) {
        return n * std::cos(0.5 * n * t) * std::sin(0.5 * t) - std::cos(0.5 * t) * std::sin(0.5 * n * t);
    };
    for (int j = 1; j + 1 < n_points; ++j)
        out.push_back(bisect(g, kTwoPi * j / n, kTwoPi * (j + 1) / n, 1e-15));
    return out;
}

std::vector<VerifiedPoint> find_unity_points(const std::function<LineTerms(double)>& terms,
                                             std::span<const double> grid, double unity_tolerance)
{
    auto h = [&](double d) { return d - terms(d).shift; };
    std::vector<VerifiedPoint> out;
    for (double root : bracketed_roots(h, grid, 1e-13)) {
        const auto lt = terms(root);
        const auto s = lorentz_form(root - lt.shift, lt.half_width);
        const double residual = 1.0 - s.R;
        if (residual < unity_tolerance)
            out.push_back({root, residual});
    }
    return out;
}

std::optional<BandGap> widest_band(const std::function<double(double)>& reflectance,
                                   std::span<const double> grid, double threshold)
{
    if (grid.empty())
        return std::nullopt;
    std::vector<double> r(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        r[i] = reflectance(grid[i]);
    std::size_t best_lo = 0, best_hi = 0;
    bool found = false;
    for (std::size_t i = 0; i < grid.size();) {
        if (r[i] <= threshold) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < grid.size() && r[j + 1] > threshold)
            ++j;
        if (!found || grid[j] - grid[i] > grid[best_hi] - grid[best_lo]) {
            best_lo = i;
            best_hi = j;
            found = true;
        }
        i = j + 1;
    }
    if (!found)
        return std::nullopt;
    auto excess = [&](double d) { return reflectance(d) - threshold; };
    double lo = grid[best_lo];
    double hi = grid[best_hi];
    if (best_lo > 0)
        lo = bisect(excess, grid[best_lo - 1], grid[best_lo], 1e-14);
    if (best_hi + 1 < grid.size())
        hi = bisect(excess, grid[best_hi], grid[best_hi + 1], 1e-14);
    return BandGap{lo, hi, threshold};
}

std::optional<std::pair<double, double>> find_walls(const std::function<double(double)>& reflectance,
                                                    std::span<const double> grid, double centre,
                                                    double wall_level)
{
    if (grid.size() < 3)
        return std::nullopt;
    std::vector<double> r(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        r[i] = reflectance(grid[i]);
    const auto it = std::lower_bound(grid.begin(), grid.end(), centre);
    const auto c = static_cast<std::ptrdiff_t>(std::min<std::size_t>(it - grid.begin(), grid.size() - 1));
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
    const double step = grid[1] - grid[0];

    auto foot = [&](std::ptrdiff_t dir) -> std::optional<double> {
        std::ptrdiff_t i = c;
        while (i >= 0 && i < n && r[static_cast<std::size_t>(i)] >= wall_level)
            i += dir;
        if (i < 0 || i >= n)
            return std::nullopt;
        while (i + dir >= 0 && i + dir < n && r[static_cast<std::size_t>(i + dir)] < r[static_cast<std::size_t>(i)])
            i += dir;
        if (i + dir < 0 || i + dir >= n)
            return std::nullopt;
        const double x = grid[static_cast<std::size_t>(i)];
        return golden_minimum(reflectance, x - step, x + step, 1e-12 * std::max(1.0, std::abs(x)));
    };
    const auto left = foot(-1);
    const auto right = foot(+1);
    if (!left || !right)
        return std::nullopt;
    return std::make_pair(*left, *right);
}

FeatureReport feature_report(const SystemParams& params, const RegularArray& array, DetuningWindow window,
                             const FeatureOptions& options)
{
    if (!(window.hi > window.lo))
        throw DomainError("feature window needs lo < hi");
    if (window.lo <= -params.omega_a())
        throw DomainError("feature window must stay above -omega_a");
    if (options.grid_points < 3)
        throw GridResolutionError("feature grid needs at least three points");
    const double step = (window.hi - window.lo) / double(options.grid_points - 1);
    if (array.theta() > 0.0 && array.n_points() > 1) {
        const double spacing = kTwoPi * params.omega_a() / (array.n_points() * array.theta());
        if (spacing < 2.0 * step)
            throw GridResolutionError("grid step " + std::to_string(step) + " aliases side features spaced "
                                      + std::to_string(spacing));
    }
    const auto grid = linear_grid(window.lo, window.hi, options.grid_points);
    auto terms = [&](double d) { return line_terms_regular(params, array, {d}); };
    auto reflectance = [&](double d) { return scatter_regular(params, array, {d}).R; };

    FeatureReport rep;
    for (double z : transmission_zeros(params, array, window)) {
        const double r = reflectance(z);
        if (r < options.zero_tolerance)
            rep.transmission_zeros.push_back({z, r});
        else
            rep.warnings.push_back("transmission zero at " + std::to_string(z) + " failed verification");
    }
    rep.reflection_unity_points = find_unity_points(terms, grid, options.unity_tolerance);
    rep.triple_peak = triple_peak_condition(params, array);

    if (auto band = widest_band(reflectance, grid, options.r_gap)) {
        const double gamma_eff = markov_characterize_regular(array).gamma_eff;
        const double lorentz_width = gamma_eff * std::sqrt((1.0 - options.r_gap) / options.r_gap);
        if (rep.triple_peak || band->width() > 2.0 * lorentz_width)
            rep.band_gap = band;
    }
    rep.gamma_eff_zero_thetas = gamma_eff_zero_thetas(array.n_points());
    rep.gamma_eff_local_max_thetas = gamma_eff_local_max_thetas(array.n_points());

    const double mid = 0.5 * (window.lo + window.hi);
    double centre = mid;
    if (!rep.reflection_unity_points.empty()) {
        centre = std::min_element(rep.reflection_unity_points.begin(), rep.reflection_unity_points.end(),
                                  [mid](const VerifiedPoint& a, const VerifiedPoint& b) {
                                      return std::abs(a.delta_k - mid) < std::abs(b.delta_k - mid);
                                  })
                     ->delta_k;
    }
    rep.walls = find_walls(reflectance, grid, centre, options.wall_level);
    return rep;
}

}  // namespace giant_atom
