#pragma once

// Globally adaptive Gauss-Kronrod (G7/K15) quadrature over a set of panels.
//
// Callers pass every point where the integrand is not smooth (kinks, support
// ends) and, for oscillatory integrands, the period boundaries of the fastest
// phase. The interval with the largest error estimate is bisected until the
// summed estimate meets max(abs_tol, rel_tol * |I|).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace giant_atom {

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved, double requested)
        : std::runtime_error(what + " (achieved error " + std::to_string(achieved) + ", requested "
                             + std::to_string(requested) + ")"),
          achieved_(achieved), requested_(requested)
    {}

    double achieved() const noexcept { return achieved_; }
    double requested() const noexcept { return requested_; }

private:
    double achieved_;
    double requested_;
};

struct QuadratureOptions {
    double abs_tol = 0.0;
    double rel_tol = 1e-10;
    int max_intervals = 200000;
};

template <class T>
struct QuadratureResult {
    T value{};
    double abs_error = 0.0;
    long evaluations = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
    double a;
    double b;
    T value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gauss_kronrod15(F& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const T fc = f(c);
    T kronrod = fc * kKronrodWeights[7];
    T gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kKronrodNodes[static_cast<std::size_t>(j)];
        const T f1 = f(c - dx);
        const T f2 = f(c + dx);
        kronrod += (f1 + f2) * kKronrodWeights[static_cast<std::size_t>(j)];
        if (j % 2 == 1)
            gauss += (f1 + f2) * kGaussWeights[static_cast<std::size_t>(j / 2)];
    }
    kronrod *= h;
    gauss *= h;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Integrate f over [front, back] of `breakpoints` (sorted, at least two entries).
template <class F>
auto integrate(F&& f, std::span<const double> breakpoints, const QuadratureOptions& opts)
    -> QuadratureResult<decltype(f(0.0))>
{
    using T = decltype(f(0.0));
    if (breakpoints.size() < 2)
        throw std::invalid_argument("integrate: need at least two breakpoints");
    std::priority_queue<detail::Panel<T>> queue;
    T total{};
    double error = 0.0;
    long evals = 0;
    std::vector<detail::Panel<T>> settled;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i + 1] > breakpoints[i]))
            continue;
        auto p = detail::gauss_kronrod15<T>(f, breakpoints[i], breakpoints[i + 1]);
        evals += 15;
        total += p.value;
        error += p.error;
        queue.push(p);
    }
    int intervals = static_cast<int>(queue.size());
    auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
    while (!queue.empty() && error > target()) {
        auto worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)
            || (worst.b - worst.a) < 64.0 * std::numeric_limits<double>::epsilon() * std::abs(mid)) {
            // Cannot split further; accept as is.
            settled.push_back(worst);
            continue;
        }
        if (intervals >= opts.max_intervals)
            throw ConvergenceError("adaptive quadrature hit the interval limit", error, target());
        auto left = detail::gauss_kronrod15<T>(f, worst.a, mid);
        auto right = detail::gauss_kronrod15<T>(f, mid, worst.b);
        evals += 30;
        ++intervals;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }
    // Re-sum to shed the drift of the running updates.
    T sum{};
    double err = 0.0;
    while (!queue.empty()) {
        sum += queue.top().value;
        err += queue.top().error;
        queue.pop();
    }
    for (const auto& p : settled) {
        sum += p.value;
        err += p.error;
    }
    if (err > 2.0 * std::max(opts.abs_tol, opts.rel_tol * std::abs(sum)))
        throw ConvergenceError("adaptive quadrature stalled", err, std::max(opts.abs_tol, opts.rel_tol * std::abs(sum)));
    return {sum, err, evals};
}

/// Sorted, de-duplicated breakpoints on [a, b]: the given extras plus every
/// multiple of `period` (skipped when period <= 0).
std::vector<double> panel_breakpoints(double a, double b, double period, std::span<const double> extras = {});

}  // namespace giant_atom
