#include "giant_atom/quadrature.hpp"

namespace giant_atom {

std::vector<double> panel_breakpoints(double a, double b, double period, std::span<const double> extras)
{
    std::vector<double> pts{a, b};
    for (double x : extras) {
        if (x > a && x < b)
            pts.push_back(x);
    }
    if (period > 0.0) {
        const double first = std::ceil(a / period);
        const double last = std::floor(b / period);
        for (double k = first; k <= last; k += 1.0) {
            const double x = k * period;
            if (x > a && x < b)
                pts.push_back(x);
        }
    }
    std::sort(pts.begin(), pts.end());
    // Drop panels narrower than rounding noise.
    std::vector<double> out;
    for (double x : pts) {
        if (out.empty() || x - out.back() > 1e-13 * std::max(1.0, std::abs(x)))
            out.push_back(x);
    }
    if (out.back() != b)
        out.back() = b;
    return out;
}

}  // namespace giant_atom
