#include "giant_atom/roots.hpp"

#include <stdexcept>

namespace giant_atom {

double bisect(const std::function<double(double)>& f, double a, double b, double f_tol)
{
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0)
        return a;
    if (fb == 0.0)
        return b;
    if ((fa < 0.0) == (fb < 0.0))
        throw std::invalid_argument("bisect: bracket does not change sign");
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b)
            break;
        const double fm = f(m);
        if (fm == 0.0 || std::abs(fm) < f_tol)
            return m;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    return std::abs(fa) < std::abs(fb) ? a : b;
}

std::vector<double> bracketed_roots(const std::function<double(double)>& f, std::span<const double> grid,
                                    double f_tol)
{
    std::vector<double> roots;
    if (grid.empty())
        return roots;
    double prev = f(grid[0]);
    if (prev == 0.0)
        roots.push_back(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = f(grid[i]);
        if (cur == 0.0) {
            roots.push_back(grid[i]);
        } else if (prev != 0.0 && (prev < 0.0) != (cur < 0.0)) {
            roots.push_back(bisect(f, grid[i - 1], grid[i], f_tol));
        }
        prev = cur;
    }
    return roots;
}

double golden_minimum(const std::function<double(double)>& f, double a, double b, double x_tol)
{
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > x_tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        if (c >= d)
            break;
    }
    return 0.5 * (a + b);
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count)
{
    if (count < 2)
        throw std::invalid_argument("grid needs at least two points");
    std::vector<double> g(count);
    const double step = (hi - lo) / double(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = lo + step * double(i);
    g.back() = hi;
    return g;
}

}  // namespace giant_atom
