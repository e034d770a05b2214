#pragma once

// Bracketing utilities shared by the spectral feature finders.

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace giant_atom {

/// Bisection on [a, b] with f(a), f(b) of opposite sign (or one of them zero).
/// Stops when |f| < f_tol or the bracket cannot be halved any further.
double bisect(const std::function<double(double)>& f, double a, double b, double f_tol = 1e-12);

/// Roots of f located by sign changes between consecutive grid nodes, each
/// refined by bisection. Exact zeros at grid nodes are kept as is.
std::vector<double> bracketed_roots(const std::function<double(double)>& f, std::span<const double> grid,
                                    double f_tol = 1e-12);

/// Golden-section minimisation of a unimodal f on [a, b].
double golden_minimum(const std::function<double(double)>& f, double a, double b, double x_tol);

/// count evenly spaced nodes from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

}  // namespace giant_atom
