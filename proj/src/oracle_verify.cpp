#include "giant_atom/oracle_verify.hpp"

#include "giant_atom/discrete_scatter.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace giant_atom {

ScatterSolution solve_matching(const SystemParams& params, const DiscreteCoupling& coupling, Detuning delta)
{
    const double s = phase_scale(params, delta);
    const auto pts = coupling.points();
    const auto n = static_cast<Eigen::Index>(pts.size());
    ScatterSolution sol;

    const bool decoupled = std::all_of(pts.begin(), pts.end(), [](const CouplingPoint& p) { return p.gamma == 0.0; });
    if (decoupled) {
        sol.t_segments.assign(pts.size() - 1, cdouble{1.0, 0.0});
        sol.r_segments.assign(pts.size() - 1, cdouble{0.0, 0.0});
        return sol;
    }

    // Unknowns: a_1..a_N, b_0..b_{N-1}, F. a_0 = 1, b_N = 0.
    const Eigen::Index dim = 2 * n + 1;
    const Eigen::Index f = 2 * n;
    auto ia = [](Eigen::Index m) { return m - 1; };
    auto ib = [n](Eigen::Index m) { return n + m; };
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);
    const cdouble i{0.0, 1.0};

    for (Eigen::Index m = 1; m <= n; ++m) {
        const auto& p = pts[static_cast<std::size_t>(m - 1)];
        const double g = std::sqrt(0.5 * p.gamma);
        const cdouble e = std::polar(1.0, s * p.phi);

        // a_m - a_{m-1} + i g F e^{-i phi} = 0
        const Eigen::Index row_r = m - 1;
        a(row_r, ia(m)) += 1.0;
        if (m > 1)
            a(row_r, ia(m - 1)) -= 1.0;
        else
            rhs(row_r) += 1.0;
        a(row_r, f) += i * g * std::conj(e);

        // b_m - b_{m-1} - i g F e^{i phi} = 0
        const Eigen::Index row_l = n + m - 1;
        if (m < n)
            a(row_l, ib(m)) += 1.0;
        a(row_l, ib(m - 1)) -= 1.0;
        a(row_l, f) -= i * g * e;

        // sum_m g [e^{i phi} mean(a) + e^{-i phi} mean(b)] - delta F = 0
        const Eigen::Index row_c = f;
        a(row_c, ia(m)) += 0.5 * g * e;
        if (m > 1)
            a(row_c, ia(m - 1)) += 0.5 * g * e;
        else
            rhs(row_c) -= 0.5 * g * e;
        if (m < n)
            a(row_c, ib(m)) += 0.5 * g * std::conj(e);
        a(row_c, ib(m - 1)) += 0.5 * g * std::conj(e);
    }
    a(f, f) -= delta.delta_k;

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    const double rcond = lu.rcond();
    sol.condition_estimate = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    if (!(rcond > 0.0) || !std::isfinite(sol.condition_estimate)) {
        std::ostringstream os;
        os << "matching system is singular (condition estimate " << sol.condition_estimate << ")";
        throw SingularSystemError(os.str(), sol.condition_estimate);
    }
    const Eigen::VectorXcd x = lu.solve(rhs);
    if (!x.allFinite())
        throw SingularSystemError("matching system produced non-finite amplitudes", sol.condition_estimate);
    if (sol.condition_estimate > kConditionWarnAbove) {
        std::ostringstream os;
        os << "ill-conditioned matching system (condition estimate " << sol.condition_estimate << ")";
        sol.warnings.push_back(os.str());
    }

    sol.t = x(ia(n));
    sol.r = x(ib(0));
    sol.f_a = x(f);
    for (Eigen::Index m = 1; m < n; ++m) {
        sol.t_segments.push_back(x(ia(m)));
        sol.r_segments.push_back(x(ib(m)));
    }
    return sol;
}

ScatterSolution amplitude_phase_continuum(const SystemParams& params, const CouplingDistribution& dist,
                                          Detuning delta, const ContinuumQuadratureOptions& opts)
{
    const double s = phase_scale(params, delta);
    const auto ci = continuum_integrals(dist, s, opts);
    const cdouble den{-ci.half_width, delta.delta_k - ci.shift};
    ScatterSolution sol;
    if (den == cdouble{})
        return sol;
    const cdouble i{0.0, 1.0};
    const cdouble f2 = ci.transform * ci.transform;
    sol.t = i * (delta.delta_k - ci.shift) / den;
    sol.r = f2 / den;
    sol.f_a = i * ci.transform / den;
    sol.alpha = f2 == cdouble{} ? 0.0 : std::arg(f2);
    return sol;
}

ConvergenceStudy convergence_study(const SystemParams& params, const CouplingDistribution& dist,
                                   const std::vector<int>& m_schedule, const std::vector<double>& grid,
                                   const ContinuumQuadratureOptions& opts)
{
    if (m_schedule.empty() || !std::is_sorted(m_schedule.begin(), m_schedule.end())
        || std::adjacent_find(m_schedule.begin(), m_schedule.end()) != m_schedule.end())
        throw DomainError("M schedule must be strictly increasing");
    if (grid.empty())
        throw DomainError("convergence grid is empty");

    std::vector<double> reference;
    reference.reserve(grid.size());
    for (double d : grid)
        reference.push_back(scatter_continuum(params, dist, {d}, opts).R);

    ConvergenceStudy out;
    for (int m : m_schedule) {
        const auto coupling = discretize(dist, m);
        double err = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k)
            err = std::max(err, std::abs(scatter_general(params, coupling, {grid[k]}).R - reference[k]));
        ConvergenceRow row{m, err, 0.0};
        if (!out.rows.empty() && err > 0.0 && out.rows.back().max_abs_dR > 0.0)
            row.local_order = std::log(out.rows.back().max_abs_dR / err)
                              / std::log(double(m) / out.rows.back().m_points);
        out.rows.push_back(row);
    }

    out.monotone = true;
    for (std::size_t k = 1; k < out.rows.size(); ++k)
        out.monotone = out.monotone && out.rows[k].max_abs_dR < out.rows[k - 1].max_abs_dR;

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int used = 0;
    for (const auto& r : out.rows) {
        if (!(r.max_abs_dR > 0.0))
            continue;
        const double x = std::log(double(r.m_points));
        const double y = -std::log(r.max_abs_dR);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    if (used >= 2)
        out.observed_order = (used * sxy - sx * sy) / (used * sxx - sx * sx);
    return out;
}

}  // namespace giant_atom
