#include "giant_atom/oracle_verify.hpp"
#include "giant_atom/roots.hpp"
#include "giant_atom/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace giant_atom {

namespace {

constexpr double kPi = std::numbers::pi;

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

DiscreteCoupling random_coupling(Rng& rng, int max_n, double max_phi, double max_gamma)
{
    const int n = std::uniform_int_distribution<int>(1, max_n)(rng);
    std::vector<CouplingPoint> pts;
    for (int k = 0; k < n; ++k)
        pts.push_back({uniform(rng, 0.0, max_phi), uniform(rng, 1e-3, max_gamma)});
    return DiscreteCoupling(std::move(pts));
}

CheckResult finish(std::string name, double residual, double tol, std::string detail = {})
{
    return {std::move(name), residual <= tol, residual, tol, std::move(detail)};
}

CheckResult check_unitarity(const RunSpec& spec)
{
    Rng rng(spec.seed);
    const DistributionKind kinds[] = {DistributionKind::Uniform, DistributionKind::Exponential,
                                      DistributionKind::Triangular, DistributionKind::RaisedCosine,
                                      DistributionKind::DoubleExponential};
    double worst = 0.0;
    auto note = [&](const Scattering& s) { worst = std::max(worst, std::abs(s.T + s.R - 1.0)); };
    for (int k = 0; k < spec.samples; ++k) {
        const SystemParams p(uniform(rng, 1.0, 1e4));
        const Detuning d{uniform(rng, -0.9, 0.9) * p.omega_a()};
        const auto c = random_coupling(rng, 8, 1e3, 3.0);
        note(scatter_general(p, c, d));
        note(scatter_markov(markov_characterize(c), d));
        const RegularArray arr(std::uniform_int_distribution<int>(1, 40)(rng), uniform(rng, 1e-3, 3.0),
                               uniform(rng, 0.0, 2e3));
        note(scatter_regular(p, arr, d));
        const auto kind = kinds[std::uniform_int_distribution<int>(0, 4)(rng)];
        const auto dist = CouplingDistribution::named(kind, uniform(rng, 0.1, 3.0), uniform(rng, 1e-3, 20.0),
                                                      uniform(rng, 0.0, 2e3));
        note(scatter_continuum_closed(p, dist, d));
        if (k % 20 == 0) {
            const auto sol = solve_matching(p, c, d);
            worst = std::max(worst, std::abs(std::norm(sol.t) + std::norm(sol.r) - 1.0));
        }
    }
    return finish("unitarity", worst, 1e-12, std::to_string(spec.samples) + " samples x 5 formulas");
}

CheckResult check_oracle(const RunSpec& spec)
{
    Rng rng(spec.seed + 1);
    const int n = std::min(spec.samples, 1000);
    double worst = 0.0;
    const SystemParams p(1000.0);
    for (int k = 0; k < n; ++k) {
        const auto c = random_coupling(rng, 8, 1e3, 3.0);
        const Detuning d{uniform(rng, -500.0, 500.0)};
        const auto sol = solve_matching(p, c, d);
        worst = std::max(worst, std::abs(std::norm(sol.t) - scatter_general(p, c, d).T));
    }
    return finish("oracle_equivalence", worst, 1e-10, std::to_string(n) + " random configs, N <= 8");
}

CheckResult check_closed_vs_quadrature()
{
    double worst = 0.0;
    std::string where;
    auto compare = [&](const CouplingDistribution& dist, double scale) {
        const auto c = closed_line_terms(dist, scale);
        const auto q = continuum_integrals(dist, scale);
        const double floor = 1e-4 * dist.gamma_tilde();
        const double e1 = std::abs(q.shift - c.shift) / (std::abs(c.shift) + floor);
        const double e2 = std::abs(q.half_width - c.half_width) / (std::abs(c.half_width) + floor);
        if (std::max(e1, e2) > worst) {
            worst = std::max(e1, e2);
            std::ostringstream os;
            os << "worst at " << to_string(dist.kind()) << " Theta=" << dist.theta_big() << " phi_0=" << dist.phi_0()
               << " s=" << scale;
            where = os.str();
        }
    };
    for (auto kind : {DistributionKind::Uniform, DistributionKind::Exponential, DistributionKind::Triangular,
                      DistributionKind::RaisedCosine})
        for (double t : {0.3, 1.0, 2.0 * kPi, 10.0})
            for (double s : {1.0, 1.4})
                compare(CouplingDistribution::named(kind, 1.0, t), s);
    for (double phi0 : {0.0, 2.0, 10.0 * kPi})
        compare(CouplingDistribution::double_exponential(1.0, 0.5, phi0), 1.0);
    return finish("closed_vs_quadrature", worst, 1e-8, where);
}

CheckResult check_convergence(const RunSpec& spec)
{
    struct Case {
        const char* name;
        CouplingDistribution dist;
        double omega;
    };
    const Case cases[] = {{"uniform", CouplingDistribution::uniform(1.0, 1.0), 2.0},
                          {"double_exponential", CouplingDistribution::double_exponential(1.0, 0.5, 6.0), 5.0}};
    std::ostringstream detail;
    double worst_order_gap = 0.0;
    bool ok = true;
    for (const auto& c : cases) {
        const SystemParams p(c.omega);
        const auto grid = linear_grid(-0.75 * c.omega, 0.75 * c.omega, 13);
        const auto study = convergence_study(p, c.dist, spec.m_schedule, grid);
        detail << c.name << ": order " << study.observed_order << (study.monotone ? " monotone" : " NOT monotone")
               << ", final error " << study.rows.back().max_abs_dR << "; ";
        ok = ok && study.monotone && study.observed_order >= 1.0;
        worst_order_gap = std::max(worst_order_gap, 1.0 - study.observed_order);
    }
    CheckResult r{"convergence_order", ok, std::max(0.0, worst_order_gap), 0.0, detail.str()};
    return r;
}

CheckResult check_limit_branches()
{
    double worst = 0.0;
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
    for (int n = 2; n <= 30; ++n)
        for (double x : {kRegularSeriesRadius, -kRegularSeriesRadius}) {
            const auto d = regular_ratios_direct(n, x);
            const auto s = regular_ratios_series(n, x);
            worst = std::max({worst, rel(s.shift_ratio, d.shift_ratio), rel(s.width_ratio, d.width_ratio)});
        }
    const auto rc = CouplingDistribution::raised_cosine(1.0, 2.0 * kPi);
    worst = std::max(worst, rel(markov_characterize_closed(rc).gamma_eff, 0.25));
    for (double eps : {kRaisedCosineSeriesRadius, -kRaisedCosineSeriesRadius}) {
        const double t = 2.0 * kPi + eps;
        const auto inside = closed_line_terms(CouplingDistribution::raised_cosine(1.0, t * (1.0 - 1e-15)), 1.0);
        const auto outside = closed_line_terms(CouplingDistribution::raised_cosine(1.0, t * (1.0 + 1e-15)), 1.0);
        worst = std::max({worst, rel(inside.shift, outside.shift), rel(inside.half_width, outside.half_width)});
    }
    for (auto kind : {DistributionKind::Uniform, DistributionKind::Triangular, DistributionKind::RaisedCosine}) {
        const double t = kSmallThetaSeriesBelow;
        const auto below = closed_line_terms(CouplingDistribution::named(kind, 1.0, t * (1.0 - 1e-15)), 1.0);
        const auto above = closed_line_terms(CouplingDistribution::named(kind, 1.0, t), 1.0);
        worst = std::max(worst, rel(below.shift, above.shift));
    }
    return finish("limit_branches", worst, 1e-10, "series/closed seams and raised-cosine Theta = 2 pi");
}

CheckResult check_normalization(const RunSpec& spec)
{
    LoadedTable loaded = [&] {
        if (spec.model == ModelKind::Tabulated && !spec.table.empty())
            return load_tabulated_file(spec.table, spec.gamma_tilde);
        std::ostringstream os;
        const double t = 3.0, c = std::sqrt(0.5);
        for (int k = 0; k <= 600; ++k) {
            const double phi = -0.5 * t + t * k / 600.0;
            os << format_number(phi) << ' ' << format_number(2.0 * c / t * std::pow(std::cos(kPi * phi / t), 2)) << '\n';
        }
        std::istringstream is(os.str());
        return load_tabulated(is, 1.0);
    }();
    const auto& dist = loaded.dist;
    const auto sup = truncated_support(dist, 0.0 + 1e-14);
    QuadratureOptions q;
    q.rel_tol = 1e-13;
    const double mass = integrate([&](double x) { return distribution_value(dist, x); },
                                  panel_breakpoints(sup.lo, sup.hi, 0.0, distribution_kinks(dist)), q)
                            .value;
    const double quad_err = std::abs(mass / dist.total_mass() - 1.0);
    std::ostringstream detail;
    detail << "file mass correction " << loaded.correction << ", quadrature mass error " << quad_err;
    const bool ok = loaded.correction <= 1e-6 && quad_err <= 1e-10;
    return {"tabulated_normalization", ok, std::max(loaded.correction, quad_err), 1e-6, detail.str()};
}

}  // namespace

ValidationReport run_validate(const RunSpec& spec)
{
    RunSpec s = spec;
    s.mode = Mode::Validate;
    validate_run_spec(s);
    ValidationReport rep;
    auto guarded = [&](const char* name, auto&& fn) {
        try {
            rep.checks.push_back(fn());
        } catch (const std::exception& e) {
            rep.checks.push_back({name, false, 0.0, 0.0, std::string("error: ") + e.what()});
        }
    };
    guarded("unitarity", [&] { return check_unitarity(s); });
    guarded("oracle_equivalence", [&] { return check_oracle(s); });
    guarded("closed_vs_quadrature", [&] { return check_closed_vs_quadrature(); });
    guarded("convergence_order", [&] { return check_convergence(s); });
    guarded("limit_branches", [&] { return check_limit_branches(); });
    guarded("tabulated_normalization", [&] { return check_normalization(s); });
    return rep;
}

}  // namespace giant_atom
