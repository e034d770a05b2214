#include "giant_atom/continuum_scatter.hpp"
#include "giant_atom/discrete_scatter.hpp"
#include "giant_atom/oracle_verify.hpp"
#include "giant_atom/roots.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace giant_atom;

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

TEST_CASE("single point amplitudes")
{
    const SystemParams p(100.0);
    const DiscreteCoupling one({{0.0, 2.0}});
    for (double d : {-3.0, -1.0, 0.0, 0.5, 4.0}) {
        const auto s = solve_matching(p, one, {d});
        const cdouble expected_t = cdouble(0.0, d) / cdouble(-1.0, d);
        CHECK(std::abs(s.t - expected_t) < 1e-14);
        CHECK(std::abs(s.r - (s.t - 1.0)) < 1e-14);
        CHECK(s.t_segments.empty());
    }
    CHECK(std::abs(solve_matching(p, one, {0.0}).r + 1.0) < 1e-14);
}

TEST_CASE("decoupled atom transmits everything")
{
    const SystemParams p(100.0);
    const auto s = solve_matching(p, DiscreteCoupling({{0.0, 0.0}, {1.0, 0.0}}), {0.0});
    CHECK(s.t == cdouble(1.0, 0.0));
    CHECK(s.r == cdouble(0.0, 0.0));
    CHECK(s.f_a == cdouble(0.0, 0.0));
}

TEST_CASE("three irregular points against the general formula")
{
    const SystemParams p(500.0);
    const DiscreteCoupling c({{0.0, 1.0}, {2.3, 0.4}, {7.1, 1.7}});
    for (double d : linear_grid(-6.0, 6.0, 241)) {
        const auto s = solve_matching(p, c, {d});
        const auto g = scatter_general(p, c, {d});
        CHECK(std::norm(s.t) == doctest::Approx(g.T).scale(1.0).epsilon(1e-12));
        CHECK(std::norm(s.r) == doctest::Approx(g.R).scale(1.0).epsilon(1e-12));
    }
}

TEST_CASE("property: matching solve is unitary")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 300; ++k) {
        std::vector<CouplingPoint> pts(2 + k % 7);
        for (auto& q : pts)
            q = {100.0 * u(rng), 0.01 + 3.0 * u(rng)};
        const SystemParams p(200.0);
        const auto s = solve_matching(p, DiscreteCoupling(pts), {(u(rng) - 0.5) * 20.0});
        REQUIRE(s.t_segments.size() == pts.size() - 1);
        CHECK(std::abs(std::norm(s.t) + std::norm(s.r) - 1.0) < 1e-12);
    }
}

TEST_CASE("property: reordering and translating the points leaves |t| unchanged")
{
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        std::vector<CouplingPoint> pts(1 + k % 6);
        for (auto& q : pts)
            q = {50.0 * u(rng), 0.1 + 2.0 * u(rng)};
        auto moved = pts;
        std::shuffle(moved.begin(), moved.end(), rng);
        const double shift = 300.0 * (u(rng) - 0.5);
        for (auto& q : moved)
            q.phi += shift;
        const SystemParams p(100.0);
        const Detuning d{(u(rng) - 0.5) * 10.0};
        const auto a = solve_matching(p, DiscreteCoupling(pts), d);
        const auto b = solve_matching(p, DiscreteCoupling(moved), d);
        CHECK(std::abs(std::norm(a.t) - std::norm(b.t)) < 1e-12);
        CHECK(std::abs(std::abs(a.f_a) - std::abs(b.f_a)) < 1e-10);
    }
}

TEST_CASE("two point spectrum is lorentzian in the markov regime")
{
    const SystemParams p(1e5);
    const RegularArray arr(2, 1.0, pi / 2.0);
    const DiscreteCoupling c = expand_regular(arr);
    const auto m = markov_characterize_regular(arr);
    const auto grid = linear_grid(-10.0, 10.0, 20001);
    double peak = grid.front(), best = -1.0;
    for (double d : grid) {
        const double r = std::norm(solve_matching(p, c, {d}).r);
        if (r > best) {
            best = r;
            peak = d;
        }
    }
    auto half = [&](double x) { return std::norm(solve_matching(p, c, {x}).r) - 0.5; };
    const double lo = bisect(half, peak - 10.0, peak);
    const double hi = bisect(half, peak, peak + 10.0);
    CHECK(peak == doctest::Approx(m.lamb_shift).epsilon(0.01));
    CHECK(hi - lo == doctest::Approx(m.gamma_eff).epsilon(0.01));
}

TEST_CASE("ill-conditioned systems are flagged")
{
    const SystemParams p(1000.0);
    const auto s = solve_matching(p, DiscreteCoupling({{0.0, 1e-20}, {5.0, 1e20}}), {0.3});
    CHECK(s.condition_estimate > kConditionWarnAbove);
    CHECK_FALSE(s.warnings.empty());
    const auto ok = solve_matching(p, DiscreteCoupling({{0.0, 1.0}, {5.0, 1.0}}), {0.3});
    CHECK(ok.condition_estimate < 1e3);
    CHECK(ok.warnings.empty());
}

TEST_CASE("continuum amplitudes")
{
    const SystemParams p(50.0);
    for (const auto& dist : {CouplingDistribution::uniform(1.0, 1.5), CouplingDistribution::raised_cosine(1.0, 4.0),
                             CouplingDistribution::double_exponential(1.0, 0.5, 6.0)}) {
        for (double d : {-2.0, 0.0, 0.7}) {
            const auto a = amplitude_phase_continuum(p, dist, {d});
            const auto ref = scatter_continuum_closed(p, dist, {d});
            CHECK(std::norm(a.t) == doctest::Approx(ref.T).scale(1.0).epsilon(1e-9));
            CHECK(std::norm(a.r) == doctest::Approx(ref.R).scale(1.0).epsilon(1e-9));
            CHECK(std::abs(std::sin(a.alpha)) < 1e-10);
        }
    }
    const auto skew = CouplingDistribution::tabulated(1.0, {{0.0, 0.0}, {0.2, 1.0}, {2.0, 0.0}});
    const auto a = amplitude_phase_continuum(p, skew, {0.0});
    CHECK(std::abs(std::norm(a.t) + std::norm(a.r) - 1.0) < 1e-12);
    CHECK(std::abs(std::sin(a.alpha)) > 1e-3);
}

TEST_CASE("discretization converges to the continuum spectrum")
{
    const SystemParams p(2.0);
    const auto grid = linear_grid(-1.5, 1.5, 13);
    const auto u = convergence_study(p, CouplingDistribution::uniform(1.0, 1.0), {8, 16, 32, 64, 128}, grid);
    REQUIRE(u.rows.size() == 5);
    CHECK(u.monotone);
    CHECK(u.observed_order == doctest::Approx(2.0).epsilon(0.05));
    CHECK(u.rows.back().max_abs_dR < 1e-3);
    CHECK(u.rows.front().local_order == 0.0);

    const SystemParams q(5.0);
    const auto d = convergence_study(q, CouplingDistribution::double_exponential(1.0, 0.5, 6.0), {8, 16, 32, 64, 128},
                                     linear_grid(-3.75, 3.75, 13));
    CHECK(d.monotone);
    CHECK(d.observed_order >= 1.0);

    CHECK_THROWS(convergence_study(p, CouplingDistribution::uniform(1.0, 1.0), {16, 8}, grid));
}
