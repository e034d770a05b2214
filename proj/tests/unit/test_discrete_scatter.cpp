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

DiscreteCoupling random_coupling(std::mt19937_64& rng, int max_n, double max_phi, double max_gamma)
{
    std::uniform_int_distribution<int> n_dist(1, max_n);
    std::uniform_real_distribution<double> phi(0.0, max_phi), g(1e-3, max_gamma);
    std::vector<CouplingPoint> pts(static_cast<std::size_t>(n_dist(rng)));
    for (auto& p : pts)
        p = {phi(rng), g(rng)};
    return DiscreteCoupling(pts);
}

}  // namespace

TEST_CASE("single point scattering")
{
    const SystemParams p(1000.0);
    const DiscreteCoupling one({{3.7, 1.0}});
    const auto res = scatter_general(p, one, {0.0});
    CHECK(res.T == doctest::Approx(0.0));
    CHECK(res.R == doctest::Approx(1.0));
    const auto half = scatter_general(p, one, {0.5});
    CHECK(half.T == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(half.R == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("two distant points have a transmission zero at 5/3")
{
    const SystemParams p(1000.0);
    const DiscreteCoupling two({{0.0, 1.0}, {600.0 * pi, 1.0}});
    CHECK(scatter_general(p, two, {5.0 / 3.0}).R < 1e-10);
    const auto sol = solve_matching(p, two, {5.0 / 3.0});
    CHECK(std::norm(sol.r) < 1e-10);
}

TEST_CASE("regular array examples")
{
    const SystemParams p(1000.0);
    const auto dipole = scatter_regular(p, RegularArray(2, 1.0, 0.0), {0.0});
    CHECK(dipole.T == doctest::Approx(0.0));
    CHECK(dipole.R == 1.0);

    const auto r = regular_ratios(4, 2.0 * pi);
    CHECK(r.shift_ratio == doctest::Approx(0.0));
    CHECK(r.width_ratio == doctest::Approx(16.0).epsilon(1e-15));
    const auto m = markov_characterize_regular(RegularArray(4, 1.0, 2.0 * pi));
    CHECK(m.gamma_eff == doctest::Approx(16.0).epsilon(1e-14));
    CHECK(std::abs(m.lamb_shift) < 1e-12);
}

TEST_CASE("three unity points for theta 600 pi")
{
    const SystemParams p(1000.0);
    const RegularArray arr(2, 1.0, 600.0 * pi);
    const auto grid = linear_grid(-5.0, 5.0, 10001);
    const auto unity = find_unity_points(
        [&](double d) { return line_terms_regular(p, arr, {d}); }, grid, 1e-6);
    REQUIRE(unity.size() == 3);
    // High-precision roots of delta - shift(delta).
    CHECK(unity[0].delta_k == doctest::Approx(-0.96796950858839093).epsilon(1e-10));
    CHECK(std::abs(unity[1].delta_k) < 1e-9);
    CHECK(unity[2].delta_k == doctest::Approx(0.96796950858839093).epsilon(1e-10));
    int above = 0;
    for (double d : grid)
        above += scatter_regular(p, arr, {d}).R > 1.0 - 1e-6;
    CHECK(above >= 3);
}

TEST_CASE("two point markov limits")
{
    for (double th = 0.0; th < 4.0 * pi; th += 0.37) {
        const auto m = markov_characterize_regular(RegularArray(2, 1.0, th));
        CHECK(m.lamb_shift == doctest::Approx(std::sin(th)).epsilon(1e-12).scale(1.0));
        CHECK(m.gamma_eff == doctest::Approx(2.0 * (1.0 + std::cos(th))).epsilon(1e-12).scale(1.0));
        CHECK(m.gamma_dipole == 4.0);
        const auto g = markov_characterize(expand_regular(RegularArray(2, 1.0, th)));
        CHECK(g.lamb_shift == doctest::Approx(m.lamb_shift).scale(1.0).epsilon(1e-12));
        CHECK(g.gamma_eff == doctest::Approx(m.gamma_eff).scale(1.0).epsilon(1e-12));
    }
}

TEST_CASE("markov special phases")
{
    for (int n_pts = 1; n_pts <= 8; ++n_pts) {
        for (int n = 0; n <= 6; ++n) {
            const auto m = markov_characterize_regular(RegularArray(n_pts, 1.0, n * pi));
            CHECK(std::abs(m.lamb_shift) < 1e-12);
            if (n % 2 == 0)
                CHECK(m.gamma_eff == doctest::Approx(double(n_pts) * n_pts).epsilon(1e-12));
        }
        for (int n = 1; n < 3 * n_pts; ++n) {
            if (n % n_pts == 0)
                continue;
            const auto m = markov_characterize_regular(RegularArray(n_pts, 1.0, 2.0 * pi * n / n_pts));
            CHECK(std::abs(m.gamma_eff) < 1e-12);
        }
    }
}

TEST_CASE("markov lorentzian examples")
{
    const MarkovCharacterization m{0.3, 2.0, 4.0, std::nullopt};
    CHECK(scatter_markov(m, {0.3}).R == 1.0);
    CHECK(scatter_markov(m, {1.3}).T == doctest::Approx(0.5));
    CHECK(scatter_markov(m, {-0.7}).R == doctest::Approx(0.5));
    const MarkovCharacterization off{0.3, 0.0, 4.0, std::nullopt};
    for (double d : {-5.0, 0.0, 0.3, 7.0})
        CHECK(scatter_markov(off, {d}).T == 1.0);
}

TEST_CASE("regime classification of two point arrays")
{
    const SystemParams p(1000.0);
    const auto a = classify_regime(p, expand_regular(RegularArray(2, 1.0, 80.0 * pi)));
    CHECK(a.rho == doctest::Approx(4.0 * 80.0 * pi / 1000.0));
    CHECK(a.regime == Regime::ModeratelyNonMarkovian);
    const auto d = classify_regime(p, expand_regular(RegularArray(2, 1.0, 600.0 * pi)));
    CHECK(d.rho == doctest::Approx(7.5398223686155035));
    CHECK(d.regime == Regime::ModeratelyNonMarkovian);
    CHECK(classify_regime(p, expand_regular(RegularArray(2, 1.0, 0.0))).regime == Regime::Markovian);
    CHECK(markov_characterize(DiscreteCoupling({{0.0, 1.0}}), p).regime->rho == 0.0);
}

TEST_CASE("transmission zero lattice")
{
    const SystemParams p(1000.0);
    const RegularArray a600(2, 1.0, 600.0 * pi);
    const auto z = transmission_zeros(p, a600, {-6.0, 6.0});
    REQUIRE(z.size() == 4);
    CHECK(z[0] == doctest::Approx(-5.0));
    CHECK(z[1] == doctest::Approx(-5.0 / 3.0));
    CHECK(z[2] == doctest::Approx(5.0 / 3.0));
    CHECK(z[3] == doctest::Approx(5.0));
    for (double d : z)
        CHECK(scatter_regular(p, a600, {d}).R < 1e-10);

    const RegularArray a601(2, 1.0, 601.0 * pi);
    const auto z1 = transmission_zeros(p, a601, {-6.0, 6.0});
    REQUIRE(z1.size() == 3);
    CHECK(z1[0] == doctest::Approx(-2000.0 / 601.0));
    CHECK(std::abs(z1[1]) < 1e-12);
    CHECK(z1[2] == doctest::Approx(2000.0 / 601.0));
    for (double d : z1)
        CHECK(scatter_regular(p, a601, {d}).R < 1e-10);

    CHECK(transmission_zeros(p, a600, {-5.0, 5.0}).size() == 4);
    CHECK(transmission_zeros(p, a600, {0.1, 1.0}).empty());
    CHECK(transmission_zeros(p, RegularArray(3, 1.0, 0.0), {-100.0, 100.0}).empty());
}

TEST_CASE("band gap and unity points for large regular arrays")
{
    const SystemParams p(1e4);
    FeatureOptions opts;
    opts.grid_points = 100001;

    const auto r21 = feature_report(p, RegularArray(21, 1.0, 2.0 * pi), {-2000.0, 2000.0}, opts);
    REQUIRE(r21.band_gap.has_value());
    // Edges where R = 0.99, from a 30-digit evaluation of the exact formula.
    CHECK(r21.band_gap->lo == doctest::Approx(-120.75776377095282).epsilon(1e-9));
    CHECK(r21.band_gap->hi == doctest::Approx(120.75776377095282).epsilon(1e-9));
    CHECK(r21.band_gap->threshold == 0.99);
    CHECK(r21.transmission_zeros.size() == 8);

    const auto r30 = feature_report(p, RegularArray(30, 1.0, 2.0 * pi), {-2000.0, 2000.0}, opts);
    REQUIRE(r30.reflection_unity_points.size() == 3);
    CHECK(r30.reflection_unity_points[0].delta_k == doctest::Approx(-240.90576263653620).epsilon(1e-9));
    CHECK(std::abs(r30.reflection_unity_points[1].delta_k) < 1e-8);
    CHECK(r30.reflection_unity_points[2].delta_k == doctest::Approx(240.90576263653620).epsilon(1e-9));
    CHECK(r30.triple_peak);
    REQUIRE(r30.walls.has_value());
    CHECK(r30.walls->first == doctest::Approx(-1e4 / 30.0).epsilon(1e-6));
    CHECK(r30.walls->second == doctest::Approx(1e4 / 30.0).epsilon(1e-6));
    for (const auto& u : r30.reflection_unity_points)
        CHECK(u.residual < 1e-9);
    for (const auto& zp : r30.transmission_zeros)
        CHECK(zp.residual < 1e-10);
}

TEST_CASE("feature report for a markovian quarter-wave array")
{
    const SystemParams p(1000.0);
    const auto rep = feature_report(p, RegularArray(2, 1.0, pi / 2.0), {-10.0, 10.0});
    CHECK_FALSE(rep.triple_peak);
    CHECK(rep.transmission_zeros.empty());
    REQUIRE(rep.gamma_eff_zero_thetas.size() == 1);
    CHECK(rep.gamma_eff_zero_thetas[0] == doctest::Approx(pi));
    CHECK(rep.gamma_eff_local_max_thetas.empty());
}

TEST_CASE("feature report rejects aliasing grids")
{
    const SystemParams p(1e4);
    FeatureOptions opts;
    opts.grid_points = 11;
    CHECK_THROWS_AS(feature_report(p, RegularArray(21, 1.0, 2.0 * pi), {-2000.0, 2000.0}, opts),
                    GridResolutionError);
}

TEST_CASE("triple peak condition threshold")
{
    const SystemParams p(1000.0);
    CHECK_FALSE(triple_peak_condition(p, RegularArray(2, 1.0, 2.0 * pi * 159)));
    CHECK(triple_peak_condition(p, RegularArray(2, 1.0, 2.0 * pi * 160)));
    CHECK_FALSE(triple_peak_condition(p, RegularArray(2, 1.0, 2.0 * pi * 160 + 0.5)));
}

TEST_CASE("effective decay extrema on one period")
{
    for (int n = 2; n <= 12; ++n) {
        const auto zeros = gamma_eff_zero_thetas(n);
        REQUIRE(zeros.size() == std::size_t(n - 1));
        for (double t : zeros)
            CHECK(std::abs(markov_characterize_regular(RegularArray(n, 1.0, t)).gamma_eff) < 1e-12);
        const auto maxima = gamma_eff_local_max_thetas(n);
        CHECK(maxima.size() == std::size_t(std::max(0, n - 2)));
        for (double t : maxima) {
            CHECK(n / std::tan(0.5 * n * t) == doctest::Approx(1.0 / std::tan(0.5 * t)).epsilon(1e-8));
            const double g = regular_ratios(n, t).width_ratio;
            CHECK(g >= regular_ratios(n, t - 1e-4).width_ratio);
            CHECK(g >= regular_ratios(n, t + 1e-4).width_ratio);
        }
    }
}

TEST_CASE("property: conservation over random configurations")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 3000; ++k) {
        const SystemParams p(1.0 + 1e4 * u(rng));
        const Detuning d{(1.8 * u(rng) - 0.9) * p.omega_a()};
        const auto c = random_coupling(rng, 10, 1e3, 3.0);
        const auto e = scatter_general(p, c, d);
        CHECK(std::abs(e.T + e.R - 1.0) < 1e-12);
        CHECK(e.T >= 0.0);
        CHECK(e.R >= 0.0);
        const auto r = scatter_regular(p, RegularArray(1 + k % 40, 0.1 + 3.0 * u(rng), 2e3 * u(rng)), d);
        CHECK(std::abs(r.T + r.R - 1.0) < 1e-12);
    }
}

TEST_CASE("property: general formula matches the matching-condition solve")
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const SystemParams p(1000.0);
    double worst = 0.0;
    for (int k = 0; k < 300; ++k) {
        const auto c = random_coupling(rng, 8, 1e3, 3.0);
        const Detuning d{(u(rng) - 0.5) * 1000.0};
        worst = std::max(worst, std::abs(std::norm(solve_matching(p, c, d).t) - scatter_general(p, c, d).T));
    }
    CHECK(worst < 1e-10);

    std::vector<CouplingPoint> five;
    for (int k = 0; k < 5; ++k)
        five.push_back({50.0 * u(rng), 2.0 * u(rng) + 1e-3});
    const DiscreteCoupling c5(five);
    for (double d : {-3.0, -0.4, 0.0, 0.8, 2.5})
        CHECK(std::abs(std::norm(solve_matching(p, c5, {d}).t) - scatter_general(p, c5, {d}).T) < 1e-10);
}

TEST_CASE("property: order and translation invariance")
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        const SystemParams p(10.0 + 1e3 * u(rng));
        const auto c = random_coupling(rng, 8, 500.0, 3.0);
        std::vector<CouplingPoint> pts(c.points().begin(), c.points().end());
        std::shuffle(pts.begin(), pts.end(), rng);
        const double offset = 1e3 * (u(rng) - 0.5);
        std::vector<CouplingPoint> moved = pts;
        for (auto& q : moved)
            q.phi += offset;
        const Detuning d{(u(rng) - 0.5) * p.omega_a()};
        const auto a = scatter_general(p, c, d);
        const auto b = scatter_general(p, DiscreteCoupling(pts), d);
        const auto t = scatter_general(p, DiscreteCoupling(moved), d);
        CHECK(a.T == b.T);
        CHECK(std::abs(a.T - t.T) < 1e-12);
        CHECK(std::abs(a.R - t.R) < 1e-12);
    }
}

TEST_CASE("property: regular formula equals the expanded general formula")
{
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int compared = 0;
    while (compared < 1000) {
        const SystemParams p(100.0 + 1e4 * u(rng));
        const RegularArray arr(1 + int(u(rng) * 12), 0.1 + 2.0 * u(rng), 300.0 * u(rng));
        const Detuning d{(u(rng) - 0.5) * p.omega_a()};
        const double theta = phase_scale(p, d) * arr.theta();
        if (std::abs(std::remainder(theta, 2.0 * pi)) <= 1e-3)
            continue;
        const auto a = scatter_regular(p, arr, d);
        const auto b = scatter_general(p, expand_regular(arr), d);
        CHECK(std::abs(a.T - b.T) < 1e-12);
        ++compared;
    }
}

TEST_CASE("property: series branch meets the closed branch at the seam")
{
    for (int n = 1; n <= 40; ++n)
        for (double x : {kRegularSeriesRadius, -kRegularSeriesRadius, 0.99 * kRegularSeriesRadius}) {
            const auto d = regular_ratios_direct(n, x);
            const auto s = regular_ratios_series(n, x);
            CHECK(s.shift_ratio == doctest::Approx(d.shift_ratio).epsilon(1e-10));
            CHECK(s.width_ratio == doctest::Approx(d.width_ratio).epsilon(1e-10));
        }
}

TEST_CASE("property: markov regular characterization is 2 pi periodic")
{
    for (int n = 1; n <= 9; ++n)
        for (double th = 0.05; th < 2.0 * pi; th += 0.1) {
            const auto a = markov_characterize_regular(RegularArray(n, 1.0, th));
            for (int k = 1; k <= 5; ++k) {
                const auto b = markov_characterize_regular(RegularArray(n, 1.0, th + 2.0 * pi * k));
                CHECK(b.lamb_shift == doctest::Approx(a.lamb_shift).epsilon(1e-12).scale(n * n));
                CHECK(b.gamma_eff == doctest::Approx(a.gamma_eff).epsilon(1e-12).scale(n * n));
            }
        }
}

TEST_CASE("property: effective decay is non-negative and bounded by the dipole rate")
{
    for (int n = 1; n <= 30; ++n)
        for (int k = 0; k <= 2000; ++k) {
            const auto m = markov_characterize_regular(RegularArray(n, 1.0, 4.0 * pi * k / 2000.0));
            CHECK(m.gamma_eff >= 0.0);
            CHECK(m.gamma_eff <= m.gamma_dipole * (1.0 + 1e-14));
        }
}

TEST_CASE("property: markov spectrum is symmetric when the Lamb shift vanishes")
{
    for (int n = 1; n <= 6; ++n) {
        const auto m = markov_characterize_regular(RegularArray(n, 1.0, 3.0 * pi));
        for (double d = 0.1; d < 20.0; d += 0.7)
            CHECK(scatter_markov(m, {d}).R == doctest::Approx(scatter_markov(m, {-d}).R).epsilon(1e-14));
    }
}

TEST_CASE("property: exact spectrum converges to the lorentzian as rho shrinks")
{
    auto sup_error = [](double omega) {
        const SystemParams p(omega);
        const DiscreteCoupling c({{0.0, 1.0}, {1.3, 0.5}, {2.9, 2.0}});
        const auto m = markov_characterize(c);
        double worst = 0.0;
        for (double d : linear_grid(m.lamb_shift - 5.0 * m.gamma_eff, m.lamb_shift + 5.0 * m.gamma_eff, 2001))
            worst = std::max(worst, std::abs(scatter_general(p, c, {d}).R - scatter_markov(m, {d}).R));
        return std::pair{worst, classify_regime(p, c).rho};
    };
    const auto [e1, rho1] = sup_error(4e3);
    const auto [e2, rho2] = sup_error(8e3);
    CHECK(rho1 < 1e-2);
    CHECK(e1 < 1e-2);
    CHECK(rho2 == doctest::Approx(rho1 / 2.0));
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.2));
}
