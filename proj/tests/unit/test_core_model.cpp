#include "giant_atom/core_model.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace giant_atom;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("system params reject non-physical transition frequencies")
{
    CHECK_NOTHROW(SystemParams(1e3));
    CHECK_THROWS_AS(SystemParams(0.0), DomainError);
    CHECK_THROWS_AS(SystemParams(-1.0), DomainError);
    CHECK_THROWS_AS(SystemParams(std::numeric_limits<double>::infinity()), DomainError);
    CHECK_THROWS_AS(SystemParams(std::nan("")), DomainError);
}

TEST_CASE("detuned phase examples")
{
    const SystemParams p(1000.0);
    CHECK(detuned_phase(p, {0.0}, 3.0) == 3.0);
    CHECK(detuned_phase(p, {500.0}, 2.0 * pi) == doctest::Approx(3.0 * pi).epsilon(1e-15));
    CHECK_THROWS_AS(detuned_phase(p, {-1000.0}, 1.0), DomainError);
    CHECK_THROWS_AS(detuned_phase(p, {-2000.0}, 1.0), DomainError);
    CHECK_NOTHROW(detuned_phase(p, {-999.0}, 1.0));
}

TEST_CASE("detuned phase is linear in phase and increasing in detuning")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const SystemParams p(1.0 + 1e4 * u(rng));
        const double d1 = (u(rng) * 1.8 - 0.9) * p.omega_a();
        const double d2 = d1 + 1e-3 * p.omega_a() * (u(rng) + 0.01);
        const double a = 100.0 * u(rng), b = 100.0 * u(rng);
        CHECK(detuned_phase(p, {d1}, a + b)
              == doctest::Approx(detuned_phase(p, {d1}, a) + detuned_phase(p, {d1}, b)).epsilon(1e-14));
        CHECK(detuned_phase(p, {d2}, a + 1e-3) > detuned_phase(p, {d1}, a + 1e-3));
    }
}

TEST_CASE("expand regular examples")
{
    const auto one = expand_regular(RegularArray(1, 1.0, 5.0));
    REQUIRE(one.size() == 1);
    CHECK(one.points()[0].phi == 0.0);
    CHECK(one.points()[0].gamma == 1.0);

    const auto three = expand_regular(RegularArray(3, 2.0, pi));
    REQUIRE(three.size() == 3);
    CHECK(three.points()[1].phi == pi);
    CHECK(three.points()[2].phi == 2.0 * pi);
    for (const auto& pt : three.points())
        CHECK(pt.gamma == 2.0);

    const auto two = expand_regular(RegularArray(2, 1.0, 600.0 * pi));
    CHECK(two.points()[1].phi == 600.0 * pi);
    CHECK(two.phase_span() == 600.0 * pi);
}

TEST_CASE("discrete coupling validation and ordering")
{
    CHECK_THROWS_AS(DiscreteCoupling({}), DomainError);
    CHECK_THROWS_AS(DiscreteCoupling({{0.0, -1.0}}), DomainError);
    CHECK_THROWS_AS(DiscreteCoupling({{std::nan(""), 1.0}}), DomainError);
    CHECK_THROWS_AS(DiscreteCoupling({{0.0, std::numeric_limits<double>::infinity()}}), DomainError);

    const DiscreteCoupling c({{5.0, 1.0}, {-1.0, 4.0}, {2.0, 9.0}});
    CHECK(c.points()[0].phi == -1.0);
    CHECK(c.points()[2].phi == 5.0);
    CHECK(c.phase_span() == 6.0);
    CHECK(c.gamma_dipole() == doctest::Approx(36.0));
}

TEST_CASE("regular array validation and dipole rate")
{
    CHECK_THROWS_AS(RegularArray(0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(RegularArray(2, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(RegularArray(2, 1.0, -1.0), DomainError);
    CHECK(RegularArray(7, 2.0, 1.0).gamma_dipole() == 98.0);
}

TEST_CASE("distribution construction")
{
    CHECK_THROWS_AS(CouplingDistribution::uniform(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(CouplingDistribution::uniform(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(CouplingDistribution::double_exponential(1.0, 1.0, -1.0), DomainError);
    CHECK_THROWS_AS(CouplingDistribution::tabulated(1.0, {{0.0, 1.0}}), DomainError);
    CHECK_THROWS_AS(CouplingDistribution::tabulated(1.0, {{0.0, 1.0}, {0.0, 1.0}}), DomainError);
    CHECK_THROWS_AS(CouplingDistribution::tabulated(1.0, {{0.0, 1.0}, {1.0, -1.0}}), DomainError);

    const auto t = CouplingDistribution::tabulated(2.0, {{-1.0, 0.0}, {0.5, 1.0}, {2.0, 0.0}});
    CHECK(t.theta_big() == 3.0);
    CHECK_FALSE(t.is_named());
    CHECK(t.has_compact_support());
    CHECK(t.total_mass() == doctest::Approx(1.0));
    CHECK_FALSE(CouplingDistribution::exponential(1.0, 1.0).has_compact_support());
    CHECK(CouplingDistribution::raised_cosine(1.0, 1.0).has_compact_support());

    for (auto k : {DistributionKind::Uniform, DistributionKind::Exponential, DistributionKind::Triangular,
                   DistributionKind::RaisedCosine, DistributionKind::DoubleExponential, DistributionKind::Tabulated})
        CHECK(distribution_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(distribution_kind_from_string("gaussian"), DomainError);
}

TEST_CASE("regime classification thresholds")
{
    CHECK(classify_rho(0.0).regime == Regime::Markovian);
    CHECK(classify_rho(0.099).regime == Regime::Markovian);
    CHECK(classify_rho(0.1).regime == Regime::ModeratelyNonMarkovian);
    CHECK(classify_rho(10.0).regime == Regime::ModeratelyNonMarkovian);
    CHECK(classify_rho(10.01).regime == Regime::DeepNonMarkovian);
    CHECK(classify_rho(5.0, {1.0, 2.0}).regime == Regime::DeepNonMarkovian);
    CHECK(to_string(Regime::ModeratelyNonMarkovian) == "moderately_non_markovian");
}

TEST_CASE("lorentz form conserves probability without overflow")
{
    const auto z = lorentz_form(0.0, 0.0);
    CHECK(z.T == 1.0);
    CHECK(z.R == 0.0);
    const auto big = lorentz_form(1e200, 3e200);
    CHECK(big.T == doctest::Approx(0.1));
    CHECK(big.R == doctest::Approx(0.9));
    const auto tiny = lorentz_form(1e-200, 1e-200);
    CHECK(tiny.T == doctest::Approx(0.5));
    const auto half = lorentz_form(0.5, 0.5);
    CHECK(half.T == doctest::Approx(0.5));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int k = 0; k < 10000; ++k) {
        const auto s = lorentz_form(u(rng), u(rng));
        CHECK(std::abs(s.T + s.R - 1.0) < 1e-15);
        CHECK(s.T >= 0.0);
        CHECK(s.R >= 0.0);
    }
}

TEST_CASE("spectrum table conservation error")
{
    SpectrumTable t;
    CHECK(t.max_conservation_error() == 0.0);
    t.rows = {{0.0, 0.25, 0.75}, {1.0, 0.5, 0.5 + 1e-9}};
    CHECK(t.max_conservation_error() == doctest::Approx(1e-9).epsilon(1e-6));
}
