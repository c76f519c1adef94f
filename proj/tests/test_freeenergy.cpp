#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "ginibre/error.hpp"
#include "ginibre/exactfiniten.hpp"
#include "ginibre/freeenergy.hpp"
#include "ginibre/geometry.hpp"

using namespace ginibre;
using namespace ginibre::freeenergy;
namespace ef = ginibre::exactfiniten;

namespace {
// mpmath barnesg at 30 digits (tests/oracles.py).
constexpr double kLogG_50_5 = 2987.71363697309455947;
constexpr double kLogG_12_25 = 68.2129527917422984360;

double central(const std::function<double(double)>& f, double x, double h = 1e-6) {
    return (f(x + h) - f(x - h)) / (2 * h);
}
}  // namespace

TEST_CASE("post energy") {
    CHECK(energy_post(0.0, 1e-12) == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(energy_post(0.0, 1.0) == doctest::Approx(2.25 - 2 * std::log(2.0)).epsilon(1e-14));
    for (double a : {0.05, 0.1, 0.2})
        CHECK(central([](double x) { return energy_post(x, 1.0); }, a) == doctest::Approx(-2 * a).epsilon(1e-8));
    const auto br = energy_breakdown(0.2, 1.0, Regime::Post);
    CHECK(std::fabs(br.robin + br.potential_integral - energy_post(0.2, 1.0)) < 1e-13);
    CHECK(robin_constant(0.0, 1e-12, Regime::Post) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("pre energy") {
    for (double c : {0.25, 9.0 / 16.0, 1.0, 2.0}) {
        const double ac = geometry::a_critical(c);
        CHECK(std::fabs(energy_pre(ac * (1 + 1e-8), c) - energy_post(ac * (1 + 1e-8), c)) < 1e-10);
    }
    CHECK(std::fabs(energy_pre(100.0, 1.0) + 2 * std::log(100.0) - 0.75) < 1e-3);
    CHECK(std::fabs(robin_constant(100.0, 1.0, Regime::Pre) + std::log(100.0) - 0.5) < 1e-3);
    for (double a : {0.8, 1.2, 2.0}) {
        CHECK(central([](double x) { return energy_pre(x, 1.0); }, a) == doctest::Approx(d_energy_pre_da(a, 1.0)).epsilon(1e-7));
        CHECK(central([](double x) { return fconst(x, 1.0, Regime::Pre); }, a) ==
              doctest::Approx(d_fconst_pre_da(a, 1.0)).epsilon(1e-7));
        CHECK(central([](double x) { return re_g_at_a(x, 1.0); }, a) == doctest::Approx(d_re_g_at_a_da(a, 1.0)).epsilon(1e-8));
    }
    CHECK(std::fabs(re_g_at_a(100.0, 1.0) - std::log(100.0)) < 1e-3);
}

TEST_CASE("energy gap derivative") {
    const double ac = geometry::a_critical(1.0);
    for (int i = 1; i <= 20; ++i) {
        const double a = ac + (4.0 - ac) * i / 20;
        const double q = geometry::solve_q(a, 1.0);
        const double closed = std::pow(1 - q * q, 2) * (1 - std::pow(a * q, 4)) / (2 * a * std::pow(q, 4));
        CHECK(d_energy_gap_da(a, 1.0) > 0);
        CHECK(d_energy_gap_da(a, 1.0) == doctest::Approx(closed).epsilon(1e-10));
    }
    CHECK(std::fabs(d_energy_gap_da(ac * (1 + 1e-6), 1.0)) < 1e-6);
}

TEST_CASE("constant term and zeta determinant") {
    CHECK(fconst(0.2, 1.0, Regime::Post) == doctest::Approx(std::log(0.5) / 12).epsilon(1e-14));
    CHECK(detzeta_log(0.2, 1.0, Regime::Post) == doctest::Approx(-std::log(0.5) / 6).epsilon(1e-14));
    CHECK(std::fabs(fconst(200.0, 1.0, Regime::Pre)) < 1e-3);
    for (double a : {0.5, 1.0, 1.2, 3.0}) {
        const double c = 9.0 / 16.0;
        if (geometry::classify(a, c) != Regime::Pre) continue;
        const double q = geometry::solve_q(a, c);
        const double a2q2 = a * a * q * q;
        const double alt = -std::log(std::pow(1 + a2q2 - 2 * a * a * std::pow(q, 4), 4) /
                                     (std::pow(1 - q * q, 3) * (1 - std::pow(a, 4) * std::pow(q, 6)) * std::pow(1 + a2q2, 4))) /
                           12;
        CHECK(std::fabs(detzeta_log(a, c, Regime::Pre) - alt) < 1e-12);
        CHECK(std::fabs(-0.5 * detzeta_log(a, c, Regime::Pre) - fconst(a, c, Regime::Pre)) < 1e-12);
    }
}

TEST_CASE("bernoulli and barnes") {
    CHECK(bernoulli(12) == Rational(-691, 2730));
    CHECK(bernoulli(20) == Rational(-174611, 330));
    CHECK(bernoulli(3) == 0);
    CHECK(barnes_logG_integer(0) == 0.0);
    CHECK(barnes_logG_integer(3) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(barnes_logG(50.5) == doctest::Approx(kLogG_50_5).epsilon(1e-14));
    CHECK(barnes_logG(12.25) == doctest::Approx(kLogG_12_25).epsilon(1e-13));
    const double omitted = std::fabs(bernoulli_value(8)) / (8.0 * 6.0 * std::pow(50.0, 6));
    const double rounding = 4 * std::numeric_limits<double>::epsilon() * barnes_logG_integer(50);
    CHECK(std::fabs(barnes_logG_asymptotic(50.0, 3) - barnes_logG_integer(50)) < omitted + rounding);
}

TEST_CASE("expansion against exact values") {
    const double tail = first_omitted_tail(8, 1.0, 2);
    CHECK(std::fabs(expansion(8, 0.0, 1.0, Regime::Post, 2) - reference_logZ(8, 8)) < tail);
    CHECK(reference_logZ(1, 1) == doctest::Approx(0.0));
    CHECK(reference_logZ(1, 0) == doctest::Approx(0.0));

    ef::PrecisionScope scope(256);
    double prev = 1.0;
    for (int N : {4, 8, 16}) {
        const double exact = static_cast<double>(ef::exact_logZ(ef::ExactContext::make(N, N, "0.2")));
        const double r = std::fabs(exact - expansion(N, 0.2, 1.0, Regime::Post, 2));
        CHECK(r < prev);
        prev = r;
    }
    CHECK_THROWS_AS(expansion(8, geometry::a_critical(1.0), 1.0, Regime::AtCriticality, 2), Error);
}

TEST_CASE("charpoly moment") {
    const auto z0 = charpoly_moment_asymp(0.0, 1.0, 8);
    const double H = -1.5 + 2 * std::log(2.0);
    CHECK(z0.H == doctest::Approx(H).epsilon(1e-14));
    CHECK(z0.chi == 0);
    ef::PrecisionScope scope(256);
    const double exact = static_cast<double>(ef::exact_charpoly_log_moment(8, 8, ef::Real("0.2")));
    CHECK(std::fabs(charpoly_moment_asymp(0.2, 1.0, 8).log_moment - exact) < 1e-3);
    CHECK(static_cast<double>(ef::exact_charpoly_log_moment(8, 0, ef::Real("0.7"))) == doctest::Approx(0.0));
}

TEST_CASE("radial energy") {
    const auto [r0, r1] = radial_support([](double r) { return 2 * r; }, 0.0, 10.0);
    CHECK(r0 < 1e-6);
    CHECK(r1 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(radial_energy([](double r) { return r * r; }, [](double r) { return 2 * r; }, 0.0, 1.0) ==
          doctest::Approx(0.75).epsilon(1e-12));
    auto w = [](double r) { return r * r - 2 * std::log(r); };
    auto dw = [](double r) { return 2 * r - 2 / r; };
    const auto [s0, s1] = radial_support(dw, 1e-6, 10.0);
    CHECK(radial_energy(w, dw, s0, s1) == doctest::Approx(energy_post(0.0, 1.0)).epsilon(1e-10));
    auto w_shift = [&](double r) { return w(r) + 0.125; };
    CHECK(radial_energy(w_shift, dw, s0, s1) - radial_energy(w, dw, s0, s1) == doctest::Approx(0.125).epsilon(1e-12));
}
