#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "ginibre/error.hpp"
#include "ginibre/exactfiniten.hpp"
#include "ginibre/freeenergy.hpp"
#include "ginibre/geometry.hpp"
#include "ginibre/painleve.hpp"

using namespace ginibre;
using namespace ginibre::painleve;
namespace ef = ginibre::exactfiniten;

namespace {
// det(I - K_Airy) by Gauss-Legendre Nystrom discretization, 60 and 100 nodes agree to 1e-15 (tests/oracles.py).
struct FredholmValue {
    double t;
    double F;
};
constexpr FredholmValue kFredholm[] = {
    {-4.0, 0.003544553595508204},
    {-2.0, 0.4132241425051342},
    {0.0, 0.9693728283552648},
    {2.0, 0.9998875536983094},
};
constexpr double kAi5 = 1.083444281360744173e-4;

const TWSolution& solution() {
    static const TWSolution sol = hastings_mcleod();
    return sol;
}
}  // namespace

TEST_CASE("airy function") {
    CHECK(airy_ai(0.0) == doctest::Approx(std::pow(3.0, -2.0 / 3.0) / boost::math::tgamma(2.0 / 3.0)).epsilon(1e-15));
    CHECK(airy_ai_prime(0.0) == doctest::Approx(-0.2588194037928067984).epsilon(1e-15));
    CHECK(airy_ai(5.0) == doctest::Approx(kAi5).epsilon(1e-14));
    const double zeta = 2.0 / 3.0 * std::pow(5.0, 1.5);
    const double lead = std::exp(-zeta) / (2 * std::sqrt(M_PI) * std::pow(5.0, 0.25));
    CHECK(std::fabs(airy_ai(5.0) / lead - 1) < 5.0 / (72 * zeta));
    const double h = 1e-4;
    for (double x = -6; x <= 6; x += 0.5) {
        const double second = (airy_ai(x + h) - 2 * airy_ai(x) + airy_ai(x - h)) / (h * h);
        CHECK(std::fabs(second - x * airy_ai(x)) < 1e-6);
    }
}

TEST_CASE("Hastings-McLeod solution") {
    const auto& sol = solution();
    CHECK(sol.hm_q_at(7.99) / airy_ai(7.99) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(sol.hm_q_at(-10.0) / std::sqrt(5.0) == doctest::Approx(1.0).epsilon(1e-3));
    for (double s = -11.5; s < 8.0; s += 0.5) CHECK(std::fabs(sol.ode_residual(s)) < 10 * sol.ode_tol);
    const auto finer = hastings_mcleod(kDefaultSMin, kDefaultSMax, kDefaultTol / 2);
    CHECK(std::fabs(finer.hm_q_at(-5.0) - sol.hm_q_at(-5.0)) < kDefaultTol);
    CHECK(sol.hm_q_at(12.0) == doctest::Approx(airy_ai(12.0)).epsilon(1e-12));
    CHECK_THROWS_AS(sol.hm_q_at(-13.0), Error);
    CHECK_THROWS_AS(hastings_mcleod(-20.0), Error);
    CHECK_THROWS_AS(hastings_mcleod(-12.0, 4.0), Error);
    CHECK_THROWS_AS(hastings_mcleod(-12.0, 8.0, 1e-14), Error);
}

TEST_CASE("Tracy-Widom distribution") {
    const auto& sol = solution();
    for (const auto& ref : kFredholm) {
        CAPTURE(ref.t);
        CHECK(std::fabs(tw_cdf(sol, ref.t) - ref.F) < 1e-12);
    }
    CHECK(std::fabs(tw_cdf(sol, 8.0) - 1.0) < 1e-10);
    double prev = 0.0;
    for (double t = -8; t <= 6; t += 0.25) {
        CHECK(tw_cdf(sol, t) > prev);
        prev = tw_cdf(sol, t);
    }
    for (double t : {-6.0, -2.0, 0.0, 3.0}) {
        const double h = 1e-4;
        const double fd = (tw_log_cdf(sol, t + h) - tw_log_cdf(sol, t - h)) / (2 * h);
        CHECK(std::fabs(fd - static_cast<double>(sol.state_at(t)[2])) < 1e-6);
    }
    const double x = 8.0;
    const double correction = 3.0 / (64 * x * x * x);
    CHECK(std::fabs(tw_log_cdf(sol, -x) - tw_left_tail_log(x)) < correction);
    CHECK(std::fabs((1 - tw_cdf(sol, 6.0)) / tw_right_tail(6.0) - 1) < 0.2);
}

TEST_CASE("critical window") {
    const auto& sol = solution();
    CHECK(critical_a(0.0, 1.0, 8) == doctest::Approx(geometry::a_critical(1.0)).epsilon(1e-15));
    CHECK(critical_a(1.0, 1.0, 64) < critical_a(0.0, 1.0, 64));
    CHECK(std::fabs(tw_log_cdf(sol, 8.0)) < 1e-9);

    ef::PrecisionScope scope(256);
    double prev = 1e9;
    for (int N : {4, 8}) {
        const double a = critical_a(0.0, 1.0, N);
        const double exact = static_cast<double>(ef::exact_logZ(ef::ExactContext::make(N, N, ef::Real(a))));
        const double r = std::fabs(critical_expansion(sol, N, 1.0, 0.0) - exact);
        CHECK(r < prev);
        prev = r;
    }
}
