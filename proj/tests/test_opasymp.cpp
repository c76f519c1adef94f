#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ginibre/error.hpp"
#include "ginibre/exactfiniten.hpp"
#include "ginibre/freeenergy.hpp"
#include "ginibre/geometry.hpp"
#include "ginibre/opasymp.hpp"

using namespace ginibre;
using namespace ginibre::opasymp;
namespace ef = ginibre::exactfiniten;

namespace {
double op_error(double a, double c, int N, cplx z) {
    const auto ctx = ef::ExactContext::make(N, static_cast<int>(std::lround(c * N)), ef::Real(a));
    const cplx exact = ef::to_complex(ef::eval_poly(ef::exact_op(ctx), {ef::Real(z.real()), ef::Real(z.imag())}));
    const GEvaluator ge(ModelParams::make(a, c));
    return std::abs(p_asymp(ge, z, N) / exact - 1.0);
}
}  // namespace

TEST_CASE("g-function") {
    const GEvaluator post(ModelParams::make(0.2, 1.0));
    for (cplx z : {cplx(3, 0), cplx(-2, 2), cplx(0.5, 4)}) {
        const cplx expected = std::pow(z, 8) * std::pow(z / (z - 0.2), 8.0);
        CHECK(std::abs(std::exp(8.0 * post.g(z)) / expected - 1.0) < 1e-13);
    }

    const double a = 1.2, c = 1.0;
    const GEvaluator pre(ModelParams::make(a, c));
    const double q = geometry::solve_q(a, c);
    const double coeff = -(1 / (4 * a) + a / 2 - 1 / (2 * a * q * q) - std::pow(a, 3) * std::pow(q, 4) / 4);
    // what remains after the 1/z term is a z^-2 term with a stable real coefficient
    for (double theta : {0.0, 0.7, 2.0}) {
        const cplx z3 = std::polar(1e3, theta), z4 = std::polar(1e4, theta);
        const cplx rest3 = (pre.g(z3) - std::log(z3) - coeff / z3) * z3 * z3;
        const cplx rest4 = (pre.g(z4) - std::log(z4) - coeff / z4) * z4 * z4;
        CHECK(std::abs(rest4) < 0.05);
        CHECK(std::abs(rest4 - rest3) < 1e-3);
        CHECK(std::abs(pre.g(z4) - std::log(z4) - coeff / z4) < 1e-5 * std::fabs(coeff) / 1e4);
    }
    // approach a from both sides of the real axis
    const double h = 1e-7;
    const double avg = 0.5 * (pre.g(cplx(a, h)).real() + pre.g(cplx(a, -h)).real());
    CHECK(avg == doctest::Approx(freeenergy::re_g_at_a(a, c)).epsilon(1e-7));
}

TEST_CASE("rational coefficients") {
    const auto geom = geometry::pre_geometry(1.2, 1.0);
    const auto r8 = rh_coefficients(geom, 8);
    const auto r16 = rh_coefficients(geom, 16);
    CHECK((r8.h21 - r8.h11.conjugate()).norm() == 0.0);
    CHECK((r8.h11 - 2.0 * r16.h11).norm() < 1e-15 * r8.h11.norm());
    CHECK((r8.h12 - 2.0 * r16.h12).norm() < 1e-15 * r8.h12.norm());
    CHECK((r8.h22 - 2.0 * r16.h22).norm() < 1e-15 * r8.h22.norm());

    double bound = 0.0;
    for (double radius : {1e2, 1e3, 1e4}) {
        const auto e = r_entries(r8, std::polar(radius, 0.4));
        const double scaled = std::max(std::abs(e.R11), std::abs(e.R12)) * radius;
        if (bound == 0.0) bound = 2 * scaled;
        CHECK(scaled < bound);
    }
    for (int N : {4, 8, 16}) {
        const auto rc = rh_coefficients(geom, N);
        const double closed = residue_R11_closed(1.2, 1.0, N);
        CHECK(std::abs(residue_R11_numeric(rc) - closed) < 1e-10 * std::fabs(closed));
    }
    CHECK(std::fabs(residue_R11_closed(1.2, 1.0, 16) * 2 - residue_R11_closed(1.2, 1.0, 8)) < 1e-15);
}

TEST_CASE("orthogonal polynomial asymptotics") {
    ef::PrecisionScope scope(256);
    const GEvaluator zero(ModelParams::make(0.0, 1.0));
    CHECK(std::abs(p_asymp(zero, cplx(2, 1), 8) / std::pow(cplx(2, 1), 8) - 1.0) < 1e-14);

    // post: super-polynomial decay, about a factor 36 per step of 4 in N
    double prev = 1.0;
    for (int N : {4, 8, 12, 16}) {
        const double err = op_error(0.2, 1.0, N, 3.0);
        CHECK(err < prev / 20);
        prev = err;
    }
    CHECK(prev < 1e-7);

    const double e4 = op_error(1.2, 1.0, 4, 3.0), e8 = op_error(1.2, 1.0, 8, 3.0), e16 = op_error(1.2, 1.0, 16, 3.0);
    CHECK(e8 < e4);
    CHECK(e16 < e8);

    const GEvaluator ge(ModelParams::make(0.2, 1.0));
    CHECK_THROWS_AS(p_asymp(ge, cplx(0.3, 0), 8), Error);
    CHECK(p_asymp_error_order(Regime::Pre) == 2);
}

TEST_CASE("A11 and the log-derivative of Z") {
    ef::PrecisionScope scope(256);
    double prev = 1.0;
    for (int N : {4, 8, 12, 16}) {
        const double exact = static_cast<double>(ef::exact_A11(ef::ExactContext::make(N, N, "0.2")));
        const double err = std::fabs(exact - a11_asymp(N, 0.2, 1.0, Regime::Post));
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-8);

    const double a = 1.2, c = 1.0, q = geometry::solve_q(a, c);
    const double lead = (1 - a * a * q * q) * (2 - q * q - a * a * std::pow(q, 4)) / (2 * a * q * q);
    CHECK(dlogZ_da(1000, a, c, Regime::Pre) / 1e6 == doctest::Approx(lead).epsilon(1e-2));
    double worst = 0.0;
    for (int N : {4, 8, 16}) {
        const double exact = static_cast<double>(ef::exact_A11(ef::ExactContext::make(N, N, "1.2")));
        worst = std::max(worst, N * std::fabs(exact - a11_asymp(N, a, c, Regime::Pre)));
    }
    CHECK(worst < 1.0);

    const double h = 1e-6;
    auto logz = [](double x) { return static_cast<double>(ef::exact_logZ(ef::ExactContext::make(8, 8, ef::Real(x)))); };
    const double fd = (logz(0.2 + h) - logz(0.2 - h)) / (2 * h);
    CHECK(fd == doctest::Approx(dlogZ_da(8, 0.2, 1.0, Regime::Post)).epsilon(1e-4));
    CHECK(dlogZ_da(8, 0.2, 1.0, Regime::Post) == doctest::Approx(2 * 0.2 * 64).epsilon(1e-12));
    CHECK(std::fabs((logz(h) - logz(-h)) / (2 * h)) < 1e-12);
}
