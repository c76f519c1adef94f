#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "ginibre/error.hpp"
#include "ginibre/exactfiniten.hpp"

using namespace ginibre;
using namespace ginibre::exactfiniten;

namespace {
// Andreief Gram matrix by 2D polar quadrature, and a direct 2D integral for the n = 2 gap (tests/oracles.py).
const char* kLogZ_N3_m2_a07 = "-3.002120017805764944617648670833259356304";
const char* kGap_n2_alpha1_w2_t07 = "0.290672099348541872679070235292";

double diff(const Real& x, const char* ref) { return static_cast<double>(abs(x - Real(ref))); }
}  // namespace

TEST_CASE("precision scope") {
    const auto before = Real::default_precision();
    {
        PrecisionScope scope(512);
        CHECK(Real::default_precision() == digits10_for_bits(512));
    }
    CHECK(Real::default_precision() == before);
    CHECK_THROWS_AS(PrecisionScope(64), Error);
}

TEST_CASE("contour moments") {
    PrecisionScope scope(256);
    const auto trivial = ExactContext::make(1, 0, "0.7");
    CHECK(contour_moment(trivial, 0) == 1);
    CHECK(contour_moment(trivial, 1) == 0);
    CHECK(contour_moment(trivial, 3) == 0);

    // trapezoid rule on |z| = 2 reproduces the rationals -37/24, 17/8, -5/4
    const auto ctx = ExactContext::make(2, 2, "1/2");
    CHECK(abs(contour_moment(ctx, 0) - Real(-37) / 24) < Real("1e-20"));
    CHECK(abs(contour_moment(ctx, 1) - Real(17) / 8) < Real("1e-20"));
    CHECK(abs(contour_moment(ctx, 2) - Real(-5) / 4) < Real("1e-20"));

    // a = 0 leaves only k = N - 1
    const auto zero = ExactContext::make(3, 2, "0");
    for (int k = 0; k < 6; ++k) CHECK(contour_moment(zero, k) == (k == 2 ? 1 : 0));
    CHECK_THROWS_AS(contour_moment(ctx, -1), Error);
    CHECK_THROWS_AS(ExactContext::make(100, 30, "0.1"), Error);
}

TEST_CASE("calibration fixture") {
    std::ifstream in(std::string(GINIBRE_FIXTURES) + "/calibration.json");
    REQUIRE(in.good());
    const auto doc = nlohmann::json::parse(in);
    CHECK(doc["normalization"]["constant"] == 1);
    PrecisionScope scope(256);
    for (const auto& row : doc["log_z"]) {
        const auto ctx = ExactContext::make(row["N"], row["m"], row["a"].get<std::string>());
        CAPTURE(row.dump());
        CHECK(diff(exact_logZ(ctx), row["log_z"].get<std::string>().c_str()) < 1e-25);
        if (row["a"] == "0") CHECK(diff(reference_logZ(row["N"], row["m"]), row["log_z"].get<std::string>().c_str()) < 1e-25);
    }
}

TEST_CASE("log partition function") {
    PrecisionScope scope(256);
    CHECK(diff(exact_logZ(ExactContext::make(3, 2, "0.7")), kLogZ_N3_m2_a07) < 1e-25);
    CHECK(abs(exact_logZ(ExactContext::make(2, 2, "0")) - reference_logZ(2, 2)) < Real("1e-30"));
    // even in a
    CHECK(abs(exact_logZ(ExactContext::make(5, 5, "0.4")) - exact_logZ(ExactContext::make(5, 5, "-0.4"))) < Real("1e-40"));
}

TEST_CASE("orthogonal polynomial") {
    PrecisionScope scope(256);
    const auto mono = exact_op(ExactContext::make(6, 6, "0"));
    for (int k = 0; k < 6; ++k) CHECK(abs(mono[k]) < Real("1e-60"));
    CHECK(mono[6] == 1);
    CHECK(abs(exact_A11(ExactContext::make(6, 6, "0"))) < Real("1e-60"));

    const double a11 = static_cast<double>(exact_A11(ExactContext::make(8, 8, "0.2")));
    CHECK(std::fabs(a11 - 1.6) < 1e-5);

    const auto p = eval_poly({Real(2), Real(0), Real(1)}, {Real(0), Real(1)});
    CHECK(to_complex(p) == std::complex<double>(1.0, 0.0));
}

TEST_CASE("LUE gap probability") {
    PrecisionScope scope(256);
    CHECK(lue_gap_probability(3, 2, Real(0), 3) == 1);
    CHECK(abs(lue_gap_probability(1, 0, Real("1.5"), 1) - exp(Real("-1.5"))) < Real("1e-70"));
    CHECK(diff(lue_gap_probability(2, 1, Real("0.7"), 2), kGap_n2_alpha1_w2_t07) < 1e-25);
    Real prev = 1;
    for (int i = 1; i <= 20; ++i) {
        const Real cur = lue_gap_probability(4, 2, Real(i) / 4, 4);
        CHECK(cur <= prev);
        prev = cur;
    }
    CHECK(prev < Real("1e-10"));
    CHECK_THROWS_AS(lue_gap_probability(2, 1, Real(-1), 2), Error);
    CHECK(upper_incomplete_gamma_int(3, Real(0)) == 2);
}

TEST_CASE("duality") {
    PrecisionScope scope(256);
    CHECK(duality_residual(3, 3, Real(0)).residual == 0);
    CHECK(duality_residual(2, 2, Real("0.5")).residual < Real("1e-30"));
    CHECK(duality_residual(4, 4, Real("1.0")).residual < Real("1e-25"));
}

TEST_CASE("characteristic polynomial moment") {
    PrecisionScope scope(256);
    for (auto [N, m] : {std::pair{3, 2}, std::pair{5, 4}}) {
        Real product = 1;
        for (int k = 0; k < N; ++k) {
            Real term = 1;
            for (int j = k + 1; j <= m + k; ++j) term *= j;
            product *= term / pow(Real(N), m);
        }
        CHECK(abs(exact_charpoly_log_moment(N, m, Real(0)) - log(product)) < Real("1e-60"));
    }
    CHECK(abs(exact_charpoly_log_moment(6, 0, Real("1.3"))) < Real("1e-60"));
}

TEST_CASE("dense linear algebra") {
    PrecisionScope scope(128);
    int sign = 0;
    const Real ld = log_abs_det({{Real(0), Real(2)}, {Real(3), Real(1)}}, sign);
    CHECK(sign == -1);
    CHECK(abs(ld - log(Real(6))) < Real("1e-35"));
    CHECK_THROWS_AS(log_abs_det({{Real(1), Real(2)}, {Real(2), Real(4)}}, sign), Error);
    const auto x = solve_linear({{Real(2), Real(1)}, {Real(1), Real(3)}}, {Real(3), Real(5)});
    CHECK(abs(x[0] - Real("0.8")) < Real("1e-35"));
    CHECK(abs(x[1] - Real("1.4")) < Real("1e-35"));
}
