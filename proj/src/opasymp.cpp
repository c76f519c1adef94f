#include "ginibre/opasymp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ginibre/constants.hpp"
#include "ginibre/error.hpp"

namespace ginibre::opasymp {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_regime(Regime r, const char* who) {
    if (r == Regime::AtCriticality) fail(ErrorKind::Domain, std::string(who) + ": regime must be post or pre");
}

}  // namespace

GEvaluator::GEvaluator(const ModelParams& params, double quadrature_tol)
    : params_(params), quadrature_tol_(quadrature_tol) {
    require_regime(params.regime, "GEvaluator");
    if (params.regime == Regime::Pre) {
        pre_ = geometry::pre_geometry(params.a, params.c);
        const auto& g = *pre_;
        reference_radius_ = std::max({g.abs_beta(), g.b, g.a, g.outer_radius()});
    } else {
        const auto g = geometry::post_geometry(params.a, params.c);
        reference_radius_ = std::max({g.beta, params.a, g.outer_radius});
    }
}

bool GEvaluator::in_exterior(cplx z) const { return std::abs(z) > kExteriorFactor * reference_radius_; }

cplx GEvaluator::g(cplx z) const { return pre_ ? g_pre(z) : g_post(z); }

cplx GEvaluator::dg(cplx z) const {
    if (pre_) return 1.0 / z + 0.5 * g_pre_excess(z);
    const double a = params_.a, c = params_.c;
    return 1.0 / z + c * (1.0 / z - 1.0 / (z - a));
}

cplx GEvaluator::g_post(cplx z) const {
    const double a = params_.a, c = params_.c;
    if (z == 0.0 || z == a) fail(ErrorKind::Domain, "g_post: z must avoid 0 and a");
    return std::log(z) + c * std::log(z / (z - a));
}

cplx GEvaluator::g_pre_excess(cplx z) const {
    const auto& g = *pre_;
    const double x0 = g.beta.real(), h = g.beta.imag();
    const cplx w = z - x0;
    const cplx delta = h * h / (g.slit_sqrt(z) + w);
    const double a = g.a;
    return (-a * g.R * x0 / g.q - a * (z - g.b) * delta - (g.c - 1.0) * a) / (z * (z - a));
}

cplx GEvaluator::g_pre(cplx z) const {
    const auto& geom = *pre_;
    const double x0 = geom.beta.real(), h = geom.beta.imag();
    if (z == 0.0 || z == geom.a) fail(ErrorKind::Domain, "g_pre: z must avoid 0 and a");
    // the outward ray z/u, u in (0,1], must not meet the slit
    if (z.real() != 0.0) {
        const double u = z.real() / x0;
        if (u > 0.0 && u <= 1.0 && std::abs(z.imag()) / u <= h)
            fail(ErrorKind::BranchCut, "g_pre: integration ray meets the slit");
    }
    using boost::math::quadrature::gauss_kronrod;
    auto integrand = [&](double u) -> cplx {
        if (u <= 0.0) return 0.0;
        return 0.5 * g_pre_excess(z / u) * z / (u * u);
    };
    double err = 0.0;
    const cplx tail = gauss_kronrod<double, 61>::integrate(integrand, 0.0, 1.0, 15, quadrature_tol_, &err);
    if (!(err <= 1e3 * quadrature_tol_ * std::max(1.0, std::abs(tail))))
        fail(ErrorKind::Quadrature, "g_pre: quadrature did not converge");
    return std::log(z) - tail;
}

RHCoefficients rh_coefficients(const geometry::PreGeometry& geom, int N, HVariant variant) {
    if (N < 1) fail(ErrorKind::Domain, "rh_coefficients: N must be positive");
    const cplx beta = geom.beta, bb = geom.beta_bar;
    const double a = geom.a, b = geom.b, Rk = geom.R * geom.kappa;
    const cplx W = a * (bb - b) * std::sqrt(bb - beta) / ((bb - a) * bb);
    RHCoefficients rc;
    rc.N = N;
    rc.beta = beta;
    rc.variant = variant;
    rc.gamma11 = std::pow(2.0, -2.0 / 3.0) * std::pow(W, 2.0 / 3.0);
    rc.gamma12 = 0.8 * (1.0 / (bb - b) + 1.0 / (2.0 * (bb - beta)) - 1.0 / (bb - a) - 1.0 / bb) * rc.gamma11;

    const double sqrt_rk = std::sqrt(Rk), root4_rk = std::sqrt(sqrt_rk), n = N;
    const cplx g11 = rc.gamma11, g12 = rc.gamma12;
    const cplx p = cplx(1.0, 1.0) / (128.0 * std::sqrt(2.0) * root4_rk * std::pow(g11, 2.5) * n);
    const cplx e1 = 3.0 * g11 - 10.0 * kI * sqrt_rk * g12;
    const cplx e2 = (19.0 * g11 + 30.0 * kI * sqrt_rk * g12) / 3.0;
    const cplx off = variant == HVariant::Corrected ? kI * p * e2 : p * e2;
    rc.h11 << p * e1, off, off, -p * e1;
    const cplx p2 = 5.0 * root4_rk / (48.0 * std::sqrt(2.0) * std::pow(g11, 1.5) * n);
    rc.h12 << p2 * cplx(-1.0, 1.0), p2 * cplx(1.0, 1.0), p2 * cplx(1.0, 1.0), p2 * cplx(1.0, -1.0);
    rc.h21 = rc.h11.conjugate();
    rc.h22 = rc.h12.conjugate();
    return rc;
}

REntries r_entries(const RHCoefficients& rc, cplx z) {
    const cplx beta = rc.beta, bb = std::conj(rc.beta);
    if (z == beta || z == bb) fail(ErrorKind::Domain, "r_entries: z must avoid beta and its conjugate");
    const Mat2 I = Mat2::Identity();
    const cplx d2 = z - beta, d1 = z - bb;
    const Mat2 R2 = I + rc.h21 / d2 + rc.h22 / (d2 * d2);
    const cplx det = R2(0, 0) * R2(1, 1) - R2(0, 1) * R2(1, 0);
    if (std::abs(det) < 1e-30) fail(ErrorKind::SingularR2, "r_entries: R2 is singular at this point");
    Mat2 R2inv;
    R2inv << R2(1, 1), -R2(0, 1), -R2(1, 0), R2(0, 0);
    R2inv /= det;
    const Mat2 R1 = I + R2 * rc.h11 * R2inv / d1 + R2 * rc.h12 * R2inv / (d1 * d1);
    const Mat2 E = R1 * R2 - I;
    return {E(0, 0), E(0, 1), E(1, 0), E(1, 1)};
}

cplx residue_R11_numeric(const RHCoefficients& rc, double radius, int samples) {
    if (samples < 8 || !(radius > std::abs(rc.beta))) fail(ErrorKind::Domain, "residue_R11_numeric: bad contour");
    cplx sum = 0.0;
    for (int j = 0; j < samples; ++j) {
        const cplx z = std::polar(radius, 2.0 * kPi * j / samples);
        sum += r_entries(rc, z).R11 * z;
    }
    return sum / static_cast<double>(samples);
}

double residue_R11_closed(double a, double c, int N) {
    const double q = geometry::solve_q(a, c);
    const double q2 = q * q, a4q4 = a * a * a * a * q2 * q2;
    const double num = 1.0 - a4q4, den = 1.0 - a4q4 * q2;
    return -q2 * num * num / (16.0 * a * (1.0 - q2) * den * den) / N;
}

cplx p_asymp(const GEvaluator& ge, cplx z, int N, HVariant variant) {
    if (N < 1) fail(ErrorKind::Domain, "p_asymp: N must be positive");
    if (!ge.in_exterior(z)) fail(ErrorKind::Domain, "p_asymp: z is not in the exterior region");
    const auto& params = ge.params();
    if (!ge.pre()) {
        const double a = params.a, c = params.c;
        return std::pow(z, N) * std::exp(c * N * std::log(z / (z - a)));
    }
    const auto& geom = *ge.pre();
    const RHCoefficients rc = rh_coefficients(geom, N, variant);
    const REntries r = r_entries(rc, z);
    const cplx Fz = geom.F(z), dFz = geom.dF(z);
    const cplx main = std::sqrt(geom.R * dFz) * (1.0 + r.R11) - std::sqrt(geom.kappa * dFz) / (Fz - geom.q) * r.R12;
    return main * std::exp(static_cast<double>(N) * ge.g(z));
}

int p_asymp_error_order(Regime regime) { return regime == Regime::Pre ? 2 : 0; }

double a11_asymp(int N, double a, double c, Regime regime) {
    require_regime(regime, "a11_asymp");
    const double n = N;
    if (regime == Regime::Post) return c * a * n;
    const double q = geometry::solve_q(a, c);
    const double q2 = q * q, a2 = a * a;
    const double lead = (1.0 - a2 * q2) * (2.0 - q2 - a2 * q2 * q2) / (4.0 * a * q2);
    return lead * n + residue_R11_closed(a, c, N);
}

double dlogZ_da(int N, double a, double c, Regime regime) { return 2.0 * N * a11_asymp(N, a, c, regime); }

}  // namespace ginibre::opasymp
