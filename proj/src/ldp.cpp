#include "ginibre/ldp.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ginibre/constants.hpp"
#include "ginibre/error.hpp"
#include "ginibre/exactfiniten.hpp"
#include "ginibre/freeenergy.hpp"

namespace ginibre::ldp {

using geometry::Regime;

namespace {

void require_alpha(double alpha, const char* who) {
    if (!(alpha > 0.0)) fail(ErrorKind::Domain, std::string(who) + ": alpha must be positive");
}

void require_pushed(double t, double alpha, const char* who) {
    require_alpha(alpha, who);
    if (!(t > LUEParams::make(alpha).lambda_minus))
        fail(ErrorKind::Domain, std::string(who) + ": t must exceed lambda_-");
}

// Integrates g over [0, pi/2] after x = lo + (hi - lo) sin^2(phi).
template <class G>
double sin2_quadrature(G&& g) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    const double v = gauss_kronrod<double, 61>::integrate(g, 0.0, kPi / 2.0, 15, 1e-14, &err);
    if (!(err < 1e-10)) fail(ErrorKind::Quadrature, "density quadrature did not converge");
    return v;
}

}  // namespace

LUEParams LUEParams::make(double alpha) {
    if (!(alpha >= 0.0)) fail(ErrorKind::Domain, "LUEParams: alpha must be nonnegative");
    const double r = std::sqrt(alpha + 1.0);
    // (r-1)^2 = alpha^2 / (r+1)^2 avoids cancellation at small alpha
    const double lm = alpha / (r + 1.0);
    return {alpha, lm * lm, (r + 1.0) * (r + 1.0)};
}

double mp_density(const LUEParams& p, double x) {
    if (!(x > p.lambda_minus && x < p.lambda_plus)) return 0.0;
    return std::sqrt((p.lambda_plus - x) * (x - p.lambda_minus)) / (2.0 * kPi * x);
}

double mp_mass(const LUEParams& p) {
    const double width = p.lambda_plus - p.lambda_minus;
    return sin2_quadrature([&](double phi) {
        const double s = std::sin(phi), c = std::cos(phi);
        const double x = p.lambda_minus + width * s * s;
        return width * width * s * s * c * c / (kPi * x);
    });
}

double phi(double t, double alpha) {
    require_pushed(t, alpha, "phi");
    const double a = std::sqrt(t / alpha), c = 1.0 / alpha;
    return alpha * alpha * (freeenergy::energy_pre(a, c) - freeenergy::energy_post(a, c));
}

double psi(double t, double alpha) {
    require_pushed(t, alpha, "psi");
    const double a = std::sqrt(t / alpha), c = 1.0 / alpha;
    return freeenergy::fconst(a, c, Regime::Pre) - freeenergy::fconst(a, c, Regime::Post);
}

double phi_large_t(double t, double alpha) { return t - alpha * std::log(t); }

double kc_theta(double t, double alpha) {
    require_alpha(alpha, "kc_theta");
    if (!(t > 0.0)) fail(ErrorKind::Domain, "kc_theta: t must be positive");
    const double A = t + 2.0 * (alpha + 2.0);
    const double den = 27.0 * alpha * alpha * t;
    const double rad = (A * A * A - den) / den;
    if (rad < 0.0) fail(ErrorKind::Domain, "kc_theta: negative radicand, t outside the formula's range");
    return std::atan(std::sqrt(rad));
}

double kc_U(double t, double alpha) {
    const double A = t + 2.0 * (alpha + 2.0);
    const double cs = std::cos((kc_theta(t, alpha) + 2.0 * kPi) / 3.0);
    return 4.0 / 3.0 * A * cs * cs;
}

KCAction kc_action(double t, double alpha) {
    KCAction k;
    k.theta = kc_theta(t, alpha);
    k.U = kc_U(t, alpha);
    const double U = k.U, su = std::sqrt(U), st = std::sqrt(t);
    k.S = (U + t) / 2.0 - (U - t) * (U - t) / 32.0 + alpha / 4.0 * (su - st) * (su - st) - std::log((U - t) / 4.0) +
          alpha * alpha / 4.0 * std::log(t * U) - alpha * (alpha + 2.0) * std::log((su + st) / 2.0);
    return k;
}

double kc_rate(double t, double alpha) {
    return kc_action(t, alpha).S - kc_action(LUEParams::make(alpha).lambda_minus, alpha).S;
}

double constrained_density(double t, double alpha, double x) {
    require_pushed(t, alpha, "constrained_density");
    const double U = kc_U(t, alpha);
    if (!(x > t && x < U)) fail(ErrorKind::Domain, "constrained_density: x outside (t, U(t))");
    return std::sqrt(U - x) / (2.0 * kPi * std::sqrt(x - t)) * (x - alpha * std::sqrt(t / U)) / x;
}

double constrained_mass(double t, double alpha) {
    require_pushed(t, alpha, "constrained_mass");
    const double U = kc_U(t, alpha);
    const double shift = alpha * std::sqrt(t / U);
    return sin2_quadrature([&](double phi) {
        const double s = std::sin(phi), c = std::cos(phi);
        const double x = t + (U - t) * s * s;
        return (U - t) * c * c * (x - shift) / (kPi * x);
    });
}

double ldp_log_probability(int n, double alpha, double t, bool with_constant) {
    if (n < 1) fail(ErrorKind::Domain, "ldp_log_probability: n must be positive");
    if (t <= LUEParams::make(alpha).lambda_minus) return 0.0;
    const double nn = n;
    double v = -phi(t, alpha) * nn * nn;
    if (with_constant) v += -std::log(alpha * nn) / 12.0 + kZetaPrimeMinusOne + psi(t, alpha);
    return v;
}

CubicFit third_order_fit(double alpha, double lo, double hi, int points) {
    require_alpha(alpha, "third_order_fit");
    if (points < 4 || !(lo > 0.0 && hi > lo)) fail(ErrorKind::Domain, "third_order_fit: bad fit window");
    const double lm = LUEParams::make(alpha).lambda_minus;
    Eigen::MatrixXd A(points, 3);
    Eigen::VectorXd y(points);
    for (int i = 0; i < points; ++i) {
        const double d = lo + (hi - lo) * i / (points - 1);
        A(i, 0) = 1.0;
        A(i, 1) = d;
        A(i, 2) = d * d;
        y(i) = phi(lm + d, alpha) / (d * d * d);
    }
    const Eigen::Vector3d coef = A.colPivHouseholderQr().solve(y);
    CubicFit fit;
    fit.fitted = coef(0);
    fit.predicted = std::sqrt(alpha + 1.0) / (12.0 * lm * lm);
    fit.rel_error = std::fabs(fit.fitted / fit.predicted - 1.0);
    return fit;
}

ExactComparison compare_exact(int n, double alpha, double t) {
    const double an = alpha * n;
    const long alpha_n = std::lround(an);
    if (std::fabs(an - static_cast<double>(alpha_n)) > 1e-9)
        fail(ErrorKind::Domain, "compare_exact: alpha * n must be an integer");
    const auto p = exactfiniten::lue_gap_probability(n, static_cast<int>(alpha_n), exactfiniten::Real(t), n);
    ExactComparison r;
    r.n = n;
    r.exact_log_p = static_cast<double>(log(p));
    r.asymptotic = ldp_log_probability(n, alpha, t, true);
    r.residual = r.exact_log_p - r.asymptotic;
    return r;
}

}  // namespace ginibre::ldp
