#include "ginibre/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ginibre/error.hpp"

namespace ginibre::geometry {

const char* to_string(Regime r) {
    switch (r) {
        case Regime::Post: return "post";
        case Regime::Pre: return "pre";
        case Regime::AtCriticality: return "critical";
    }
    return "unknown";
}

double a_critical(double c) {
    if (!(c > 0.0)) fail(ErrorKind::Domain, "a_critical: c must be positive");
    // sqrt(c+1) - sqrt(c) without cancellation for large c
    return 1.0 / (std::sqrt(c + 1.0) + std::sqrt(c));
}

double c_critical(double a) {
    if (!(a > 0.0 && a < 1.0)) fail(ErrorKind::Domain, "c_critical: a must lie in (0,1)");
    const double t = 1.0 - a * a;
    return t * t / (4.0 * a * a);
}

Regime classify(double a, double c, double tol) {
    if (!(a >= 0.0) || !(c > 0.0)) fail(ErrorKind::Domain, "classify: need a >= 0 and c > 0");
    if (a == 0.0) return Regime::Post;
    const double d = a - a_critical(c);
    if (d < -tol) return Regime::Post;
    if (d > tol) return Regime::Pre;
    return Regime::AtCriticality;
}

ModelParams ModelParams::make(double a, double c, double tol) { return {a, c, classify(a, c, tol)}; }

namespace {

long double cubic(long double u, long double B, long double D) { return (u - B) * u * u + D; }

long double polish(long double u, long double B, long double D) {
    for (int it = 0; it < 6; ++it) {
        const long double p = cubic(u, B, D);
        const long double dp = (3.0L * u - 2.0L * B) * u;
        if (dp == 0.0L) break;
        const long double step = p / dp;
        u -= step;
        if (std::fabs(step) <= 1e-19L * std::fabs(u)) break;
    }
    return u;
}

}  // namespace

double solve_q(double a, double c) {
    if (!(a > 0.0) || !(c > 0.0)) fail(ErrorKind::Domain, "solve_q: need a > 0 and c > 0");
    const long double A = a;
    const long double B = (A * A + 4.0L * c + 2.0L) / (2.0L * A * A);
    const long double D = 1.0L / (2.0L * A * A * A * A);
    // u = v + B/3 gives v^3 + p v + r = 0
    const long double p = -B * B / 3.0L;
    const long double r = -2.0L * B * B * B / 27.0L + D;
    std::vector<long double> roots;
    const long double disc = 4.0L * p * p * p + 27.0L * r * r;
    if (disc <= 0.0L) {
        const long double m = 2.0L * std::sqrt(-p / 3.0L);
        long double arg = (3.0L * r / (2.0L * p)) * std::sqrt(-3.0L / p);
        arg = std::clamp(arg, -1.0L, 1.0L);
        const long double phi = std::acos(arg) / 3.0L;
        for (int k = 0; k < 3; ++k)
            roots.push_back(m * std::cos(phi - 2.0L * std::numbers::pi_v<long double> * k / 3.0L) + B / 3.0L);
    } else {
        const long double s = std::sqrt(disc / 108.0L);
        roots.push_back(std::cbrt(-r / 2.0L + s) + std::cbrt(-r / 2.0L - s) + B / 3.0L);
    }
    long double best = -1.0L;
    for (long double u : roots) {
        u = polish(u, B, D);
        if (u > 0.0L && u < 1.0L && 1.0L - A * A * u > 0.0L) best = std::max(best, u);
    }
    if (best < 0.0L)
        fail(ErrorKind::NoValidRoot, "solve_q: no root with 0<q<1 and kappa>0 at a=" + std::to_string(a) +
                                         ", c=" + std::to_string(c));
    return static_cast<double>(std::sqrt(best));
}

double q_cubic_residual(double a, double c, double q) {
    const long double A = a, Q2 = static_cast<long double>(q) * q;
    const long double B = (A * A + 4.0L * c + 2.0L) / (2.0L * A * A);
    const long double D = 1.0L / (2.0L * A * A * A * A);
    return static_cast<double>(cubic(Q2, B, D));
}

cplx PreGeometry::f(cplx w) const { return R * w - kappa / (w - q) - kappa / q; }

cplx PreGeometry::df(cplx w) const {
    const cplx d = w - q;
    return R + kappa / (d * d);
}

cplx PreGeometry::slit_sqrt(cplx z) const {
    const double h = beta.imag();
    const cplx w = z - beta.real();
    return w * std::sqrt(1.0 + h * h / (w * w));
}

cplx PreGeometry::F(cplx z) const {
    const cplx w = z - beta.real();
    const double h = beta.imag();
    if (std::abs(w.real()) <= 1e-14 * (1.0 + h) && std::abs(w.imag()) <= h)
        fail(ErrorKind::BranchCut, "inverse_F: point lies on the slit");
    return (z + abs_beta() + slit_sqrt(z)) / (2.0 * R);
}

cplx PreGeometry::dF(cplx z) const { return 1.0 / df(F(z)); }

double PreGeometry::outer_radius(int samples) const {
    double best = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double t = 2.0 * std::numbers::pi * k / samples;
        best = std::max(best, std::abs(f(std::polar(1.0, t))));
    }
    return best;
}

PreGeometry pre_geometry(double a, double c) {
    if (classify(a, c) != Regime::Pre) fail(ErrorKind::Domain, "pre_geometry: parameters are not pre-critical");
    PreGeometry g;
    g.a = a;
    g.c = c;
    g.q = solve_q(a, c);
    const double q = g.q;
    g.R = (1.0 + a * a * q * q) / (2.0 * a * q);
    g.kappa = (1.0 - q * q) * (1.0 - a * a * q * q) / (2.0 * a * q);
    g.beta = cplx(g.R * q - g.kappa / q, 2.0 * std::sqrt(g.kappa * g.R));
    g.beta_bar = std::conj(g.beta);
    g.b = g.R / q;
    const double im = std::sqrt(g.kappa / g.R);
    g.z_plus = cplx(q, im);
    g.z_minus = cplx(q, -im);
    return g;
}

PostGeometry post_geometry(double a, double c) {
    if (!(a >= 0.0) || !(c > 0.0)) fail(ErrorKind::Domain, "post_geometry: need a >= 0 and c > 0");
    PostGeometry g;
    g.outer_radius = std::sqrt(1.0 + c);
    g.inner_center = a;
    g.inner_radius = std::sqrt(c);
    if (a == 0.0) {
        g.beta = 0.0;
        g.b = std::numeric_limits<double>::infinity();
        return g;
    }
    const double disc = (1.0 - a * a) * (1.0 - a * a) - 4.0 * a * a * c;
    if (!(disc > 0.0)) fail(ErrorKind::Domain, "post_geometry: parameters are not post-critical");
    const double s = std::sqrt(disc);
    g.beta = (a * a + 1.0 - s) / (2.0 * a);
    g.b = (a * a + 1.0 + s) / (2.0 * a);
    return g;
}

int euler_characteristic(Regime r) { return r == Regime::Pre ? 1 : 0; }

Droplet droplet_boundary(const ModelParams& params, int n_points) {
    if (n_points < 8) fail(ErrorKind::Domain, "droplet_boundary: need at least 8 points");
    if (params.regime == Regime::AtCriticality)
        fail(ErrorKind::Domain, "droplet_boundary: critical droplet is not rendered");
    Droplet d;
    d.euler_characteristic = euler_characteristic(params.regime);
    auto sample = [n_points](auto&& curve) {
        BoundaryComponent comp;
        for (int k = 0; k < n_points; ++k) {
            const double t = 2.0 * std::numbers::pi * k / n_points;
            comp.theta.push_back(t);
            comp.points.push_back(curve(t));
        }
        return comp;
    };
    if (params.regime == Regime::Post) {
        const PostGeometry g = post_geometry(params.a, params.c);
        d.components.push_back(sample([&](double t) { return std::polar(g.outer_radius, t); }));
        d.components.push_back(
            sample([&](double t) { return cplx(g.inner_center, 0.0) + std::polar(g.inner_radius, t); }));
    } else {
        const PreGeometry g = pre_geometry(params.a, params.c);
        d.components.push_back(sample([&](double t) { return g.f(std::polar(1.0, t)); }));
    }
    return d;
}

}  // namespace ginibre::geometry
