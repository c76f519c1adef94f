#pragma once

#include <complex>
#include <vector>

namespace ginibre::geometry {

using cplx = std::complex<double>;

enum class Regime { Post, Pre, AtCriticality };

const char* to_string(Regime r);

inline constexpr double kRegimeTol = 1e-12;

double a_critical(double c);
// Inverse of a_critical on a in (0, 1).
double c_critical(double a);

Regime classify(double a, double c, double tol = kRegimeTol);

struct ModelParams {
    double a = 0.0;
    double c = 1.0;
    Regime regime = Regime::Post;

    static ModelParams make(double a, double c, double tol = kRegimeTol);
};

// Root u = q^2 of u^3 - ((a^2+4c+2)/(2a^2)) u^2 + 1/(2a^4) with 0 < u < 1 and 1 - a^2 u > 0.
double solve_q(double a, double c);
double q_cubic_residual(double a, double c, double q);

struct PreGeometry {
    double a = 0.0;
    double c = 0.0;
    double q = 0.0;
    double R = 0.0;
    double kappa = 0.0;
    cplx beta;
    cplx beta_bar;
    double b = 0.0;  // R/q, the real zero of the spectral curve factor
    cplx z_plus;
    cplx z_minus;

    double abs_beta() const { return R * q + kappa / q; }

    // Exterior conformal map from {|w| > 1} and its derivative.
    cplx f(cplx w) const;
    cplx df(cplx w) const;

    // Inverse of f on the exterior; throws BranchCut on the slit [beta_bar, beta].
    cplx F(cplx z) const;
    cplx dF(cplx z) const;

    // sqrt((z-beta)(z-beta_bar)) with the slit on the vertical segment and ~z at infinity.
    cplx slit_sqrt(cplx z) const;

    // max |f(e^{it})| over a fine angular sample.
    double outer_radius(int samples = 2048) const;
};

PreGeometry pre_geometry(double a, double c);

struct PostGeometry {
    double outer_radius = 0.0;
    double inner_center = 0.0;
    double inner_radius = 0.0;
    double beta = 0.0;
    double b = 0.0;
};

PostGeometry post_geometry(double a, double c);

struct BoundaryComponent {
    std::vector<double> theta;
    std::vector<cplx> points;
    bool closed = true;
};

struct Droplet {
    std::vector<BoundaryComponent> components;
    int euler_characteristic = 0;
};

Droplet droplet_boundary(const ModelParams& params, int n_points);

int euler_characteristic(Regime r);

}  // namespace ginibre::geometry
