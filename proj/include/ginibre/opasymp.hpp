#pragma once

#include <complex>
#include <optional>

#include <Eigen/Core>

#include "ginibre/geometry.hpp"

namespace ginibre::opasymp {

using geometry::cplx;
using geometry::ModelParams;
using geometry::Regime;
using Mat2 = Eigen::Matrix2cd;

inline constexpr double kExteriorFactor = 1.15;

class GEvaluator {
public:
    explicit GEvaluator(const ModelParams& params, double quadrature_tol = 1e-13);

    const ModelParams& params() const { return params_; }
    const std::optional<geometry::PreGeometry>& pre() const { return pre_; }
    double reference_radius() const { return reference_radius_; }
    double quadrature_tol() const { return quadrature_tol_; }

    // |z| above kExteriorFactor * reference_radius
    bool in_exterior(cplx z) const;

    cplx g(cplx z) const;
    cplx dg(cplx z) const;

private:
    cplx g_post(cplx z) const;
    cplx g_pre(cplx z) const;
    // 2 g'(z) - 2/z in a form without cancellation at large |z|
    cplx g_pre_excess(cplx z) const;

    ModelParams params_;
    std::optional<geometry::PreGeometry> pre_;
    double reference_radius_ = 0.0;
    double quadrature_tol_ = 1e-13;
};

// Corrected carries an extra factor i on the off-diagonal entries of h11 (and h21).
enum class HVariant { Corrected, NoPhase };

struct RHCoefficients {
    cplx gamma11;
    cplx gamma12;
    Mat2 h11;
    Mat2 h12;
    Mat2 h21;
    Mat2 h22;
    cplx beta;
    int N = 1;
    HVariant variant = HVariant::Corrected;
};

RHCoefficients rh_coefficients(const geometry::PreGeometry& geom, int N, HVariant variant = HVariant::Corrected);

struct REntries {
    cplx R11;
    cplx R12;
    cplx R21;
    cplx R22;
};

// Entries of R1(z) R2(z) - I.
REntries r_entries(const RHCoefficients& coeffs, cplx z);

// Coefficient of 1/z of R11 from a trapezoid rule on |z| = radius.
cplx residue_R11_numeric(const RHCoefficients& coeffs, double radius = 1e3, int samples = 256);
double residue_R11_closed(double a, double c, int N);

cplx p_asymp(const GEvaluator& g, cplx z, int N, HVariant variant = HVariant::Corrected);
// Error class exponent: 0 stands for super-polynomial (post), 2 for O(N^-2) (pre).
int p_asymp_error_order(Regime regime);

double a11_asymp(int N, double a, double c, Regime regime);
double dlogZ_da(int N, double a, double c, Regime regime);

}  // namespace ginibre::opasymp
