#pragma once

#include <complex>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

namespace ginibre::exactfiniten {

using Real = boost::multiprecision::mpfr_float;

inline constexpr int kDefaultBits = 256;
inline constexpr int kMaxMomentIndex = 120;  // m + N

// Sets the process-wide working precision for Real and restores it on scope exit.
class PrecisionScope {
public:
    explicit PrecisionScope(int bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_digits10_;
};

unsigned digits10_for_bits(int bits);

// Parses decimals ("0.2") and rationals ("9/16") exactly at the current precision.
Real parse_real(const std::string& text);

struct ExactContext {
    int N = 1;
    int m = 0;
    Real a;
    int precision_bits = kDefaultBits;

    // Precision must already be active (PrecisionScope) when these are called.
    static ExactContext make(int N, int m, const Real& a, int bits = kDefaultBits);
    static ExactContext make(int N, int m, const std::string& a, int bits = kDefaultBits);
};

struct MomentTable {
    std::vector<Real> nu;  // nu_k / (2 pi i), k = 0 .. 2N-1
    Real hankel_logdet;
    int hankel_sign = 1;
};

// Coefficient of z^{m+N-1-k} in (z-a)^m e^{-N a z}.
Real contour_moment(const ExactContext& ctx, int k);
MomentTable moment_table(const ExactContext& ctx);

Real exact_logZ(const ExactContext& ctx);
Real reference_logZ(int N, int m);

// Monic coefficients c_0..c_N of p_N (c_N = 1).
std::vector<Real> exact_op(const ExactContext& ctx);
Real exact_A11(const ExactContext& ctx);
struct ComplexReal {
    Real re;
    Real im;
};
ComplexReal eval_poly(const std::vector<Real>& coeffs, const ComplexReal& z);
std::complex<double> to_complex(const ComplexReal& z);

Real upper_incomplete_gamma_int(int s, const Real& y);
// P[lambda_min > t] for the n-point LUE with weight x^{alpha_n} e^{-N_w x}.
Real lue_gap_probability(int n, int alpha_n, const Real& t, int N_w);

struct DualityCheck {
    Real lhs;
    Real rhs;
    Real residual;
};
DualityCheck duality_residual(int N, int m, const Real& x);

// log E|det(G_N - z)|^{2m} = log Z_N(|z|, m/N) - log Z_N^{Gin}
Real exact_charpoly_log_moment(int N, int m, const Real& z_abs);

// Dense LU with partial pivoting; returns log|det| and writes the sign.
Real log_abs_det(std::vector<std::vector<Real>> A, int& sign);
std::vector<Real> solve_linear(std::vector<std::vector<Real>> A, std::vector<Real> b);

}  // namespace ginibre::exactfiniten
