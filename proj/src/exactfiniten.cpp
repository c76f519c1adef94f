#include "ginibre/exactfiniten.hpp"

#include <cmath>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "ginibre/error.hpp"

namespace ginibre::exactfiniten {

namespace bmp = boost::multiprecision;
using Int = bmp::cpp_int;

unsigned digits10_for_bits(int bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

PrecisionScope::PrecisionScope(int bits) : saved_digits10_(Real::default_precision()) {
    if (bits < 128) fail(ErrorKind::Domain, "precision_bits must be at least 128");
    Real::default_precision(digits10_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits10_); }

namespace {

Real to_real(const Int& v) { return Real(v.str()); }

Int factorial(int n) {
    Int r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

Int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Int r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Real log_factorial(int n) { return log(to_real(factorial(n))); }

}  // namespace

Real parse_real(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Real(text);
    return Real(text.substr(0, slash)) / Real(text.substr(slash + 1));
}

ExactContext ExactContext::make(int N, int m, const Real& a, int bits) {
    if (N < 1 || m < 0) fail(ErrorKind::Domain, "ExactContext: need N >= 1 and m >= 0");
    if (m + N > kMaxMomentIndex) fail(ErrorKind::Domain, "ExactContext: m + N exceeds the supported bound 120");
    if (bits < 128) fail(ErrorKind::Domain, "ExactContext: precision_bits must be at least 128");
    return ExactContext{N, m, a, bits};
}

ExactContext ExactContext::make(int N, int m, const std::string& a, int bits) {
    return make(N, m, parse_real(a), bits);
}

Real contour_moment(const ExactContext& ctx, int k) {
    if (k < 0) fail(ErrorKind::IndexOutOfRange, "contour_moment: negative index");
    const int m = ctx.m, N = ctx.N;
    const int L = m + N - 1 - k;
    if (L < 0) return Real(0);
    // (z-a)^m e^{-Naz}: sum_j C(m,j) (-a)^{m-j} (-Na)^{L-j} / (L-j)!
    Real sum = 0;
    for (int j = 0; j <= std::min(m, L); ++j) {
        const int e = L - j;
        Int num = binomial(m, j);
        Int pw = 1;
        for (int i = 0; i < e; ++i) pw *= N;
        num *= pw;
        const Real coeff = to_real(num) / to_real(factorial(e));
        const int sign = ((m - j) + e) % 2 == 0 ? 1 : -1;
        sum += sign * coeff * pow(ctx.a, m - j + e);
    }
    return sum;
}

Real log_abs_det(std::vector<std::vector<Real>> A, int& sign) {
    const std::size_t n = A.size();
    sign = 1;
    Real logdet = 0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        Real best = abs(A[col][col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Real v = abs(A[r][col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0) fail(ErrorKind::SingularHankel, "log_abs_det: matrix is singular at working precision");
        if (piv != col) {
            std::swap(A[piv], A[col]);
            sign = -sign;
        }
        const Real p = A[col][col];
        if (p < 0) sign = -sign;
        logdet += log(abs(p));
        for (std::size_t r = col + 1; r < n; ++r) {
            const Real factor = A[r][col] / p;
            if (factor == 0) continue;
            for (std::size_t c = col; c < n; ++c) A[r][c] -= factor * A[col][c];
        }
    }
    return logdet;
}

std::vector<Real> solve_linear(std::vector<std::vector<Real>> A, std::vector<Real> b) {
    const std::size_t n = A.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (abs(A[r][col]) > abs(A[piv][col])) piv = r;
        if (A[piv][col] == 0) fail(ErrorKind::SingularHankel, "solve_linear: singular system");
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Real factor = A[r][col] / A[col][col];
            for (std::size_t c = col; c < n; ++c) A[r][c] -= factor * A[col][c];
            b[r] -= factor * b[col];
        }
    }
    std::vector<Real> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Real s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= A[i][c] * x[c];
        x[i] = s / A[i][i];
    }
    return x;
}

MomentTable moment_table(const ExactContext& ctx) {
    MomentTable t;
    const int N = ctx.N;
    t.nu.reserve(2 * N);
    for (int k = 0; k < 2 * N; ++k) t.nu.push_back(contour_moment(ctx, k));
    std::vector<std::vector<Real>> H(N, std::vector<Real>(N));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) H[i][j] = t.nu[i + j];
    t.hankel_logdet = log_abs_det(std::move(H), t.hankel_sign);
    return t;
}

Real exact_logZ(const ExactContext& ctx) {
    const MomentTable t = moment_table(ctx);
    const int N = ctx.N, m = ctx.m;
    const int expected = (N * (N - 1) / 2) % 2 == 0 ? 1 : -1;
    if (t.hankel_sign != expected)
        fail(ErrorKind::SingularHankel, "exact_logZ: Hankel determinant sign is inconsistent; raise precision");
    const Real logN = log(Real(N));
    Real v = log_factorial(N) + t.hankel_logdet;
    for (int k = 0; k < N; ++k) v += log_factorial(m + k) - (m + k + 1) * logN;
    return v;
}

Real reference_logZ(int N, int m) {
    if (N < 1 || m < 0) fail(ErrorKind::Domain, "reference_logZ: need N >= 1 and m >= 0");
    const Real logN = log(Real(N));
    Real v = log_factorial(N);
    for (int k = 0; k < N; ++k) v += log_factorial(m + k) - (m + k + 1) * logN;
    return v;
}

std::vector<Real> exact_op(const ExactContext& ctx) {
    const int N = ctx.N;
    std::vector<Real> nu;
    nu.reserve(2 * N);
    for (int k = 0; k < 2 * N; ++k) nu.push_back(contour_moment(ctx, k));
    std::vector<std::vector<Real>> A(N, std::vector<Real>(N));
    std::vector<Real> b(N);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) A[i][j] = nu[i + j];
        b[i] = -nu[i + N];
    }
    std::vector<Real> coeffs = solve_linear(std::move(A), std::move(b));
    coeffs.push_back(Real(1));
    return coeffs;
}

Real exact_A11(const ExactContext& ctx) { return exact_op(ctx)[ctx.N - 1]; }

ComplexReal eval_poly(const std::vector<Real>& coeffs, const ComplexReal& z) {
    ComplexReal acc{Real(0), Real(0)};
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        const Real re = acc.re * z.re - acc.im * z.im + coeffs[i];
        const Real im = acc.re * z.im + acc.im * z.re;
        acc.re = re;
        acc.im = im;
    }
    return acc;
}

std::complex<double> to_complex(const ComplexReal& z) {
    return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

Real upper_incomplete_gamma_int(int s, const Real& y) {
    if (s < 1) fail(ErrorKind::Domain, "upper_incomplete_gamma_int: shape must be a positive integer");
    // (s-1)! e^{-y} sum_{i<s} y^i / i!
    Real term = 1, sum = 1;
    for (int i = 1; i < s; ++i) {
        term *= y / i;
        sum += term;
    }
    return to_real(factorial(s - 1)) * exp(-y) * sum;
}

Real lue_gap_probability(int n, int alpha_n, const Real& t, int N_w) {
    if (t < 0) fail(ErrorKind::Domain, "lue_gap_probability: t must be nonnegative");
    if (n < 1 || alpha_n < 0 || N_w < 1) fail(ErrorKind::Domain, "lue_gap_probability: bad sizes");
    if (t == 0) return Real(1);
    // The N_w^{-s} scaling factors out row- and column-wise and cancels in the ratio.
    const Real y = N_w * t;
    std::vector<std::vector<Real>> At(n, std::vector<Real>(n)), A0(n, std::vector<Real>(n));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const int s = j + k + alpha_n + 1;
            At[j][k] = upper_incomplete_gamma_int(s, y);
            A0[j][k] = to_real(factorial(s - 1));
        }
    int st = 1, s0 = 1;
    const Real lt = log_abs_det(std::move(At), st);
    const Real l0 = log_abs_det(std::move(A0), s0);
    if (st != s0) fail(ErrorKind::SingularHankel, "lue_gap_probability: determinant sign mismatch");
    return exp(lt - l0);
}

DualityCheck duality_residual(int N, int m, const Real& x) {
    if (N < 1 || m < 1) fail(ErrorKind::Domain, "duality_residual: need N, m >= 1");
    if (x < 0) fail(ErrorKind::Domain, "duality_residual: x must be nonnegative");
    DualityCheck d;
    const int bits = static_cast<int>(std::ceil(Real::default_precision() / 0.30102999566398120));
    d.lhs = lue_gap_probability(m, N, x * x, N);
    const Real z1 = exact_logZ(ExactContext::make(N, m, x, bits));
    const Real z0 = exact_logZ(ExactContext::make(N, m, Real(0), bits));
    d.rhs = exp(-Real(m) * N * x * x + z1 - z0);
    d.residual = abs(d.lhs - d.rhs);
    return d;
}

Real exact_charpoly_log_moment(int N, int m, const Real& z_abs) {
    const int bits = static_cast<int>(std::ceil(Real::default_precision() / 0.30102999566398120));
    return exact_logZ(ExactContext::make(N, m, abs(z_abs), bits)) - reference_logZ(N, 0);
}

}  // namespace ginibre::exactfiniten
