#include "ginibre/freeenergy.hpp"

#include <cmath>
#include <complex>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ginibre/constants.hpp"
#include "ginibre/error.hpp"

namespace ginibre::freeenergy {

namespace {

void require_pre(double a, double c, const char* who) {
    if (geometry::classify(a, c) != Regime::Pre) fail(ErrorKind::Domain, std::string(who) + ": needs pre-critical (a,c)");
}

void require_regime(Regime r, const char* who) {
    if (r == Regime::AtCriticality)
        fail(ErrorKind::Domain, std::string(who) + ": regime must be post or pre, not critical");
}

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

}  // namespace

double energy_post(double a, double c) {
    return 0.75 + 1.5 * c + 0.5 * c * xlogx(c) - 0.5 * (c + 1.0) * (c + 1.0) * std::log1p(c) - c * a * a;
}

double energy_pre(double a, double c) {
    require_pre(a, c, "energy_pre");
    const double q = geometry::solve_q(a, c);
    const double a2 = a * a, q2 = q * q, q4 = q2 * q2;
    return 0.375 + a2 / 8.0 + 3.0 / (8.0 * a2 * q4) - 5.0 / (8.0 * q2) + (0.75 + a2 / 8.0) * a2 * q2 -
           3.0 * a2 * a2 * q4 / 8.0 + std::log(2.0 * a * q) + 2.0 * c * std::log(2.0 * a * q2) +
           c * c * std::log(1.0 + a2 * q2 - 2.0 * a2 * q4) - (c + 1.0) * (c + 1.0) * std::log1p(a2 * q2);
}

double energy(double a, double c, Regime regime) {
    require_regime(regime, "energy");
    return regime == Regime::Post ? energy_post(a, c) : energy_pre(a, c);
}

double re_g_at_a(double a, double c) {
    require_pre(a, c, "re_g_at_a");
    const double q = geometry::solve_q(a, c);
    const double a2 = a * a, q2 = q * q;
    return a2 * q2 / 2.0 - 0.5 + std::log((1.0 + a2 * q2) / (2.0 * a * q2)) +
           c * std::log((1.0 + a2 * q2) / (1.0 + a2 * q2 - 2.0 * a2 * q2 * q2));
}

double d_re_g_at_a_da(double a, double c) {
    const double q = geometry::solve_q(a, c);
    return a * q * q;
}

double robin_constant(double a, double c, Regime regime) {
    require_regime(regime, "robin_constant");
    if (regime == Regime::Post) return (c + 1.0) / 2.0 - (c + 1.0) / 2.0 * std::log1p(c);
    require_pre(a, c, "robin_constant");
    const double q = geometry::solve_q(a, c);
    const double a2 = a * a, q2 = q * q;
    return c * std::log(q) - (c + 1.0) * std::log((1.0 + a2 * q2) / (2.0 * a * q)) + 0.75 + a2 / 4.0 + c / 2.0 -
           (a2 / 4.0 + c + 0.75) * a2 * q2 + a2 * a2 * q2 * q2 / 2.0;
}

double potential_integral(double a, double c, Regime regime) {
    require_regime(regime, "potential_integral");
    if (regime == Regime::Post)
        return c + 0.25 + 0.5 * c * xlogx(c) - c * (1.0 + c) / 2.0 * std::log1p(c) - c * a * a;
    require_pre(a, c, "potential_integral");
    const double q = geometry::solve_q(a, c);
    const double a2 = a * a, q2 = q * q;
    return 0.375 + a2 / 4.0 + c / 2.0 - (a2 / 4.0 + c + 0.5) * a2 * q2 + 0.375 * a2 * a2 * q2 * q2 -
           c * re_g_at_a(a, c);
}

EnergyBreakdown energy_breakdown(double a, double c, Regime regime) {
    EnergyBreakdown e;
    e.robin = robin_constant(a, c, regime);
    e.potential_integral = potential_integral(a, c, regime);
    e.energy = energy(a, c, regime);
    if (regime == Regime::Pre) e.re_g_a = re_g_at_a(a, c);
    return e;
}

double d_energy_pre_da(double a, double c) {
    require_pre(a, c, "d_energy_pre_da");
    const double q = geometry::solve_q(a, c);
    const double a2 = a * a, q2 = q * q;
    return -(1.0 - a2 * q2) * (2.0 - q2 - a2 * q2 * q2) / (2.0 * a * q2);
}

double d_fconst_pre_da(double a, double c) {
    require_pre(a, c, "d_fconst_pre_da");
    const double q = geometry::solve_q(a, c);
    const double a4 = a * a * a * a, q2 = q * q, q4 = q2 * q2, q6 = q4 * q2;
    const double num = (1.0 - a4 * q4) * (1.0 - a4 * q4);
    const double den = 8.0 * a * (1.0 - q2) * (1.0 - a4 * q6) * (1.0 - a4 * q6);
    return -q2 * num / den;
}

double d_energy_gap_da(double a, double c) {
    require_pre(a, c, "d_energy_gap_da");
    const double q = geometry::solve_q(a, c);
    const double q2 = q * q, q4 = q2 * q2, a4 = a * a * a * a;
    return (1.0 - q2) * (1.0 - q2) * (1.0 - a4 * q4) / (2.0 * a * q4);
}

double dq_da(double a, double c) {
    require_pre(a, c, "dq_da");
    const double q = geometry::solve_q(a, c);
    const double a4 = a * a * a * a, q4 = q * q * q * q, q6 = q4 * q * q;
    return q / (2.0 * a) * (1.0 + a4 * q4 - 2.0 * a4 * q6) / (a4 * q6 - 1.0);
}

double fconst(double a, double c, Regime regime) {
    require_regime(regime, "fconst");
    if (regime == Regime::Post) return std::log(c / (1.0 + c)) / 12.0;
    require_pre(a, c, "fconst");
    const double q = geometry::solve_q(a, c);
    const double a2 = a * a, q2 = q * q, q4 = q2 * q2;
    const double X = 1.0 + a2 * q2 - 2.0 * a2 * q4;
    const double Y = 1.0 + a2 * q2;
    return (4.0 * std::log(X) - 4.0 * std::log(Y) - 3.0 * std::log1p(-q2) - std::log1p(-a2 * a2 * q4 * q2)) / 24.0;
}

double detzeta_log(double a, double c, Regime regime) {
    require_regime(regime, "detzeta_log");
    if (regime == Regime::Post) return -std::log(c / (1.0 + c)) / 6.0;
    const geometry::PreGeometry g = geometry::pre_geometry(a, c);
    const std::complex<double> fp = g.df(1.0 / g.z_plus);
    const std::complex<double> fm = g.df(1.0 / g.z_minus);
    const std::complex<double> fq = g.df(1.0 / g.q);
    const double R4 = g.R * g.R * g.R * g.R;
    return std::log(std::abs(R4 * fp * fm / (fq * fq))) / 12.0;
}

const Rational& bernoulli(int n) {
    static const std::vector<Rational> table = [] {
        constexpr int kMax = 64;
        std::vector<Rational> B(kMax + 1);
        std::vector<Rational> A(kMax + 1);
        for (int m = 0; m <= kMax; ++m) {
            A[m] = Rational(1, m + 1);
            for (int j = m; j >= 1; --j) A[j - 1] = j * (A[j - 1] - A[j]);
            B[m] = A[0];
        }
        return B;
    }();
    if (n < 0 || n >= static_cast<int>(table.size())) fail(ErrorKind::Domain, "bernoulli: index outside [0,64]");
    return table[n];
}

double bernoulli_value(int n) { return static_cast<double>(bernoulli(n)); }

double ExpansionTerms::evaluate(int N) const {
    const double n = N, ln = std::log(n);
    double v = n2 * n * n + nlogn * n * ln + n_coeff * n + logn * ln + constant;
    for (const TailTerm& t : tail) v += t.coeff * std::pow(n, t.power);
    return v;
}

ExpansionTerms expansion_terms(double a, double c, Regime regime, int M) {
    require_regime(regime, "expansion");
    if (M < 0) fail(ErrorKind::Domain, "expansion: truncation order must be nonnegative");
    ExpansionTerms t;
    t.chi = geometry::euler_characteristic(regime);
    t.n2 = -energy(a, c, regime);
    t.nlogn = 0.5;
    t.n_coeff = kLog2Pi / 2.0 - 1.0;
    t.logn = (6.0 - t.chi) / 12.0;
    t.constant = kLog2Pi / 2.0 + t.chi * kZetaPrimeMinusOne + fconst(a, c, regime);
    if (regime == Regime::Post) {
        t.error_class = "O(N^-" + std::to_string(2 * M + 1) + ")";
        for (int k = 1; k <= M; ++k) {
            t.tail.push_back({1 - 2 * k, bernoulli_value(2 * k) / (2.0 * k * (2.0 * k - 1.0))});
            const double shift = std::pow(c + 1.0, -2.0 * k) - std::pow(c, -2.0 * k);
            t.tail.push_back({-2 * k, bernoulli_value(2 * k + 2) / (4.0 * k * (k + 1.0)) * shift});
        }
    } else {
        t.error_class = "O(N^-1)";
    }
    return t;
}

double expansion(int N, double a, double c, Regime regime, int M) {
    if (N < 1) fail(ErrorKind::Domain, "expansion: N must be positive");
    return expansion_terms(a, c, regime, M).evaluate(N);
}

double first_omitted_tail(int N, double c, int M) {
    const int k = M + 1;
    const double n = N;
    const double stirling = bernoulli_value(2 * k) / (2.0 * k * (2.0 * k - 1.0)) * std::pow(n, 1.0 - 2.0 * k);
    const double shift = std::pow(c + 1.0, -2.0 * k) - std::pow(c, -2.0 * k);
    const double barnes = bernoulli_value(2 * k + 2) / (4.0 * k * (k + 1.0)) * shift * std::pow(n, -2.0 * k);
    return std::abs(stirling) + std::abs(barnes);
}

double barnes_logG_integer(int n) {
    if (n < 0) fail(ErrorKind::Domain, "barnes_logG_integer: negative argument");
    long double s = 0.0L;
    for (int k = 1; k < n; ++k) s += std::lgamma(static_cast<long double>(k) + 1.0L);
    return static_cast<double>(s);
}

double barnes_logG_asymptotic(double z, int order) {
    const double lz = std::log(z);
    double v = z * z * lz / 2.0 - 0.75 * z * z + kLog2Pi * z / 2.0 - lz / 12.0 + kZetaPrimeMinusOne;
    for (int k = 1; k <= order; ++k) v += bernoulli_value(2 * k + 2) / (4.0 * k * (k + 1.0)) * std::pow(z, -2.0 * k);
    return v;
}

double barnes_logG(double x) {
    if (!(x > 0.0)) fail(ErrorKind::Domain, "barnes_logG: argument must be positive");
    if (x == std::floor(x) && x < 1e6) return barnes_logG_integer(static_cast<int>(x) - 1);
    // log G(x) = log G(x+n) - sum_{k<n} log Gamma(x+k)
    double shift = 0.0;
    while (x < 20.0) {
        shift += std::lgamma(x);
        x += 1.0;
    }
    return barnes_logG_asymptotic(x - 1.0, 8) - shift;
}

double reference_logZ(int N, int m) {
    if (N < 1 || m < 0) fail(ErrorKind::Domain, "reference_logZ: need N >= 1 and m >= 0");
    const long double n = N, ln = std::log(n);
    long double v = std::lgamma(n + 1.0L) + barnes_logG_integer(N + m) - barnes_logG_integer(m);
    v -= (static_cast<long double>(m) * n + n * n / 2.0L + n / 2.0L) * ln;
    return static_cast<double>(v);
}

CharpolyMoment charpoly_moment_asymp(double z_abs, double c, int N, int M) {
    if (!(z_abs >= 0.0) || !(c > 0.0) || N < 1) fail(ErrorKind::Domain, "charpoly_moment_asymp: bad arguments");
    const Regime regime = geometry::classify(z_abs, c);
    if (regime == Regime::AtCriticality) fail(ErrorKind::Domain, "charpoly_moment_asymp: |z| is critical");
    CharpolyMoment out;
    out.chi = geometry::euler_characteristic(regime);
    const double z = z_abs, z2 = z * z;
    double tail = 0.0;
    if (regime == Regime::Post) {
        out.H = c * z2 - 1.5 * c + 0.5 * (c + 1.0) * (c + 1.0) * std::log1p(c) - 0.5 * c * xlogx(c);
        out.logG = std::log(c / (1.0 + c)) / 12.0;
        for (int k = 1; k <= M; ++k) {
            const double shift = std::pow(c + 1.0, -2.0 * k) - std::pow(c, -2.0 * k) - 1.0;
            tail += bernoulli_value(2 * k + 2) / (4.0 * k * (k + 1.0)) * shift * std::pow(double(N), -2.0 * k);
        }
    } else {
        const geometry::PreGeometry g = geometry::pre_geometry(z, c);
        const double F = g.F(z).real();
        const double F2 = F * F, F4 = F2 * F2;
        const double X = F4 + z2 * F2 - 2.0 * z2;
        out.H = 0.375 - z2 / 8.0 - 3.0 * F4 / (8.0 * z2) + 5.0 * F2 / 8.0 - (0.75 + z2 / 8.0) * z2 / F2 +
                0.375 * z2 * z2 / F4 + (2.0 * c * c - 1.0) * std::log(F) + (c + 1.0) * (c + 1.0) * std::log(F2 + z2) -
                (2.0 * c + 1.0) * std::log(2.0 * z) - c * c * std::log(X);
        out.logG = (4.0 * std::log(F) + 4.0 * std::log(X) - 4.0 * std::log(F2 + z2) - 3.0 * std::log(F2 - 1.0) -
                    std::log(F4 * F2 - z2 * z2)) /
                   24.0;
    }
    const double n = N;
    out.log_moment = (1.0 - out.chi) / 12.0 * std::log(n) + (out.chi - 1.0) * kZetaPrimeMinusOne + out.logG +
                     out.H * n * n + tail;
    return out;
}

double radial_energy(const std::function<double(double)>& w, const std::function<double(double)>& dw, double r0,
                     double r1) {
    if (!(r1 > r0) || !(r0 >= 0.0)) fail(ErrorKind::Domain, "radial_energy: need 0 <= r0 < r1");
    double err = 0.0;
    const double I = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double r) {
            const double d = dw(r);
            return r * d * d;
        },
        r0, r1, 15, 1e-14, &err);
    if (!(err < 1e-9 * (1.0 + std::abs(I)))) fail(ErrorKind::Quadrature, "radial_energy: quadrature did not converge");
    return w(r1) - std::log(r1) - I / 4.0;
}

std::pair<double, double> radial_support(const std::function<double(double)>& dw, double lo, double hi) {
    auto solve = [&](double target) {
        double x0 = lo, x1 = hi;
        auto g = [&](double r) { return r * dw(r) - target; };
        if (g(x0) * g(x1) > 0.0) fail(ErrorKind::Domain, "radial_support: bracket does not straddle the root");
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (x0 + x1);
            if (g(x0) * g(mid) <= 0.0)
                x1 = mid;
            else
                x0 = mid;
        }
        return 0.5 * (x0 + x1);
    };
    return {solve(0.0), solve(2.0)};
}

}  // namespace ginibre::freeenergy
