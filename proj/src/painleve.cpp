#include "ginibre/painleve.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/airy.hpp>
#include <boost/numeric/odeint.hpp>

#include "ginibre/constants.hpp"
#include "ginibre/error.hpp"
#include "ginibre/freeenergy.hpp"
#include "ginibre/geometry.hpp"

namespace ginibre::painleve {

namespace odeint = boost::numeric::odeint;

}  // namespace ginibre::painleve

namespace boost::numeric::odeint::detail {
template <>
struct extract_value_type<ginibre::painleve::Wide, void> {
    using type = ginibre::painleve::Wide;
};
}  // namespace boost::numeric::odeint::detail

namespace ginibre::painleve {

double airy_ai(double x) { return boost::math::airy_ai(x); }
double airy_ai_prime(double x) { return boost::math::airy_ai_prime(x); }

namespace {

void rhs(const HMState& y, HMState& dy, Wide s) {
    dy[0] = y[1];
    dy[1] = s * y[0] + 2 * y[0] * y[0] * y[0];
    dy[2] = -y[0] * y[0];
    dy[3] = -y[2];
}

double blowup_bound(double s) { return 10.0 * std::sqrt(std::max(-s / 2.0, 1.0)); }

// The backward problem amplifies errors by about exp((2 sqrt 2 / 3)|s|^{3/2}), so the
// user tolerance is tightened by 1e-12 and the state carried in quad precision.
auto make_stepper(double tol) {
    const Wide rel = Wide(tol) * Wide(1e-12);
    return odeint::make_controlled(rel * Wide(1e-12), rel, odeint::runge_kutta_fehlberg78<HMState, Wide>());
}

HMState advance(HMState y, double s0, double s1, double tol) {
    if (s0 == s1) return y;
    auto stepper = make_stepper(tol);
    odeint::integrate_adaptive(stepper, rhs, y, Wide(s0), Wide(s1), Wide(s1 < s0 ? -0.01 : 0.01));
    return y;
}

}  // namespace

HMState airy_tail_state(double s) {
    const Wide x = s;
    const Wide ai = boost::math::airy_ai(x);
    const Wide dai = boost::math::airy_ai_prime(x);
    return {ai, dai, dai * dai - x * ai * ai, (2 * x * x * ai * ai - 2 * x * dai * dai - ai * dai) / 3};
}

TWSolution hastings_mcleod(double s_min, double s_max, double tol) {
    if (s_max < 6.0) fail(ErrorKind::Domain, "hastings_mcleod: s_max must be at least 6");
    if (s_min < -12.0 || s_min >= s_max) fail(ErrorKind::Domain, "hastings_mcleod: need -12 <= s_min < s_max");
    if (!(tol >= 1e-12)) fail(ErrorKind::Domain, "hastings_mcleod: tol must be at least 1e-12");

    TWSolution sol;
    sol.s_min = s_min;
    sol.s_max = s_max;
    sol.ode_tol = tol;
    auto observe = [&sol](const HMState& y, Wide s) {
        const double sd = static_cast<double>(s);
        const double q = static_cast<double>(y[0]);
        if (!(std::fabs(q) <= blowup_bound(sd)))
            fail(ErrorKind::BlowUp, "hastings_mcleod: solution left the Hastings-McLeod branch at s=" + std::to_string(sd));
        sol.s_grid.push_back(sd);
        sol.hm_q.push_back(q);
        sol.hm_dq.push_back(static_cast<double>(y[1]));
        sol.F_vals.push_back(std::exp(-static_cast<double>(y[3])));
        sol.states.push_back(y);
    };
    const double start = std::max(s_max, kAiryMatchPoint);
    HMState y = advance(airy_tail_state(start), start, s_max, tol);
    auto stepper = make_stepper(tol);
    odeint::integrate_adaptive(stepper, rhs, y, Wide(s_max), Wide(s_min), Wide(-0.01), observe);
    return sol;
}

HMState TWSolution::state_at(double s) const {
    if (s >= s_max) return airy_tail_state(s);
    if (s < s_min) fail(ErrorKind::GridTooShort, "TW solution does not reach s=" + std::to_string(s));
    // last node at or above s (grid is descending)
    auto it = std::partition_point(s_grid.begin(), s_grid.end(), [s](double v) { return v >= s; });
    const std::size_t k = static_cast<std::size_t>(std::distance(s_grid.begin(), it)) - 1;
    return advance(states[k], s_grid[k], s, ode_tol);
}

double TWSolution::ode_residual(double s, double h) const {
    const HMState mid = state_at(s);
    auto central = [&](double step) {
        const Wide plus = advance(mid, s, s + step, ode_tol)[1];
        const Wide minus = advance(mid, s, s - step, ode_tol)[1];
        return (plus - minus) / (2 * Wide(step));
    };
    // Richardson: cancels the h^2 term of the central difference
    const Wide d2q = (4 * central(h / 2) - central(h)) / 3;
    const Wide q = mid[0];
    return static_cast<double>(d2q - (s * q + 2 * q * q * q));
}

double tw_log_cdf(const TWSolution& sol, double t) { return -static_cast<double>(sol.state_at(t)[3]); }

double tw_cdf(const TWSolution& sol, double t) { return std::exp(tw_log_cdf(sol, t)); }

double tw_left_tail_log(double x) {
    if (!(x > 0.0)) fail(ErrorKind::Domain, "tw_left_tail_log: x must be positive");
    return std::log(2.0) / 24.0 + kZetaPrimeMinusOne - std::log(x) / 8.0 - x * x * x / 12.0 +
           std::log1p(3.0 / (64.0 * x * x * x));
}

double tw_right_tail(double x) {
    if (!(x > 0.0)) fail(ErrorKind::Domain, "tw_right_tail: x must be positive");
    const double x32 = x * std::sqrt(x);
    return std::exp(-4.0 * x32 / 3.0) / (16.0 * kPi * x32);
}

double critical_a(double s, double c, int N) {
    if (!(c > 0.0) || N < 1) fail(ErrorKind::Domain, "critical_a: need c > 0 and N >= 1");
    const double acri = geometry::a_critical(c);
    const double scale = std::cbrt(acri) / (2.0 * std::pow(c, 1.0 / 6.0) * std::pow(c + 1.0, 1.0 / 6.0));
    return acri - scale * s * std::pow(static_cast<double>(N), -2.0 / 3.0);
}

double critical_expansion(const TWSolution& sol, int N, double c, double s) {
    const double a = critical_a(s, c, N);
    const double n = N;
    return -freeenergy::energy_post(a, c) * n * n + 0.5 * n * std::log(n) + (kLog2Pi / 2.0 - 1.0) * n +
           0.5 * std::log(n) + kLog2Pi / 2.0 + std::log(c / (1.0 + c)) / 12.0 +
           tw_log_cdf(sol, std::pow(c, -2.0 / 3.0) * s);
}

}  // namespace ginibre::painleve
