#pragma once

#include <array>
#include <vector>

#include <boost/multiprecision/float128.hpp>

namespace ginibre::painleve {

double airy_ai(double x);
double airy_ai_prime(double x);

inline constexpr double kDefaultSMin = -12.0;
inline constexpr double kDefaultSMax = 8.0;
inline constexpr double kDefaultTol = 2e-12;

// Airy data is imposed here, where the neglected O(Ai^3) part is below quad precision.
inline constexpr double kAiryMatchPoint = 16.0;

using Wide = boost::multiprecision::float128;
// State along the solution: hm_q, hm_q', U = int_s^inf hm_q^2, W = int_s^inf (x-s) hm_q^2.
using HMState = std::array<Wide, 4>;

struct TWSolution {
    std::vector<double> s_grid;  // descending
    std::vector<double> hm_q;
    std::vector<double> hm_dq;
    std::vector<double> F_vals;
    std::vector<HMState> states;
    double s_min = kDefaultSMin;
    double s_max = kDefaultSMax;
    double ode_tol = kDefaultTol;

    HMState state_at(double s) const;
    double hm_q_at(double s) const { return static_cast<double>(state_at(s)[0]); }
    // q'' - s q - 2 q^3 from extrapolated central differences of the integrated q'.
    double ode_residual(double s, double h = 1e-3) const;
};

// Airy data at s >= s_max, where hm_q = Ai up to O(Ai^3).
HMState airy_tail_state(double s);

TWSolution hastings_mcleod(double s_min = kDefaultSMin, double s_max = kDefaultSMax, double tol = kDefaultTol);

double tw_log_cdf(const TWSolution& sol, double t);
double tw_cdf(const TWSolution& sol, double t);

// log of the leading left-tail form at t = -x, including the 1 + 3/(64 x^3) factor.
double tw_left_tail_log(double x);
// Leading right-tail form for 1 - F_TW(x).
double tw_right_tail(double x);

double critical_a(double s, double c, int N);
// log Z_N at a = critical_a(s, c, N) from the critical-window expansion.
double critical_expansion(const TWSolution& sol, int N, double c, double s);

}  // namespace ginibre::painleve
