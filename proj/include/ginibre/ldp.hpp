#pragma once

namespace ginibre::ldp {

struct LUEParams {
    double alpha = 0.0;
    double lambda_minus = 0.0;
    double lambda_plus = 4.0;

    static LUEParams make(double alpha);
};

double mp_density(const LUEParams& params, double x);
double mp_mass(const LUEParams& params);

// The LUE wall t maps to the insertion problem at a = sqrt(t/alpha), c = 1/alpha.
double phi(double t, double alpha);
double psi(double t, double alpha);
double phi_large_t(double t, double alpha);

struct KCAction {
    double S = 0.0;
    double U = 0.0;
    double theta = 0.0;
};

double kc_theta(double t, double alpha);
double kc_U(double t, double alpha);
KCAction kc_action(double t, double alpha);
// S(t) - S(lambda_-)
double kc_rate(double t, double alpha);

double constrained_density(double t, double alpha, double x);
double constrained_mass(double t, double alpha);

// Zero in the pulled regime t <= lambda_-.
double ldp_log_probability(int n, double alpha, double t, bool with_constant = true);

// Least-squares fit of phi(lambda_- + d) by A d^3 + B d^4 + C d^5 on [lo, hi].
struct CubicFit {
    double fitted = 0.0;
    double predicted = 0.0;  // sqrt(alpha+1) / (12 lambda_-^2)
    double rel_error = 0.0;
};
CubicFit third_order_fit(double alpha, double lo = 1e-3, double hi = 1e-2, int points = 24);

struct ExactComparison {
    int n = 0;
    double exact_log_p = 0.0;
    double asymptotic = 0.0;
    double residual = 0.0;
};
// alpha * n must be an integer; the gap probability runs at the active extended precision.
ExactComparison compare_exact(int n, double alpha, double t);

}  // namespace ginibre::ldp
