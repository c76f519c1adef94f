#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ginibre/geometry.hpp"

namespace ginibre::freeenergy {

using geometry::Regime;
using Rational = boost::multiprecision::cpp_rational;

double energy_post(double a, double c);
double energy_pre(double a, double c);
double energy(double a, double c, Regime regime);

struct EnergyBreakdown {
    double robin = 0.0;
    double potential_integral = 0.0;
    double energy = 0.0;
    std::optional<double> re_g_a;
};

double robin_constant(double a, double c, Regime regime);
double potential_integral(double a, double c, Regime regime);
EnergyBreakdown energy_breakdown(double a, double c, Regime regime);

double re_g_at_a(double a, double c);
double d_re_g_at_a_da(double a, double c);  // a q^2

double d_energy_pre_da(double a, double c);
double d_fconst_pre_da(double a, double c);
double d_energy_gap_da(double a, double c);  // d/da (I^pre - I^post)
double dq_da(double a, double c);

double fconst(double a, double c, Regime regime);
double detzeta_log(double a, double c, Regime regime);

// Exact B_n for 0 <= n <= 64 (B_1 = +1/2 convention of the Akiyama-Tanigawa recurrence).
const Rational& bernoulli(int n);
double bernoulli_value(int n);

struct TailTerm {
    int power = 0;  // exponent of N
    double coeff = 0.0;
};

struct ExpansionTerms {
    double n2 = 0.0;
    double nlogn = 0.5;
    double n_coeff = 0.0;
    double logn = 0.0;
    double constant = 0.0;
    std::vector<TailTerm> tail;
    int chi = 0;
    std::string error_class;

    double evaluate(int N) const;
};

ExpansionTerms expansion_terms(double a, double c, Regime regime, int M);
double expansion(int N, double a, double c, Regime regime, int M);

// Magnitude of the post-tail terms of order M+1 dropped at truncation order M.
double first_omitted_tail(int N, double c, int M);

// log G(x+1) by the exact recursion at nonnegative integers.
double barnes_logG_integer(int n);
// Asymptotic series for log G(z+1), truncated after `order` Bernoulli terms.
double barnes_logG_asymptotic(double z, int order);
double barnes_logG(double x);  // log G(x); exact at positive integers, asymptotic otherwise

double reference_logZ(int N, int m);

struct CharpolyMoment {
    double log_moment = 0.0;
    double H = 0.0;
    double logG = 0.0;
    int chi = 0;
};

CharpolyMoment charpoly_moment_asymp(double z_abs, double c, int N, int M = 2);

// I = w(r1) - log r1 - (1/4) int_{r0}^{r1} r w'(r)^2 dr
double radial_energy(const std::function<double(double)>& w, const std::function<double(double)>& dw, double r0,
                     double r1);
// Radii where r w'(r) = 0 and r w'(r) = 2, found by bisection on [lo, hi].
std::pair<double, double> radial_support(const std::function<double(double)>& dw, double lo, double hi);

}  // namespace ginibre::freeenergy
