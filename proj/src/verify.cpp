#include "ginibre/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "ginibre/error.hpp"
#include "ginibre/exactfiniten.hpp"
#include "ginibre/freeenergy.hpp"
#include "ginibre/geometry.hpp"
#include "ginibre/ldp.hpp"
#include "ginibre/opasymp.hpp"
#include "ginibre/painleve.hpp"

namespace ginibre::verify {

using nlohmann::json;
using geometry::Regime;
namespace ef = exactfiniten;

namespace {

struct Outcome {
    bool pass = false;
    std::string summary;
    json rows = json::array();
};

std::string sci(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

Outcome duality() {
    ef::PrecisionScope scope(256);
    Outcome o;
    double worst = 0.0;
    for (auto [N, m] : {std::pair{2, 2}, {3, 3}, {4, 4}, {2, 4}})
        for (const char* x : {"0", "0.3", "0.7", "1.1"}) {
            const auto d = ef::duality_residual(N, m, ef::parse_real(x));
            const double r = static_cast<double>(d.residual);
            worst = std::max(worst, r);
            o.rows.push_back({{"N", N}, {"m", m}, {"x", x}, {"lhs", static_cast<double>(d.lhs)}, {"residual", r}});
        }
    o.pass = worst < 1e-25;
    o.summary = "max residual " + sci(worst) + " (limit 1e-25)";
    return o;
}

Outcome post_expansion() {
    ef::PrecisionScope scope(256);
    Outcome o;
    o.pass = true;
    std::ostringstream sum;
    sum << "residual/omitted-term:";
    for (double a : {0.2, 0.0}) {
        for (int N : {4, 8, 16}) {
            const double exact = a == 0.0 ? static_cast<double>(ef::reference_logZ(N, N))
                                          : static_cast<double>(ef::exact_logZ(ef::ExactContext::make(N, N, "0.2")));
            const double approx = freeenergy::expansion(N, a, 1.0, Regime::Post, 2);
            const double bound = freeenergy::first_omitted_tail(N, 1.0, 2);
            const double ratio = std::fabs(exact - approx) / bound;
            const bool ok = ratio <= 3.0;
            o.pass = o.pass && ok;
            sum << " a=" << a << ",N=" << N << ":" << sci(ratio);
            o.rows.push_back({{"a", a}, {"c", 1.0}, {"N", N}, {"exact_logZ", exact}, {"expansion", approx},
                              {"residual", exact - approx}, {"first_omitted", bound}, {"ratio", ratio}, {"pass", ok}});
        }
    }
    sum << " (limit 3)";
    o.summary = sum.str();
    return o;
}

Outcome pre_expansion() {
    ef::PrecisionScope scope(256);
    Outcome o;
    double r[3];
    int i = 0;
    for (int N : {4, 8, 16}) {
        const double exact = static_cast<double>(ef::exact_logZ(ef::ExactContext::make(N, N, "1.2")));
        const double approx = freeenergy::expansion(N, 1.2, 1.0, Regime::Pre, 2);
        r[i++] = std::fabs(exact - approx);
        o.rows.push_back({{"a", 1.2}, {"c", 1.0}, {"N", N}, {"exact_logZ", exact}, {"expansion", approx},
                          {"residual", exact - approx}});
    }
    const double ratio = r[1] / r[2];
    o.pass = ratio >= 1.5 && ratio <= 3.0;
    o.summary = "r(4)/r(8)=" + sci(r[0] / r[1]) + " r(8)/r(16)=" + sci(ratio) + " (window [1.5,3])";
    return o;
}

Outcome kc_identity() {
    Outcome o;
    double worst = 0.0;
    for (double alpha : {0.5, 1.0, 16.0 / 9.0, 5.0}) {
        const double lm = ldp::LUEParams::make(alpha).lambda_minus;
        double alpha_worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            const double t = lm + 0.05 + (5.0 - 0.05) * k / 49.0;
            const double d = std::fabs(ldp::phi(t, alpha) - ldp::kc_rate(t, alpha));
            alpha_worst = std::max(alpha_worst, d);
        }
        worst = std::max(worst, alpha_worst);
        o.rows.push_back({{"alpha", alpha}, {"lambda_minus", lm}, {"points", 50}, {"max_abs_diff", alpha_worst}});
    }
    o.pass = worst < 1e-10;
    o.summary = "max |phi - (S(t)-S(lambda_-))| " + sci(worst) + " (limit 1e-10)";
    return o;
}

Outcome third_order() {
    Outcome o;
    o.pass = true;
    std::ostringstream sum;
    for (double alpha : {1.0, 16.0 / 9.0}) {
        const auto fit = ldp::third_order_fit(alpha);
        o.pass = o.pass && fit.rel_error < 0.01;
        sum << "alpha=" << alpha << " rel " << sci(fit.rel_error) << "; ";
        o.rows.push_back(
            {{"alpha", alpha}, {"fitted", fit.fitted}, {"predicted", fit.predicted}, {"rel_error", fit.rel_error}});
    }
    sum << "(limit 1e-2)";
    o.summary = sum.str();
    return o;
}

Outcome ldp_constant() {
    ef::PrecisionScope scope(256);
    Outcome o;
    const double alpha = 1.0;
    const double t = ldp::LUEParams::make(alpha).lambda_minus + 1.0;
    std::vector<double> res;
    for (int n : {4, 8, 16}) {
        const auto cmp = ldp::compare_exact(n, alpha, t);
        res.push_back(std::fabs(cmp.residual));
        o.rows.push_back({{"n", n}, {"alpha", alpha}, {"t", t}, {"exact_log_p", cmp.exact_log_p},
                          {"asymptotic", cmp.asymptotic}, {"residual", cmp.residual}});
    }
    o.pass = res[0] > res[1] && res[1] > res[2] && res[2] < 0.2;
    o.summary = "|residual| " + sci(res[0]) + ", " + sci(res[1]) + ", " + sci(res[2]) + " (decreasing, last < 0.2)";
    return o;
}

Outcome tracy_widom() {
    Outcome o;
    const auto sol = painleve::hastings_mcleod(painleve::kDefaultSMin, painleve::kDefaultSMax, painleve::kDefaultTol);
    const double x = 8.0;
    const double left_num = painleve::tw_log_cdf(sol, -x);
    const double left_pred = painleve::tw_left_tail_log(x);
    const double left_scale = 3.0 / (64.0 * x * x * x);
    const double left_diff = std::fabs(left_num - left_pred);
    const double right_num = -std::expm1(painleve::tw_log_cdf(sol, 6.0));
    const double right_pred = painleve::tw_right_tail(6.0);
    const double right_rel = std::fabs(right_num / right_pred - 1.0);
    const auto fine = painleve::hastings_mcleod(painleve::kDefaultSMin, painleve::kDefaultSMax, painleve::kDefaultTol / 2);
    const double self = std::fabs(painleve::tw_cdf(sol, -5.0) - painleve::tw_cdf(fine, -5.0));
    o.pass = left_diff < left_scale && right_rel < 0.2 && self < 1e-8;
    o.rows.push_back({{"check", "left_tail"}, {"t", -x}, {"numeric", left_num}, {"predicted", left_pred},
                      {"abs_diff", left_diff}, {"limit", left_scale}});
    o.rows.push_back({{"check", "right_tail"}, {"t", 6.0}, {"numeric", right_num}, {"predicted", right_pred},
                      {"rel_diff", right_rel}, {"limit", 0.2}});
    o.rows.push_back({{"check", "self_convergence"}, {"t", -5.0}, {"abs_diff", self}, {"limit", 1e-8}});
    o.summary = "left " + sci(left_diff) + "/" + sci(left_scale) + ", right rel " + sci(right_rel) + ", self " + sci(self);
    return o;
}

double op_rel_error(double a, double c, int N, std::complex<double> z, opasymp::HVariant variant) {
    const auto ctx = ef::ExactContext::make(N, static_cast<int>(std::lround(c * N)), std::to_string(a));
    const auto coeffs = ef::exact_op(ctx);
    const auto exact = ef::to_complex(ef::eval_poly(coeffs, {ef::Real(z.real()), ef::Real(z.imag())}));
    const opasymp::GEvaluator ge(geometry::ModelParams::make(a, c));
    return std::abs(opasymp::p_asymp(ge, z, N, variant) / exact - 1.0);
}

Outcome op_asymptotics() {
    ef::PrecisionScope scope(256);
    Outcome o;
    const double post_err = op_rel_error(0.2, 1.0, 8, 3.0, opasymp::HVariant::Corrected);
    o.rows.push_back({{"regime", "post"}, {"a", 0.2}, {"c", 1.0}, {"N", 8}, {"z", 3.0}, {"rel_error", post_err}});
    double e[3], no_phase[3];
    int i = 0;
    for (int N : {4, 8, 16}) {
        e[i] = op_rel_error(1.2, 1.0, N, 3.0, opasymp::HVariant::Corrected);
        no_phase[i] = op_rel_error(1.2, 1.0, N, 3.0, opasymp::HVariant::NoPhase);
        o.rows.push_back({{"regime", "pre"}, {"a", 1.2}, {"c", 1.0}, {"N", N}, {"z", 3.0}, {"rel_error", e[i]},
                          {"rel_error_no_phase", no_phase[i]}});
        ++i;
    }
    const double r1 = e[0] / e[1], r2 = e[1] / e[2];
    const bool pre_ok = r1 >= 3.0 && r1 <= 5.0 && r2 >= 3.0 && r2 <= 5.0;
    o.pass = post_err < 1e-6 && pre_ok;
    o.summary = "post rel " + sci(post_err) + " (limit 1e-6); pre ratios " + sci(r1) + ", " + sci(r2) +
                " (window [3,5]); without phase " + sci(no_phase[0] / no_phase[1]) + ", " + sci(no_phase[1] / no_phase[2]);
    return o;
}

Outcome residue() {
    Outcome o;
    double worst = 0.0;
    for (auto [a, c] : {std::pair{1.0, 9.0 / 16.0}, {1.2, 1.0}, {2.0, 1.0}}) {
        const auto geom = geometry::pre_geometry(a, c);
        const auto rc = opasymp::rh_coefficients(geom, 8);
        const auto num = opasymp::residue_R11_numeric(rc);
        const double closed = opasymp::residue_R11_closed(a, c, 8);
        const double rel = std::abs(num - closed) / std::fabs(closed);
        worst = std::max(worst, rel);
        o.rows.push_back({{"a", a}, {"c", c}, {"N", 8}, {"numeric_re", num.real()}, {"numeric_im", num.imag()},
                          {"closed", closed}, {"rel_error", rel}});
    }
    o.pass = worst < 1e-10;
    o.summary = "max rel " + sci(worst) + " (limit 1e-10)";
    return o;
}

Outcome detzeta_constant() {
    Outcome o;
    double worst = 0.0;
    for (double c : {0.25, 0.5625, 1.0, 2.0, 4.0}) {
        const double acri = geometry::a_critical(c);
        for (double f : {0.0, 0.25, 0.5, 0.75, 1.1, 1.5, 2.0, 3.0}) {
            const double a = f * acri;
            const Regime r = f < 1.0 ? Regime::Post : Regime::Pre;
            const double lhs = freeenergy::fconst(a, c, r);
            const double rhs = -0.5 * freeenergy::detzeta_log(a, c, r);
            const double d = std::fabs(lhs - rhs);
            worst = std::max(worst, d);
            o.rows.push_back({{"a", a}, {"c", c}, {"regime", geometry::to_string(r)}, {"fconst", lhs},
                              {"minus_half_detzeta", rhs}, {"abs_diff", d}});
        }
    }
    o.pass = worst < 1e-12;
    o.summary = "max |F + detzeta/2| " + sci(worst) + " over " + std::to_string(o.rows.size()) + " points (limit 1e-12)";
    return o;
}

Outcome derivatives() {
    Outcome o;
    double worst = 0.0;
    const double h = 1e-6;
    auto central = [h](const std::function<double(double)>& f, double a) { return (f(a + h) - f(a - h)) / (2.0 * h); };
    for (auto [a, c] : {std::pair{0.8, 0.25}, {1.0, 0.5625}, {1.2, 1.0}, {1.5, 1.0}, {2.0, 1.0}, {3.0, 1.0},
                        {0.6, 4.0}, {1.0, 4.0}, {1.5, 0.5}, {2.5, 2.0}}) {
        const double dI = central([c](double x) { return freeenergy::energy_pre(x, c); }, a);
        const double dF = central([c](double x) { return freeenergy::fconst(x, c, Regime::Pre); }, a);
        const double dG = central([c](double x) { return freeenergy::re_g_at_a(x, c); }, a);
        const double eI = std::fabs(dI - freeenergy::d_energy_pre_da(a, c));
        const double eF = std::fabs(dF - freeenergy::d_fconst_pre_da(a, c));
        const double eG = std::fabs(dG - freeenergy::d_re_g_at_a_da(a, c));
        worst = std::max({worst, eI, eF, eG});
        o.rows.push_back({{"a", a}, {"c", c}, {"energy_err", eI}, {"fconst_err", eF}, {"re_g_err", eG}});
    }
    o.pass = worst < 1e-7;
    o.summary = "max |fd - closed| " + sci(worst) + " (limit 1e-7)";
    return o;
}

Outcome energy_boundary() {
    Outcome o;
    double worst_gap = 0.0;
    bool ordered = true;
    for (double c : {0.25, 0.5625, 1.0, 4.0}) {
        const double acri = geometry::a_critical(c);
        const double gap = std::fabs(freeenergy::energy_pre(acri + 1e-8, c) - freeenergy::energy_post(acri + 1e-8, c));
        worst_gap = std::max(worst_gap, gap);
        double min_diff = INFINITY;
        for (double d : {1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 5.0}) {
            const double diff = freeenergy::energy_pre(acri + d, c) - freeenergy::energy_post(acri + d, c);
            min_diff = std::min(min_diff, diff);
            ordered = ordered && diff > 0.0;
        }
        o.rows.push_back({{"c", c}, {"a_cri", acri}, {"continuity_gap", gap}, {"min_ordered_diff", min_diff}});
    }
    o.pass = worst_gap < 1e-9 && ordered;
    o.summary = "max continuity gap " + sci(worst_gap) + " (limit 1e-9); ordering " + (ordered ? "holds" : "violated");
    return o;
}

struct Entry {
    Criterion meta;
    Outcome (*run)();
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table = {
        {{1, "duality", "exactfiniten", "duality identity", 30}, duality},
        {{2, "post-expansion", "freeenergy", "free-energy expansion, post", 120}, post_expansion},
        {{3, "pre-expansion", "freeenergy", "free-energy expansion, pre", 180}, pre_expansion},
        {{4, "kc", "ldp", "rate-function identity", 10}, kc_identity},
        {{5, "third-order", "ldp", "third-order transition", 5}, third_order},
        {{6, "ldp-constant", "ldp", "LDP constant terms", 120}, ldp_constant},
        {{7, "tw", "painleve", "Tracy-Widom tails", 30}, tracy_widom},
        {{8, "op", "opasymp", "orthogonal-polynomial asymptotics", 120}, op_asymptotics},
        {{9, "residue", "opasymp", "residue identity", 5}, residue},
        {{10, "detzeta", "freeenergy", "det-zeta constant", 1}, detzeta_constant},
        {{11, "derivatives", "freeenergy", "derivative closed forms", 5}, derivatives},
        {{12, "energy", "freeenergy", "energy continuity and ordering", 5}, energy_boundary},
    };
    return table;
}

}  // namespace

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = [] {
        std::vector<Criterion> v;
        for (const auto& e : entries()) v.push_back(e.meta);
        return v;
    }();
    return list;
}

CriterionResult run_criterion(int id) {
    const auto& all = entries();
    auto it = std::find_if(all.begin(), all.end(), [id](const Entry& e) { return e.meta.id == id; });
    if (it == all.end()) fail(ErrorKind::Domain, "run_criterion: unknown criterion " + std::to_string(id));
    CriterionResult r;
    r.id = id;
    r.key = it->meta.key;
    r.suite = it->meta.suite;
    r.title = it->meta.title;
    r.budget_seconds = it->meta.budget_seconds;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        Outcome o = it->run();
        r.pass = o.pass;
        r.summary = std::move(o.summary);
        r.table = {{"schema_version", kSchemaVersion}, {"criterion", id}, {"rows", std::move(o.rows)}};
    } catch (const Error& e) {
        r.pass = false;
        r.summary = std::string("error ") + to_string(e.kind()) + ": " + e.what();
        r.table = {{"schema_version", kSchemaVersion}, {"criterion", id}, {"rows", json::array()}};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > r.budget_seconds) {
        r.pass = false;
        r.summary += "; runtime " + sci(r.seconds) + " s over budget";
    }
    return r;
}

std::vector<CriterionResult> run_all(const std::set<std::string>& skip) {
    std::vector<CriterionResult> out;
    for (const auto& c : criteria()) {
        if (skip.count(c.key) || skip.count(c.suite) || skip.count(std::to_string(c.id))) continue;
        out.push_back(run_criterion(c.id));
    }
    return out;
}

json to_json(const CriterionResult& r) {
    return {{"schema_version", kSchemaVersion}, {"id", r.id}, {"key", r.key}, {"suite", r.suite},
            {"title", r.title}, {"pass", r.pass}, {"budget_seconds", r.budget_seconds},
            {"summary", r.summary}, {"table", r.table}};
}

std::string format_line(const CriterionResult& r) {
    std::ostringstream os;
    os << "criterion " << r.id << " [" << r.key << "] " << (r.pass ? "PASS" : "FAIL") << "  " << r.summary << "  ("
       << std::fixed;
    os.precision(2);
    os << r.seconds << " s)";
    return os.str();
}

}  // namespace ginibre::verify
