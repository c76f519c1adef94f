#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ginibre/error.hpp"
#include "ginibre/exactfiniten.hpp"
#include "ginibre/freeenergy.hpp"
#include "ginibre/geometry.hpp"
#include "ginibre/ldp.hpp"
#include "ginibre/opasymp.hpp"
#include "ginibre/painleve.hpp"
#include "ginibre/verify.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace ginibre;
namespace ef = ginibre::exactfiniten;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitCheck = 3;

struct RunConfig {
    std::string a = "0";
    std::string c = "1";
    std::string alpha = "1";
    std::vector<int> n;
    std::optional<int> m;
    std::string x = "0";
    std::vector<double> s;
    std::vector<double> t;
    std::string grid;
    std::string z = "3";
    int bits = ef::kDefaultBits;
    int order = 2;
    std::optional<double> tol;
    std::string format = "json";
    std::string out;
    int jobs = 1;
    int points = 256;
    bool exact = false;
    bool check_kc = false;
    bool exact_compare = false;
    std::string variant = "corrected";
    std::vector<std::string> skip;
};

// Accepts decimals and "p/q".
double parse_number(const std::string& text) {
    const auto slash = text.find('/');
    std::size_t used = 0;
    try {
        if (slash == std::string::npos) {
            const double v = std::stod(text, &used);
            if (used == text.size()) return v;
        } else {
            const double p = std::stod(text.substr(0, slash));
            const double q = std::stod(text.substr(slash + 1), &used);
            if (used == text.size() - slash - 1 && q != 0.0) return p / q;
        }
    } catch (const std::exception&) {
    }
    fail(ErrorKind::Domain, "cannot parse number '" + text + "'");
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) fail(ErrorKind::Domain, "--grid expects lo:hi:steps");
    const double lo = parse_number(parts[0]), hi = parse_number(parts[1]);
    const int steps = std::stoi(parts[2]);
    if (steps < 1) fail(ErrorKind::Domain, "--grid needs at least one step");
    std::vector<double> v;
    for (int i = 0; i < steps; ++i) v.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
    return v;
}

std::complex<double> parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return {parse_number(text), 0.0};
    return {parse_number(text.substr(0, comma)), parse_number(text.substr(comma + 1))};
}

int charge_count(double c, int N) {
    const double cn = c * N;
    const long m = std::lround(cn);
    if (std::fabs(cn - static_cast<double>(m)) > 1e-9)
        fail(ErrorKind::Domain, "c*N must be an integer in exact mode (N=" + std::to_string(N) + ")");
    return static_cast<int>(m);
}

template <class F>
std::vector<Json> compute_rows(std::size_t count, int jobs, F&& row) {
    std::vector<Json> rows(count);
    if (jobs <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) rows[i] = row(i);
        return rows;
    }
    std::vector<std::future<void>> workers;
    const std::size_t stride = static_cast<std::size_t>(jobs);
    for (std::size_t w = 0; w < stride && w < count; ++w)
        workers.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < count; i += stride) rows[i] = row(i);
        }));
    for (auto& f : workers) f.get();
    return rows;
}

Json table(const std::string& command, Json params, std::vector<Json> rows) {
    Json doc;
    doc["schema_version"] = verify::kSchemaVersion;
    doc["command"] = command;
    doc["params"] = std::move(params);
    doc["rows"] = std::move(rows);
    return doc;
}

std::string csv_cell(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

std::string to_csv(const Json& doc) {
    std::ostringstream os;
    const auto& rows = doc.at("rows");
    if (rows.empty()) return "";
    bool first = true;
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
        os << (first ? "" : ",") << it.key();
        first = false;
    }
    os << "\n";
    for (const auto& r : rows) {
        first = true;
        for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
            os << (first ? "" : ",") << (r.contains(it.key()) ? csv_cell(r.at(it.key())) : "");
            first = false;
        }
        os << "\n";
    }
    return os.str();
}

void emit(const RunConfig& cfg, const Json& doc) {
    const std::string text = cfg.format == "csv" ? to_csv(doc) : doc.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) fail(ErrorKind::Domain, "cannot open --out file " + cfg.out);
    f << text;
}

std::vector<int> sizes_or(const RunConfig& cfg, std::vector<int> fallback) {
    return cfg.n.empty() ? fallback : cfg.n;
}

int cmd_geometry(const RunConfig& cfg) {
    const double a = parse_number(cfg.a), c = parse_number(cfg.c);
    const auto params = geometry::ModelParams::make(a, c, cfg.tol.value_or(geometry::kRegimeTol));
    Json p{{"a", a}, {"c", c}, {"regime", geometry::to_string(params.regime)}, {"a_cri", geometry::a_critical(c)},
           {"points", cfg.points}};
    if (params.regime == geometry::Regime::Pre) {
        const auto g = geometry::pre_geometry(a, c);
        p["q"] = g.q;
        p["R"] = g.R;
        p["kappa"] = g.kappa;
        p["beta_re"] = g.beta.real();
        p["beta_im"] = g.beta.imag();
        p["b"] = g.b;
        p["cubic_residual"] = geometry::q_cubic_residual(a, c, g.q);
    } else if (params.regime == geometry::Regime::Post) {
        const auto g = geometry::post_geometry(a, c);
        p["outer_radius"] = g.outer_radius;
        p["inner_center"] = g.inner_center;
        p["inner_radius"] = g.inner_radius;
        p["beta"] = g.beta;
        p["b"] = std::isfinite(g.b) ? Json(g.b) : Json(nullptr);
    }
    const auto droplet = geometry::droplet_boundary(params, cfg.points);
    p["euler_characteristic"] = droplet.euler_characteristic;
    p["components"] = droplet.components.size();
    std::vector<Json> rows;
    for (std::size_t k = 0; k < droplet.components.size(); ++k) {
        const auto& comp = droplet.components[k];
        for (std::size_t i = 0; i < comp.points.size(); ++i)
            rows.push_back({{"component", k}, {"theta", comp.theta[i]}, {"re", comp.points[i].real()},
                            {"im", comp.points[i].imag()}});
    }
    emit(cfg, table("geometry", p, rows));
    return kExitOk;
}

int cmd_free_energy(const RunConfig& cfg) {
    const double a = parse_number(cfg.a), c = parse_number(cfg.c);
    const auto regime = geometry::classify(a, c);
    if (regime == geometry::Regime::AtCriticality)
        fail(ErrorKind::Domain, "free-energy: (a,c) is critical; use the critical subcommand");
    if (cfg.order < 0) fail(ErrorKind::Domain, "--order must be nonnegative");
    const auto terms = freeenergy::expansion_terms(a, c, regime, cfg.order);
    const auto br = freeenergy::energy_breakdown(a, c, regime);
    Json p{{"a", a},
           {"c", c},
           {"regime", geometry::to_string(regime)},
           {"order", cfg.order},
           {"energy", br.energy},
           {"robin", br.robin},
           {"potential_integral", br.potential_integral},
           {"fconst", freeenergy::fconst(a, c, regime)},
           {"chi", terms.chi},
           {"error_class", terms.error_class}};
    const auto sizes = sizes_or(cfg, {4, 8, 16});
    ef::PrecisionScope scope(cfg.bits);
    auto rows = compute_rows(sizes.size(), cfg.jobs, [&](std::size_t i) {
        const int N = sizes[i];
        Json r{{"N", N}, {"a", a}, {"c", c}, {"regime", geometry::to_string(regime)}};
        const double approx = terms.evaluate(N);
        r["expansion"] = approx;
        if (cfg.exact) {
            const auto ctx = ef::ExactContext::make(N, charge_count(c, N), cfg.a, cfg.bits);
            const double exact = static_cast<double>(ef::exact_logZ(ctx));
            r["exact_logZ"] = exact;
            r["residual"] = exact - approx;
        } else {
            r["exact_logZ"] = nullptr;
            r["residual"] = nullptr;
        }
        return r;
    });
    emit(cfg, table("free-energy", p, rows));
    return kExitOk;
}

int cmd_exact(const RunConfig& cfg) {
    const auto sizes = sizes_or(cfg, {4});
    ef::PrecisionScope scope(cfg.bits);
    Json p{{"a", cfg.a}, {"bits", cfg.bits}};
    auto rows = compute_rows(sizes.size(), cfg.jobs, [&](std::size_t i) {
        const int N = sizes[i];
        const int m = cfg.m ? *cfg.m : charge_count(parse_number(cfg.c), N);
        const auto ctx = ef::ExactContext::make(N, m, cfg.a, cfg.bits);
        const auto logz = ef::exact_logZ(ctx);
        return Json{{"N", N},
                    {"m", m},
                    {"a", cfg.a},
                    {"logZ", logz.str(ef::digits10_for_bits(cfg.bits) / 2)},
                    {"reference_logZ", static_cast<double>(ef::reference_logZ(N, m))},
                    {"A11", static_cast<double>(ef::exact_A11(ctx))}};
    });
    emit(cfg, table("exact", p, rows));
    return kExitOk;
}

int cmd_duality(const RunConfig& cfg) {
    if (cfg.n.size() != 1 || !cfg.m) fail(ErrorKind::Domain, "duality-check needs one --n and --m");
    const double tol = cfg.tol.value_or(1e-25);
    ef::PrecisionScope scope(cfg.bits);
    const auto d = ef::duality_residual(cfg.n[0], *cfg.m, ef::parse_real(cfg.x));
    const double residual = static_cast<double>(d.residual);
    const bool ok = residual < tol;
    Json row{{"N", cfg.n[0]},
             {"m", *cfg.m},
             {"x", cfg.x},
             {"lhs", static_cast<double>(d.lhs)},
             {"rhs", static_cast<double>(d.rhs)},
             {"residual", residual},
             {"tol", tol},
             {"pass", ok}};
    emit(cfg, table("duality-check", {{"bits", cfg.bits}}, {row}));
    return ok ? kExitOk : kExitCheck;
}

int cmd_tw(const RunConfig& cfg) {
    const double tol = cfg.tol.value_or(painleve::kDefaultTol);
    std::vector<double> ts = cfg.t;
    if (!cfg.grid.empty()) ts = parse_grid(cfg.grid);
    if (ts.empty()) ts = parse_grid("-8:6:15");
    const auto sol = painleve::hastings_mcleod(painleve::kDefaultSMin, painleve::kDefaultSMax, tol);
    auto rows = compute_rows(ts.size(), cfg.jobs, [&](std::size_t i) {
        const double lf = painleve::tw_log_cdf(sol, ts[i]);
        return Json{{"t", ts[i]}, {"F_TW", std::exp(lf)}, {"log_F_TW", lf}, {"hm_q", sol.hm_q_at(ts[i])}};
    });
    emit(cfg, table("tw", {{"tol", tol}, {"s_min", sol.s_min}, {"s_max", sol.s_max}}, rows));
    return kExitOk;
}

int cmd_critical(const RunConfig& cfg) {
    const double c = parse_number(cfg.c);
    std::vector<double> ss = cfg.s;
    if (!cfg.grid.empty()) ss = parse_grid(cfg.grid);
    if (ss.empty()) ss = {0.0};
    const auto sizes = sizes_or(cfg, {4, 8});
    const auto sol = painleve::hastings_mcleod(painleve::kDefaultSMin, painleve::kDefaultSMax,
                                               cfg.tol.value_or(painleve::kDefaultTol));
    ef::PrecisionScope scope(cfg.bits);
    auto rows = compute_rows(sizes.size() * ss.size(), cfg.jobs, [&](std::size_t i) {
        const int N = sizes[i / ss.size()];
        const double s = ss[i % ss.size()];
        const double a = painleve::critical_a(s, c, N);
        const double approx = painleve::critical_expansion(sol, N, c, s);
        Json r{{"N", N}, {"s", s}, {"a", a}, {"expansion", approx}, {"exact_logZ", nullptr}, {"residual", nullptr}};
        if (cfg.exact) {
            const auto ctx = ef::ExactContext::make(N, charge_count(c, N), ef::Real(a), cfg.bits);
            const double exact = static_cast<double>(ef::exact_logZ(ctx));
            r["exact_logZ"] = exact;
            r["residual"] = exact - approx;
        }
        return r;
    });
    emit(cfg, table("critical", {{"c", c}}, rows));
    return kExitOk;
}

int cmd_ldp(const RunConfig& cfg) {
    const double alpha = parse_number(cfg.alpha);
    const auto lue = ldp::LUEParams::make(alpha);
    const double tol = cfg.tol.value_or(1e-10);
    Json p{{"alpha", alpha}, {"lambda_minus", lue.lambda_minus}, {"lambda_plus", lue.lambda_plus}, {"tol", tol}};
    std::vector<Json> rows;
    bool ok = true;
    if (cfg.exact_compare) {
        if (cfg.t.size() != 1) fail(ErrorKind::Domain, "ldp --exact-compare needs one --t");
        const auto sizes = sizes_or(cfg, {4, 8, 16});
        ef::PrecisionScope scope(cfg.bits);
        rows = compute_rows(sizes.size(), cfg.jobs, [&](std::size_t i) {
            const auto cmp = ldp::compare_exact(sizes[i], alpha, cfg.t[0]);
            return Json{{"n", cmp.n},
                        {"t", cfg.t[0]},
                        {"exact_log_p", cmp.exact_log_p},
                        {"asymptotic", cmp.asymptotic},
                        {"residual", cmp.residual}};
        });
    } else {
        std::vector<double> ts = cfg.t;
        if (!cfg.grid.empty()) ts = parse_grid(cfg.grid);
        if (ts.empty()) fail(ErrorKind::Domain, "ldp needs --grid or --t");
        rows = compute_rows(ts.size(), cfg.jobs, [&](std::size_t i) {
            const double t = ts[i];
            const double ph = ldp::phi(t, alpha);
            const double kc = ldp::kc_rate(t, alpha);
            return Json{{"t", t}, {"phi", ph}, {"kc_rate", kc}, {"residual", ph - kc}, {"psi", ldp::psi(t, alpha)}};
        });
        if (cfg.check_kc) {
            double worst = 0.0;
            for (const auto& r : rows) worst = std::max(worst, std::fabs(r["residual"].get<double>()));
            p["max_residual"] = worst;
            ok = worst < tol;
            p["pass"] = ok;
        }
    }
    emit(cfg, table("ldp", p, rows));
    return ok ? kExitOk : kExitCheck;
}

int cmd_op_compare(const RunConfig& cfg) {
    const double a = parse_number(cfg.a), c = parse_number(cfg.c);
    const auto params = geometry::ModelParams::make(a, c);
    const opasymp::GEvaluator ge(params);
    const auto z = parse_complex(cfg.z);
    if (cfg.variant != "corrected" && cfg.variant != "no-phase")
        fail(ErrorKind::Domain, "--variant must be corrected or no-phase");
    const auto variant = cfg.variant == "corrected" ? opasymp::HVariant::Corrected : opasymp::HVariant::NoPhase;
    const auto sizes = sizes_or(cfg, {4, 8, 16});
    ef::PrecisionScope scope(cfg.bits);
    auto rows = compute_rows(sizes.size(), cfg.jobs, [&](std::size_t i) {
        const int N = sizes[i];
        const auto ctx = ef::ExactContext::make(N, charge_count(c, N), cfg.a, cfg.bits);
        const auto exact = ef::to_complex(ef::eval_poly(ef::exact_op(ctx), {ef::Real(z.real()), ef::Real(z.imag())}));
        const auto approx = opasymp::p_asymp(ge, z, N, variant);
        return Json{{"N", N},
                    {"z_re", z.real()},
                    {"z_im", z.imag()},
                    {"exact_re", exact.real()},
                    {"exact_im", exact.imag()},
                    {"asymptotic_re", approx.real()},
                    {"asymptotic_im", approx.imag()},
                    {"rel_error", std::abs(approx / exact - 1.0)}};
    });
    Json p{{"a", a},
           {"c", c},
           {"regime", geometry::to_string(params.regime)},
           {"variant", cfg.variant},
           {"exterior_radius", opasymp::kExteriorFactor * ge.reference_radius()},
           {"error_order", opasymp::p_asymp_error_order(params.regime)}};
    emit(cfg, table("op-compare", p, rows));
    return kExitOk;
}

int cmd_report(const RunConfig& cfg) {
    const std::set<std::string> skip(cfg.skip.begin(), cfg.skip.end());
    const auto results = verify::run_all(skip);
    std::vector<Json> rows;
    int passed = 0;
    for (const auto& r : results) {
        std::cerr << verify::format_line(r) << "\n";
        if (r.pass) ++passed;
        rows.push_back(Json::parse(verify::to_json(r).dump()));
    }
    Json p{{"passed", passed}, {"total", results.size()}};
    if (cfg.format == "csv") {
        std::vector<Json> flat;
        for (const auto& r : rows)
            flat.push_back({{"id", r["id"]}, {"key", r["key"]}, {"pass", r["pass"]}, {"summary", r["summary"]}});
        rows = std::move(flat);
    }
    emit(cfg, table("report", p, rows));
    return passed == static_cast<int>(results.size()) ? kExitOk : kExitCheck;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Domain:
        case ErrorKind::IndexOutOfRange: return kExitUsage;
        default: return kExitNumerical;
    }
}

void report_error(const std::string& kind, const std::string& message) {
    std::cerr << Json{{"error", kind}, {"message", message}}.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conditional Ginibre ensemble: geometry, free energies, exact oracles and asymptotics"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&cfg](CLI::App* sub) {
        sub->add_option("--bits", cfg.bits, "extended precision in bits")->check(CLI::Range(128, 4096));
        sub->add_option("--tol", cfg.tol, "tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", cfg.out, "output file (default stdout)");
        sub->add_option("--jobs", cfg.jobs, "concurrent row workers")->check(CLI::Range(1, 256));
    };
    auto add_a = [&cfg](CLI::App* sub) { sub->add_option("--a", cfg.a, "insertion point a (decimal or p/q)"); };
    auto add_c = [&cfg](CLI::App* sub) { sub->add_option("--c", cfg.c, "charge c (decimal or p/q)"); };
    auto add_n = [&cfg](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "matrix size(s), comma separated")->delimiter(',')->check(CLI::PositiveNumber);
    };

    auto* geo = app.add_subcommand("geometry", "droplet geometry and boundary points");
    add_a(geo);
    add_c(geo);
    geo->add_option("--points", cfg.points, "boundary points per component")->check(CLI::Range(8, 1000000));
    common(geo);

    auto* fe = app.add_subcommand("free-energy", "free-energy expansion table");
    add_a(fe);
    add_c(fe);
    add_n(fe);
    fe->add_option("--order", cfg.order, "Bernoulli tail order M");
    fe->add_flag("--exact", cfg.exact, "add the exact log Z_N column");
    common(fe);

    auto* ex = app.add_subcommand("exact", "exact log Z_N from the Hankel oracle");
    add_a(ex);
    add_c(ex);
    add_n(ex);
    ex->add_option("--m", cfg.m, "charge count m = cN");
    common(ex);

    auto* du = app.add_subcommand("duality-check", "LUE gap probability against the partition-function ratio");
    add_n(du);
    du->add_option("--m", cfg.m, "charge count m = cN")->required();
    du->add_option("--x", cfg.x, "insertion point x >= 0");
    common(du);

    auto* tw = app.add_subcommand("tw", "Tracy-Widom distribution table");
    tw->add_option("--t", cfg.t, "evaluation points")->delimiter(',');
    tw->add_option("--grid", cfg.grid, "lo:hi:steps");
    common(tw);

    auto* cr = app.add_subcommand("critical", "critical-window free-energy expansion");
    add_c(cr);
    add_n(cr);
    cr->add_option("--s", cfg.s, "critical parameter(s)")->delimiter(',');
    cr->add_option("--grid", cfg.grid, "lo:hi:steps for s");
    cr->add_flag("--exact", cfg.exact, "add the exact log Z_N column");
    common(cr);

    auto* ld = app.add_subcommand("ldp", "LUE large-deviation rate function table");
    ld->add_option("--alpha", cfg.alpha, "rectangular parameter alpha (decimal or p/q)");
    ld->add_option("--t", cfg.t, "wall position(s)")->delimiter(',');
    ld->add_option("--grid", cfg.grid, "lo:hi:steps for t");
    add_n(ld);
    ld->add_flag("--check-kc", cfg.check_kc, "exit 3 if phi differs from S(t)-S(lambda_-) beyond --tol");
    ld->add_flag("--exact-compare", cfg.exact_compare, "compare with the exact finite-n gap probability");
    common(ld);

    auto* op = app.add_subcommand("op-compare", "orthogonal polynomial: exact against asymptotic");
    add_a(op);
    add_c(op);
    add_n(op);
    op->add_option("--z", cfg.z, "evaluation point re or re,im");
    op->add_option("--variant", cfg.variant, "corrected or no-phase");
    common(op);

    auto* rep = app.add_subcommand("report", "run every acceptance criterion");
    rep->add_option("--skip", cfg.skip, "criterion keys, ids or suites to omit")->delimiter(',');
    common(rep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error("Usage", e.what());
        return kExitUsage;
    }

    try {
        const auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "geometry") return cmd_geometry(cfg);
        if (name == "free-energy") return cmd_free_energy(cfg);
        if (name == "exact") return cmd_exact(cfg);
        if (name == "duality-check") return cmd_duality(cfg);
        if (name == "tw") return cmd_tw(cfg);
        if (name == "critical") return cmd_critical(cfg);
        if (name == "ldp") return cmd_ldp(cfg);
        if (name == "op-compare") return cmd_op_compare(cfg);
        if (name == "report") return cmd_report(cfg);
    } catch (const Error& e) {
        report_error(to_string(e.kind()), e.what());
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        report_error("Internal", e.what());
        return kExitNumerical;
    }
    return kExitUsage;
}
