#include "verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "dpmeans/charfn_variance.hpp"
#include "dpmeans/gamma_mean.hpp"
#include "dpmeans/identities.hpp"
#include "dpmeans/mc_oracle.hpp"
#include "dpmeans/mean_distribution.hpp"

namespace dpmeans::cli {

namespace {

constexpr cplx kI{0.0, 1.0};

struct Named {
    std::string name;
    ParameterMeasure alpha;
};

ParameterMeasure restricted_gaussian(double mass, double lo, double hi) {
    const double p = 0.5 * (std::erf(hi / std::sqrt(2.0)) - std::erf(lo / std::sqrt(2.0)));
    return ParameterMeasure::mixed({}, ContinuousPart{GaussianLaw{0.0, 1.0}, mass / p, Interval{lo, hi}});
}

std::vector<Named> discrete_panel() {
    return {{"two-point", ParameterMeasure::discrete({{1.0, 1.5}, {0.0, 0.5}})},
            {"three-point", ParameterMeasure::discrete({{0.0, 0.7}, {0.4, 1.1}, {1.0, 0.6}})},
            {"three-point-light", ParameterMeasure::discrete({{-0.5, 0.3}, {0.5, 0.2}, {1.0, 0.3}})}};
}

std::vector<Named> full_panel() {
    auto p = discrete_panel();
    p.push_back({"cauchy", ParameterMeasure::cauchy(0.0, 1.0)});
    p.push_back({"truncated-gaussian", restricted_gaussian(1.5, -2.0, 2.0)});
    return p;
}

void add(std::vector<CheckResult>& out, const std::string& suite, const std::string& name, double residual,
         double tol, bool expected_fail = false) {
    CheckResult r{suite, name, residual, tol, false, expected_fail};
    r.pass = expected_fail ? residual > 10.0 * tol : residual <= tol;
    out.push_back(r);
}

std::string label(const std::string& who, const char* key, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " %s=%g", key, v);
    return who + buf;
}

void guarded(std::vector<CheckResult>& out, const std::string& suite, const std::string& name,
             const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        CheckResult r{suite, name + " (" + e.what() + ")", INFINITY, 0.0, false, false};
        out.push_back(r);
    }
}

void suite_mk(std::vector<CheckResult>& out, const std::vector<Named>& panel, const QuadratureConfig& cfg) {
    for (const Named& m : panel) {
        guarded(out, "mk", m.name, [&] {
            const DensityTable table = mean_law_table(m.alpha, cfg);
            const double a = m.alpha.total_mass();
            for (double t : {0.3, 1.0, 3.0}) {
                const TableIntegral d = table_integral(table, [&](double x) { return std::pow(1.0 + kI * t * x, -a); }, cfg);
                add(out, "mk", label(m.name, "t", t), std::abs(d.value - mk_transform(t, m.alpha, cfg)), 1e-6);
            }
        });
    }
}

void suite_lauricella(std::vector<CheckResult>& out, const std::vector<Named>& panel, const QuadratureConfig& cfg) {
    for (const Named& m : panel) {
        guarded(out, "lauricella", m.name, [&] {
            const DensityTable table = mean_law_table(m.alpha, cfg);
            const double a = m.alpha.total_mass();
            for (double c : {0.5 * a, a, 1.5 * a + 0.5}) {
                for (double t : {0.3, 1.0, 3.0}) {
                    const TableIntegral d =
                        table_integral(table, [&](double x) { return std::pow(1.0 + kI * t * x, -c); }, cfg);
                    const std::string who = label(label(m.name, "c", c), "t", t);
                    add(out, "lauricella", who, std::abs(d.value - lauricella_stieltjes(t, m.alpha, c, cfg)), 1e-5);
                }
            }
        });
    }
}

std::vector<double> cauchy_grid(double theta, double sigma) {
    std::vector<double> g;
    for (int i = 0; i <= 20; ++i) g.push_back(theta + (-5.0 + 0.5 * i) / sigma);
    return g;
}

void suite_cauchy(std::vector<CheckResult>& out, const std::optional<ParameterMeasure>& user, const QuadratureConfig& cfg) {
    std::vector<std::pair<double, double>> cases = {{0.0, 1.0}, {2.0, 0.5}};
    if (user && user->kind() == MeasureKind::Cauchy) {
        const auto& law = std::get<CauchyLaw>(user->continuous()->law);
        cases.push_back({law.theta, law.sigma});
    }
    for (auto [theta, sigma] : cases) {
        const std::string who = label(label("cauchy", "theta", theta), "sigma", sigma);
        guarded(out, "cauchy-fixed-point", who, [&] {
            add(out, "cauchy-fixed-point", who, cauchy_fixed_point_residual(theta, sigma, cauchy_grid(theta, sigma), cfg), 1e-4);
        });
    }
}

void suite_symmetry(std::vector<CheckResult>& out, const std::optional<ParameterMeasure>& user, const QuadratureConfig& cfg) {
    const std::vector<double> inner = {0.05, 0.25, 0.45, 0.65, 0.85};
    const std::vector<double> wide = {0.25, 0.75, 1.25, 1.75};
    std::vector<Named> sym = {{"pm-one", ParameterMeasure::discrete({{-1.0, 0.5}, {1.0, 0.5}})},
                              {"three-symmetric", ParameterMeasure::discrete({{-1.0, 1.0}, {0.0, 0.3}, {1.0, 1.0}})},
                              {"four-symmetric", ParameterMeasure::discrete({{-2.0, 0.4}, {-0.5, 0.8}, {0.5, 0.8}, {2.0, 0.4}})}};
    std::vector<Named> skew = {{"control delta2+delta-1", ParameterMeasure::discrete({{2.0, 1.0}, {-1.0, 1.0}})}};
    if (user) (user->is_symmetric() ? sym : skew).push_back({"user", *user});
    for (const Named& m : sym) {
        guarded(out, "symmetry", m.name, [&] {
            add(out, "symmetry", m.name + " density", symmetry_residual(m.alpha, inner, cfg), 1e-4);
            if (m.alpha.hull().bounded()) {
                for (double t : {0.5, 1.0, 3.0})
                    add(out, "symmetry", label(m.name + " Im charfn", "t", t), std::abs(mean_charfn(t, m.alpha, cfg).value.imag()), 1e-5);
            }
        });
    }
    for (const Named& m : skew) {
        guarded(out, "symmetry", m.name, [&] {
            add(out, "symmetry", m.name + " density", symmetry_residual(m.alpha, wide, cfg), 1e-4, true);
            if (m.alpha.hull().bounded()) {
                double worst = 0.0;
                for (double t : {0.5, 1.0, 3.0}) worst = std::max(worst, std::abs(mean_charfn(t, m.alpha, cfg).value.imag()));
                add(out, "symmetry", m.name + " Im charfn", worst, 1e-5, true);
            }
        });
    }
}

void suite_levy(std::vector<CheckResult>& out, const std::optional<ParameterMeasure>& user, const QuadratureConfig& cfg) {
    std::vector<Named> panel = discrete_panel();
    panel.push_back({"pm-one", ParameterMeasure::discrete({{-1.0, 1.0}, {1.0, 1.0}})});
    if (user && user->hull().bounded()) panel.push_back({"user", *user});
    for (const Named& m : panel) {
        guarded(out, "levy", m.name, [&] {
            const LevyTriple tr = levy_triple(m.alpha, cfg);
            for (double t : {0.5, 1.0, 3.0}) {
                add(out, "levy", label(m.name, "t", t),
                    std::abs(levy_reconstruct_charfn(t, tr, cfg) - gamma_charfn(t, m.alpha, cfg)), 1e-5);
            }
            double neg = 0.0;
            for (double u = -30.0; u <= 30.0; u += 0.25) neg = std::max(neg, -tr.g(u));
            add(out, "levy", m.name + " g >= 0", neg, 0.0);
        });
    }
    guarded(out, "levy", "origin", [&] {
        const auto origin = ParameterMeasure::discrete({{0.0, 1.0}});
        double worst = 0.0;
        for (double t : {0.5, 1.0, 3.0}) worst = std::max(worst, std::abs(levy_reconstruct_charfn(t, origin, cfg) - 1.0));
        add(out, "levy", "delta0 charfn == 1", worst, 0.0);
    });
}

void suite_gamma(std::vector<CheckResult>& out, const std::optional<ParameterMeasure>& user, const QuadratureConfig& cfg) {
    guarded(out, "gamma", "2 delta1", [&] {
        const auto two = ParameterMeasure::discrete({{1.0, 2.0}});
        const DensityTable none = gamma_mean_table(two, cfg);
        double worst = 0.0;
        for (double x = 0.1; x < 8.0; x += 0.1)
            worst = std::max(worst, std::abs(gamma_mean_density(x, two, none, cfg).value - x * std::exp(-x)));
        add(out, "gamma", "2 delta1 vs Gamma(2) pdf", worst, 1e-5);
    });
    std::vector<Named> ks = {{"delta1+delta2", ParameterMeasure::discrete({{1.0, 1.0}, {2.0, 1.0}})}};
    if (user && user->is_discrete() && user->mass_at(0.0) < user->total_mass()) ks.push_back({"user", *user});
    for (const Named& m : ks) {
        guarded(out, "gamma", m.name, [&] {
            const DensityTable table = gamma_mean_table(m.alpha, cfg);
            McConfig mc;
            mc.seed = 101;
            const auto s = sample_gamma_functional(m.alpha, [](double x) { return x; }, mc);
            const double d = ks_statistic(s, [&](double x) { return gamma_mean_cdf(x, m.alpha, table, cfg).value; });
            add(out, "gamma", m.name + " KS vs gamma sums", d, 0.01);
        });
    }
}

double uniform_variance_mgf(double t) {
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate([t](double u) { return std::exp(-t * u * (1.0 - u)); }, 0.0, 1.0);
}

void suite_var_mgf(std::vector<CheckResult>& out, const std::optional<ParameterMeasure>& user, const QuadratureConfig& cfg) {
    std::vector<Named> panel = {{"delta1+delta0", ParameterMeasure::discrete({{1.0, 1.0}, {0.0, 1.0}})}};
    if (user && user->hull().bounded()) panel.push_back({"user", *user});
    for (const Named& m : panel) {
        guarded(out, "var-mgf", m.name, [&] {
            add(out, "var-mgf", m.name + " t=0", std::abs(variance_mgf(0.0, m.alpha, cfg).value - 1.0), 0.0);
            McConfig mc;
            mc.seed = 202;
            const MeanVarianceDraws d = sample_mean_variance(m.alpha, mc);
            double prev = 1.0, rise = 0.0;
            for (double t : {0.5, 1.0, 2.0}) {
                const double v = variance_mgf(t, m.alpha, cfg).value;
                rise = std::max(rise, v - prev);
                prev = v;
                if (m.name == "delta1+delta0") add(out, "var-mgf", label(m.name + " vs 1-d integral", "t", t), std::abs(v - uniform_variance_mgf(t)), 1e-4);
                const Estimate e = mgf(d.variance, t);
                add(out, "var-mgf", label(m.name + " MC / 3 SE", "t", t), std::abs(v - e.value.real()) / (3.0 * e.std_err), 1.0);
            }
            add(out, "var-mgf", m.name + " nonincreasing", rise, 0.0);
        });
    }
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"mk", "lauricella", "cauchy-fixed-point", "symmetry",
                                                   "levy", "gamma", "var-mgf", "all"};
    return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, const std::optional<ParameterMeasure>& user,
                                   const QuadratureConfig& cfg) {
    std::vector<CheckResult> out;
    auto with_user = [&](std::vector<Named> p, bool discrete_only) {
        if (user && (!discrete_only || user->is_discrete())) p.push_back({"user", *user});
        return p;
    };
    const std::map<std::string, std::function<void()>> runners = {
        {"mk", [&] { suite_mk(out, with_user(full_panel(), false), cfg); }},
        {"lauricella", [&] { suite_lauricella(out, with_user(discrete_panel(), true), cfg); }},
        {"cauchy-fixed-point", [&] { suite_cauchy(out, user, cfg); }},
        {"symmetry", [&] { suite_symmetry(out, user, cfg); }},
        {"levy", [&] { suite_levy(out, user, cfg); }},
        {"gamma", [&] { suite_gamma(out, user, cfg); }},
        {"var-mgf", [&] { suite_var_mgf(out, user, cfg); }},
    };
    if (suite == "all") {
        for (const std::string& n : suite_names())
            if (n != "all") runners.at(n)();
        return out;
    }
    const auto it = runners.find(suite);
    if (it == runners.end()) throw InvalidArgument("unknown suite '" + suite + "'");
    it->second();
    return out;
}

std::string describe(const CheckResult& r) {
    char buf[512];
    const char* status = r.pass ? (r.expected_fail ? "XFAIL-OK" : "PASS") : "FAIL";
    std::snprintf(buf, sizeof buf, "%-8s %-18s %-52s residual=%.3e %s=%.1e", status, r.suite.c_str(), r.name.c_str(),
                  r.residual, r.expected_fail ? "must-exceed-10x" : "tol", r.tol);
    return buf;
}

}  // namespace dpmeans::cli
