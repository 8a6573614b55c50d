#include <cmath>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cli_io.hpp"
#include "verify.hpp"

#include "dpmeans/charfn_variance.hpp"
#include "dpmeans/errors.hpp"
#include "dpmeans/gamma_mean.hpp"
#include "dpmeans/identities.hpp"
#include "dpmeans/mc_oracle.hpp"
#include "dpmeans/mean_distribution.hpp"
#include "dpmeans/measure_io.hpp"
#include "dpmeans/parallel.hpp"

using namespace dpmeans;
using namespace dpmeans::cli;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kPointFailures = 2;

struct Options {
    std::string measure;
    std::string grid;
    std::string t = "0";
    double c = -1.0;
    std::string out;
    std::string format = "csv";
    double tol = 0.0;
    std::uint64_t seed = McConfig{}.seed;
    std::size_t n = 100000;
    std::string suite = "all";
    bool variance = false;
};

struct Loaded {
    ParameterMeasure alpha;
    std::string fingerprint;
};

Loaded load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open measure file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    return {parse_measure_json(text), fnv1a_hex(text)};
}

// A single value, a comma-separated list, or LO:HI:N.
std::vector<double> parse_t_list(const std::string& s) {
    if (s.find(':') != std::string::npos) return parse_grid(s);
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t k = 0;
        double v;
        try {
            v = std::stod(item, &k);
        } catch (const std::exception&) {
            throw InvalidArgument("bad t value '" + item + "'");
        }
        if (k != item.size() || !std::isfinite(v)) throw InvalidArgument("bad t value '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw InvalidArgument("empty t list");
    return out;
}

Format parse_format(const std::string& f) {
    if (f == "csv") return Format::Csv;
    if (f == "json") return Format::Json;
    throw InvalidArgument("format must be csv or json");
}

Manifest start_manifest(const std::string& command, int argc, char** argv, const QuadratureConfig& cfg) {
    Manifest m;
    m.command = command;
    m.argv.assign(argv, argv + argc);
    m.config = config_json(cfg);
    return m;
}

void attach(Manifest& m, const std::string& path, const Loaded& l) {
    m.measure_path = path;
    m.measure_fingerprint = l.fingerprint;
    m.extra["measure_kind"] = to_string(l.alpha.kind());
    m.extra["total_mass"] = l.alpha.total_mass();
}

std::optional<Loaded> load_optional(const Options& o, const std::vector<double>& ts, const char* command) {
    if (!o.measure.empty()) return load(o.measure);
    for (double t : ts)
        if (t != 0.0) throw InvalidArgument(std::string(command) + " needs --measure for t != 0");
    return std::nullopt;
}

int cmd_density(const Options& o, const QuadratureConfig& cfg, int argc, char** argv) {
    const Format format = parse_format(o.format);
    const std::vector<double> grid = parse_grid(o.grid);
    const Loaded l = load(o.measure);
    Manifest m = start_manifest("density", argc, argv, cfg);
    attach(m, o.measure, l);
    const DensityTable table = density_grid(l.alpha, grid, cfg);
    std::vector<bool> failed(grid.size(), false);
    for (std::size_t i : table.failed) failed[i] = true;
    json errors = json::array();
    for (std::size_t k = 0; k < table.failed.size(); ++k)
        errors.push_back({{"xi", grid[table.failed[k]]}, {"error", table.errors[k]}});
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!failed[i] && o.tol > 0.0 && !(table.err_est[i] <= o.tol)) {
            failed[i] = true;
            errors.push_back({{"xi", grid[i]}, {"error", "error estimate " + fmt(table.err_est[i]) + " above --tol"}});
        }
        if (failed[i]) {
            rows.push_back({fmt(grid[i]), "NaN", "FAILED"});
            m.point_errors.push_back(NAN);
        } else {
            rows.push_back({fmt(grid[i]), fmt(table.density[i]), fmt(table.err_est[i])});
            m.point_errors.push_back(table.err_est[i]);
        }
    }
    m.extra["regime"] = to_string(table.regime);
    m.extra["failures"] = errors;
    emit(o.out, format, {"xi", "density", "err"}, rows, m);
    for (const auto& e : errors) std::cerr << "point " << fmt(e["xi"].get<double>()) << ": " << e["error"].get<std::string>() << '\n';
    return errors.empty() ? kOk : kPointFailures;
}

int cmd_charfn(const Options& o, const QuadratureConfig& cfg, int argc, char** argv) {
    const Format format = parse_format(o.format);
    const std::vector<double> ts = parse_t_list(o.t);
    const auto l = load_optional(o, ts, "charfn");
    Manifest m = start_manifest("charfn", argc, argv, cfg);
    if (l) attach(m, o.measure, *l);
    std::vector<std::vector<std::string>> rows(ts.size());
    std::vector<std::string> errs(ts.size());
    parallel_for(ts.size(), [&](std::size_t i) {
        try {
            const CharfnResult r = l ? mean_charfn(ts[i], l->alpha, cfg) : CharfnResult{ts[i]};
            rows[i] = {fmt(ts[i]), fmt(r.value.real()), fmt(r.value.imag()), fmt(r.err_est), to_string(r.method),
                       fmt(r.k_final)};
        } catch (const std::exception& e) {
            rows[i] = {fmt(ts[i]), "NaN", "NaN", "FAILED", "none", "NaN"};
            errs[i] = e.what();
        }
    });
    int status = kOk;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        m.point_errors.push_back(errs[i].empty() ? std::stod(rows[i][3]) : NAN);
        if (!errs[i].empty()) {
            std::cerr << "t " << fmt(ts[i]) << ": " << errs[i] << '\n';
            status = kPointFailures;
        }
    }
    emit(o.out, format, {"t", "re", "im", "err", "method", "k_final"}, rows, m);
    return status;
}

int cmd_stieltjes(const Options& o, const QuadratureConfig& cfg, int argc, char** argv) {
    const Format format = parse_format(o.format);
    const std::vector<double> ts = parse_t_list(o.t);
    const Loaded l = load(o.measure);
    const double c = o.c > 0.0 ? o.c : l.alpha.total_mass();
    Manifest m = start_manifest("stieltjes", argc, argv, cfg);
    attach(m, o.measure, l);
    m.extra["c"] = c;
    std::vector<std::vector<std::string>> rows;
    int status = kOk;
    for (double t : ts) {
        try {
            const cplx v = lauricella_stieltjes(t, l.alpha, c, cfg);
            rows.push_back({fmt(t), fmt(v.real()), fmt(v.imag())});
        } catch (const Refused&) {
            throw;
        } catch (const std::exception& e) {
            rows.push_back({fmt(t), "NaN", "FAILED"});
            std::cerr << "t " << fmt(t) << ": " << e.what() << '\n';
            status = kPointFailures;
        }
    }
    emit(o.out, format, {"t", "re", "im"}, rows, m);
    return status;
}

int cmd_gamma(const Options& o, const QuadratureConfig& cfg, int argc, char** argv) {
    const Format format = parse_format(o.format);
    const std::vector<double> grid = parse_grid(o.grid);
    const Loaded l = load(o.measure);
    Manifest m = start_manifest("gamma", argc, argv, cfg);
    attach(m, o.measure, l);
    const DensityTable table = gamma_mean_table(l.alpha, cfg);
    const double tol = o.tol > 0.0 ? o.tol : 1e-6;
    std::vector<std::vector<std::string>> rows(grid.size());
    std::vector<std::string> errs(grid.size());
    std::vector<double> perr(grid.size(), NAN);
    parallel_for(grid.size(), [&](std::size_t i) {
        try {
            const GammaMeanValue q = gamma_mean_density(grid[i], l.alpha, table, cfg, tol);
            const GammaMeanValue F = gamma_mean_cdf(grid[i], l.alpha, table, cfg);
            rows[i] = {fmt(grid[i]), fmt(q.value), fmt(q.err_est), fmt(F.value)};
            perr[i] = q.err_est;
        } catch (const std::exception& e) {
            rows[i] = {fmt(grid[i]), "NaN", "FAILED", "NaN"};
            errs[i] = e.what();
        }
    });
    m.point_errors = perr;
    int status = kOk;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (errs[i].empty()) continue;
        std::cerr << "x " << fmt(grid[i]) << ": " << errs[i] << '\n';
        status = kPointFailures;
    }
    emit(o.out, format, {"x", "density", "err", "cdf"}, rows, m);
    return status;
}

int cmd_var_mgf(const Options& o, const QuadratureConfig& cfg, int argc, char** argv) {
    const Format format = parse_format(o.format);
    const std::vector<double> ts = parse_t_list(o.t);
    for (double t : ts)
        if (t < 0.0) throw InvalidArgument("var-mgf needs t >= 0");
    const auto l = load_optional(o, ts, "var-mgf");
    Manifest m = start_manifest("var-mgf", argc, argv, cfg);
    if (l) attach(m, o.measure, *l);
    std::vector<std::vector<std::string>> rows;
    int status = kOk;
    for (double t : ts) {
        try {
            const VarianceMgfResult r = l ? variance_mgf(t, l->alpha, cfg) : VarianceMgfResult{};
            rows.push_back({fmt(t), fmt(r.value), fmt(r.err_est), std::to_string(r.hermite_nodes)});
            m.point_errors.push_back(r.err_est);
        } catch (const std::exception& e) {
            rows.push_back({fmt(t), "NaN", "FAILED", "0"});
            m.point_errors.push_back(NAN);
            std::cerr << "t " << fmt(t) << ": " << e.what() << '\n';
            status = kPointFailures;
        }
    }
    emit(o.out, format, {"t", "value", "err", "hermite_nodes"}, rows, m);
    return status;
}

int cmd_sample(const Options& o, const QuadratureConfig& cfg, int argc, char** argv) {
    const Format format = parse_format(o.format);
    if (o.n == 0) throw InvalidArgument("--n must be positive");
    const Loaded l = load(o.measure);
    McConfig mc;
    mc.seed = o.seed;
    mc.n_samples = o.n;
    Manifest m = start_manifest("sample", argc, argv, cfg);
    attach(m, o.measure, l);
    const SamplingReport rep = describe_sampling(l.alpha, mc);
    m.extra["seed"] = o.seed;
    m.extra["n"] = o.n;
    m.extra["rng"] = kRngAlgorithm;
    m.extra["chunk_size"] = mc.chunk_size;
    m.extra["chunks"] = rep.chunks;
    m.extra["stick_residual"] = rep.stick_residual;
    if (!rep.note.empty()) m.extra["note"] = rep.note;
    std::vector<std::vector<std::string>> rows;
    if (o.variance) {
        const MeanVarianceDraws d = sample_mean_variance(l.alpha, mc);
        for (std::size_t i = 0; i < d.mean.size(); ++i) rows.push_back({fmt(d.mean[i]), fmt(d.variance[i])});
        emit(o.out, format, {"mean", "variance"}, rows, m);
    } else {
        for (double v : sample_mean(l.alpha, mc)) rows.push_back({fmt(v)});
        emit(o.out, format, {"mean"}, rows, m);
    }
    return kOk;
}

int cmd_verify(const Options& o, const QuadratureConfig& cfg) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), o.suite) == names.end())
        throw InvalidArgument("unknown suite '" + o.suite + "'");
    std::optional<ParameterMeasure> user;
    if (!o.measure.empty()) user = load(o.measure).alpha;
    const std::vector<CheckResult> results = run_suite(o.suite, user, cfg);
    std::size_t failed = 0;
    for (const CheckResult& r : results) {
        std::cout << describe(r) << '\n';
        if (!r.pass) ++failed;
    }
    std::cout << (failed ? "FAIL" : "PASS") << " " << o.suite << ": " << results.size() - failed << "/"
              << results.size() << " checks passed\n";
    return failed ? kError : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact laws of Dirichlet process means and variances"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    Options o;
    QuadratureConfig cfg;

    auto measure_opt = [&](CLI::App* s, bool required) {
        auto* opt = s->add_option("--measure", o.measure, "Measure definition file (JSON)");
        if (required) opt->required();
    };
    auto output_opts = [&](CLI::App* s) {
        s->add_option("--out", o.out, "Output path (stdout when omitted)");
        s->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };

    auto* density = app.add_subcommand("density", "Density of the mean on a grid");
    measure_opt(density, true);
    density->add_option("--grid", o.grid, "LO:HI:N")->required();
    density->add_option("--tol", o.tol, "Points whose error estimate exceeds this are reported as FAILED");
    output_opts(density);

    auto* charfn = app.add_subcommand("charfn", "Characteristic function of the mean");
    measure_opt(charfn, false);
    charfn->add_option("--t", o.t, "t value, comma list or LO:HI:N");
    output_opts(charfn);

    auto* stieltjes = app.add_subcommand("stieltjes", "Order-c Stieltjes transform of the mean law");
    measure_opt(stieltjes, true);
    stieltjes->add_option("--t", o.t, "t value, comma list or LO:HI:N");
    stieltjes->add_option("--c", o.c, "Order c > 0 (defaults to the total mass)");
    output_opts(stieltjes);

    auto* gamma = app.add_subcommand("gamma", "Density and cdf of the gamma-process mean");
    measure_opt(gamma, true);
    gamma->add_option("--grid", o.grid, "LO:HI:N")->required();
    gamma->add_option("--tol", o.tol, "Relative error budget per point (default 1e-6)");
    output_opts(gamma);

    auto* vmgf = app.add_subcommand("var-mgf", "Laplace transform E exp(-t V) of the random variance");
    measure_opt(vmgf, false);
    vmgf->add_option("--t", o.t, "t value, comma list or LO:HI:N");
    output_opts(vmgf);

    auto* sample = app.add_subcommand("sample", "Stick-breaking draws of the mean");
    measure_opt(sample, true);
    sample->add_option("--seed", o.seed, "RNG seed");
    sample->add_option("--n", o.n, "Number of draws");
    sample->add_flag("--variance", o.variance, "Also emit the random variance of each draw");
    output_opts(sample);

    auto* verify = app.add_subcommand("verify", "Run an invariant suite");
    verify->add_option("--suite", o.suite, "mk, lauricella, cauchy-fixed-point, symmetry, levy, gamma, var-mgf or all");
    verify->add_option("suite_name", o.suite, "Suite name (positional form)");
    measure_opt(verify, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kError;
    }

    try {
        if (*density) return cmd_density(o, cfg, argc, argv);
        if (*charfn) return cmd_charfn(o, cfg, argc, argv);
        if (*stieltjes) return cmd_stieltjes(o, cfg, argc, argv);
        if (*gamma) return cmd_gamma(o, cfg, argc, argv);
        if (*vmgf) return cmd_var_mgf(o, cfg, argc, argv);
        if (*sample) return cmd_sample(o, cfg, argc, argv);
        if (*verify) return cmd_verify(o, cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}
