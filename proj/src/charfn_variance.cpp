#include "dpmeans/charfn_variance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dpmeans/contour.hpp"
#include "dpmeans/identities.hpp"
#include "dpmeans/parallel.hpp"
#include "dpmeans/quadrature.hpp"
#include "dpmeans/zeta.hpp"

namespace dpmeans {

namespace {

constexpr cplx kI{0.0, 1.0};

struct Partial {
    cplx value;
    double err;
};

// Points of the hull's image under x -> t x, with 0 added.
std::pair<double, double> singular_span(const Interval& h, double t) {
    const double a = t * h.lo;
    const double b = t * h.hi;
    return {std::min({a, b, 0.0}), std::max({a, b, 0.0})};
}

Partial charfn_pv(double t, const ParameterMeasure& alpha, double gamma, const QuadratureConfig& cfg) {
    const double a = alpha.total_mass();
    auto g = [&](cplx w) { return std::exp(w - a * std::log(w) - zeta(-kI * t / w, alpha, cfg)); };
    const Interval h = alpha.hull();
    const double core = std::abs(t) * std::max(std::abs(h.lo), std::abs(h.hi));
    const PvResult r = pv_vertical_line(g, gamma, cfg, core);
    const double pref = std::exp(std::lgamma(a)) / (2.0 * M_PI);
    return {pref * r.value / kI, pref * r.err_est};
}

// Stadium around the segment i t hull and the cut of w^{-a}: rays from Re = -M at heights
// below and above the segment, joined by a vertical side at Re = rho.
Partial charfn_loop(double t, const ParameterMeasure& alpha, double scale, const QuadratureConfig& cfg) {
    const double a = alpha.total_mass();
    const auto [y0, y1] = singular_span(alpha.hull(), t);
    const double D = y1 - y0;
    const double clear = scale * std::max(0.1 * D, 0.5);
    const double rho = scale * std::min(std::max(0.1 * D, 0.5), 1.0);
    const double lo = y0 - clear;
    const double hi = y1 + clear;
    // e^{-M} times the largest integrand size stays below 1e-16
    const double M = 40.0 + a * std::max(0.0, -std::log(std::min(rho, clear))) + std::max(0.0, std::lgamma(a));

    std::vector<double> cuts;
    for (const Atom& at : alpha.atoms()) cuts.push_back(t * at.x);
    cuts.push_back(0.0);
    std::sort(cuts.begin(), cuts.end());
    std::vector<ContourPiece> pieces;
    pieces.push_back(LineSegment{cplx(-M, lo), cplx(rho, lo)});
    double y = lo;
    for (double c : cuts) {
        if (c <= y || c >= hi) continue;
        pieces.push_back(LineSegment{cplx(rho, y), cplx(rho, c)});
        y = c;
    }
    pieces.push_back(LineSegment{cplx(rho, y), cplx(rho, hi)});
    pieces.push_back(LineSegment{cplx(rho, hi), cplx(-M, hi)});

    auto g = [&](cplx w) { return std::exp(w - a * std::log(w) - zeta(-kI * t / w, alpha, cfg)); };
    const QuadResult r = integrate_contour(g, Contour(std::move(pieces)), cfg);
    const double pref = std::exp(std::lgamma(a)) / (2.0 * M_PI);
    return {pref * r.value / kI, pref * r.err_est};
}

CharfnResult bounded_charfn(double t, const ParameterMeasure& alpha, const QuadratureConfig& cfg,
                            const CharfnOptions& opts) {
    const double a = alpha.total_mass();
    CharfnResult out;
    out.t = t;
    if (t == 0.0) return out;
    if (alpha.is_degenerate()) {
        out.value = std::polar(1.0, t * alpha.atoms().front().x);
        return out;
    }
    bool pv = opts.path == CharfnOptions::Path::PvLine;
    if (opts.path == CharfnOptions::Path::Auto) pv = a > 1.0;
    const Partial p = pv ? charfn_pv(t, alpha, opts.gamma, cfg) : charfn_loop(t, alpha, opts.loop_scale, cfg);
    out.value = p.value;
    out.err_est = p.err;
    out.method = pv ? CharfnMethod::PvLine : CharfnMethod::LoopContour;
    return out;
}

template <class Eval>
auto truncation_limit(const ParameterMeasure& alpha, const QuadratureConfig& cfg, Eval eval, const char* what) {
    const double s = alpha.scale();
    decltype(eval(alpha)) prev{};
    for (int j = 0; j <= cfg.truncation_max_level; ++j) {
        const double k = std::ldexp(s, j);
        auto cur = eval(truncate(alpha, k));
        if (j > 0 && std::abs(cur.value - prev.value) < cfg.truncation_tol) {
            cur.err_est += std::abs(cur.value - prev.value);
            return std::make_pair(cur, k);
        }
        prev = cur;
    }
    std::ostringstream msg;
    msg << what << ": truncations did not settle to " << cfg.truncation_tol << " by k = "
        << std::ldexp(s, cfg.truncation_max_level);
    throw LimitFailure(msg.str(), prev.value, prev.value);
}

}  // namespace

std::string to_string(CharfnMethod m) {
    switch (m) {
        case CharfnMethod::Exact: return "exact";
        case CharfnMethod::PvLine: return "pv-line";
        case CharfnMethod::LoopContour: return "loop-contour";
        case CharfnMethod::TruncationLimit: return "truncation-limit";
    }
    return "unknown";
}

CharfnResult mean_charfn(double t, const ParameterMeasure& alpha, const QuadratureConfig& cfg,
                         const CharfnOptions& opts) {
    require_finite_log_moment(alpha, cfg);
    if (t == 0.0 || alpha.is_degenerate() || alpha.hull().bounded()) return bounded_charfn(t, alpha, cfg, opts);
    auto [r, k] = truncation_limit(alpha, cfg, [&](const ParameterMeasure& ak) { return bounded_charfn(t, ak, cfg, opts); },
                                   "mean_charfn");
    r.method = CharfnMethod::TruncationLimit;
    r.k_final = k;
    return r;
}

cplx confluent_phi(std::span<const double> b, double a, std::span<const double> x, double t,
                   const QuadratureConfig& cfg) {
    if (b.size() != x.size() || b.empty()) throw InvalidArgument("confluent_phi: b and x must have equal nonzero length");
    std::vector<Atom> atoms;
    double sb = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k) {
        if (!(b[k] > 0.0)) throw InvalidArgument("confluent_phi: b must be positive");
        atoms.push_back({x[k], b[k]});
        sb += b[k];
    }
    if (sb > a * (1.0 + 1e-15)) throw InvalidArgument("confluent_phi: |b| must not exceed a");
    if (a - sb > 1e-15 * a) atoms.push_back({0.0, a - sb});
    return mean_charfn(t, ParameterMeasure::discrete(std::move(atoms)), cfg).value;
}

double functional_mean_density(const ParameterMeasure& alpha, const Transform& f, double xi,
                               const QuadratureConfig& cfg) {
    const ParameterMeasure img = pushforward(alpha, f, cfg.grid_level);
    require_finite_log_moment(img, cfg);
    return mean_density(img, xi, cfg).value;
}

CharfnResult functional_mean_charfn(const ParameterMeasure& alpha, const Transform& f, double t,
                                    const QuadratureConfig& cfg) {
    return mean_charfn(t, pushforward(alpha, f, cfg.grid_level), cfg);
}

cplx joint_stieltjes(std::span<const double> t, const std::vector<std::function<double(double)>>& f,
                     const ParameterMeasure& alpha, double c, const QuadratureConfig& cfg) {
    if (t.size() != f.size() || t.empty()) throw InvalidArgument("joint_stieltjes: t and f must have equal nonzero length");
    if (!(c > 0.0)) throw InvalidArgument("joint_stieltjes: c must be positive");
    if (std::all_of(t.begin(), t.end(), [](double v) { return v == 0.0; })) return 1.0;
    std::vector<double> tv(t.begin(), t.end());
    const Transform h = Transform::general([tv, f](double x) {
        double s = 0.0;
        for (std::size_t j = 0; j < tv.size(); ++j) s += tv[j] * f[j](x);
        return s;
    });
    return lauricella_stieltjes(1.0, pushforward(alpha, h, cfg.grid_level), c, cfg);
}

namespace {

// Laplace transform E exp(-M) of the mean M of h against the Dirichlet process, on the PV line.
double laplace_of_mean(const ParameterMeasure& alpha, const RealFn& h, double gamma, double core,
                       const QuadratureConfig& cfg, double& err) {
    const double a = alpha.total_mass();
    auto g = [&](cplx z) { return std::exp(z - a * std::log(z) - zeta(1.0 / z, alpha, h, cfg)); };
    const PvResult r = pv_vertical_line(g, gamma, cfg, core);
    const double pref = std::exp(std::lgamma(a)) / (2.0 * M_PI);
    err = pref * r.err_est;
    return pref * (r.value / kI).real();
}

VarianceMgfResult bounded_variance_mgf(double t, const ParameterMeasure& alpha, const QuadratureConfig& cfg) {
    VarianceMgfResult out;
    if (t == 0.0 || alpha.is_degenerate()) return out;
    const Interval hull = alpha.hull();
    const double st = std::sqrt(t);
    auto at_node = [&](double y, double& err) {
        const RealFn h = [=](double x) { return t * x * x - y * st * x; };
        // sup over the hull of y sqrt(t) x - t x^2, a concave quadratic
        const double xv = std::clamp(y / (2.0 * st), hull.lo, hull.hi);
        const double sup = std::max({-h(xv), -h(hull.lo), -h(hull.hi)});
        const double inf = std::min(-h(hull.lo), -h(hull.hi));
        const double gamma = std::max(sup, 0.0) + 1.0;
        return laplace_of_mean(alpha, h, gamma, gamma - std::min(inf, 0.0), cfg, err);
    };
    double prev = NAN;
    for (int n : {16, 32, 64, 128}) {
        const std::vector<QuadNode> rule = gauss_hermite(n);
        std::vector<double> vals(rule.size()), errs(rule.size());
        parallel_for(rule.size(), [&](std::size_t i) { vals[i] = at_node(2.0 * rule[i].x, errs[i]); });
        double v = 0.0, e = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            v += rule[i].w * vals[i];
            e += rule[i].w * errs[i];
        }
        v /= std::sqrt(M_PI);
        e /= std::sqrt(M_PI);
        out.hermite_nodes = n;
        if (std::isfinite(prev) && std::abs(v - prev) <= std::max(1e-9, 1e-8 * std::abs(v))) {
            out.value = v;
            out.err_est = e + std::abs(v - prev);
            return out;
        }
        out.value = v;
        out.err_est = e + (std::isfinite(prev) ? std::abs(v - prev) : INFINITY);
        prev = v;
    }
    std::ostringstream msg;
    msg << "variance_mgf: Gauss-Hermite sums did not settle (last change " << out.err_est << ")";
    throw ToleranceFailure(msg.str(), out.value, out.err_est);
}

}  // namespace

VarianceMgfResult variance_mgf(double t, const ParameterMeasure& alpha, const QuadratureConfig& cfg) {
    if (!(t >= 0.0)) throw InvalidArgument("variance_mgf: t must be nonnegative");
    if (t == 0.0 || alpha.is_degenerate()) return {};
    require_finite_log_moment(alpha, cfg);
    if (alpha.hull().bounded()) return bounded_variance_mgf(t, alpha, cfg);
    auto [r, k] = truncation_limit(alpha, cfg, [&](const ParameterMeasure& ak) { return bounded_variance_mgf(t, ak, cfg); },
                                   "variance_mgf");
    r.k_final = k;
    return r;
}

}  // namespace dpmeans
