#include "dpmeans/identities.hpp"

#include <cmath>
#include <numeric>

#include "dpmeans/contour.hpp"
#include "dpmeans/quadrature.hpp"
#include "dpmeans/zeta.hpp"

namespace dpmeans {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kMaxLoopRadius = 0.9;

bool all_at_origin(const ParameterMeasure& alpha) {
    if (alpha.continuous()) return false;
    for (const Atom& at : alpha.atoms())
        if (at.x != 0.0) return false;
    return true;
}

}  // namespace

double BetaWeight::log_norm() const {
    return std::lgamma(c + a_minus_c) - std::lgamma(c) - std::lgamma(a_minus_c);
}

double BetaWeight::density(double u) const {
    return std::exp(log_norm() + (c - 1.0) * std::log(u) + (a_minus_c - 1.0) * std::log1p(-u));
}

void require_finite_log_moment(const ParameterMeasure& alpha, const QuadratureConfig& cfg) {
    if (!alpha.continuous()) return;
    if (!log_moment(alpha, cfg).finite)
        throw Refused("the log moment of the parameter measure is infinite; the mean is not defined");
}

cplx mk_transform(double t, const ParameterMeasure& alpha, const QuadratureConfig& cfg) {
    require_finite_log_moment(alpha, cfg);
    if (t == 0.0) return 1.0;
    return std::exp(-zeta(kI * t, alpha, cfg));
}

cplx lauricella_stieltjes(double t, const ParameterMeasure& alpha, double c, const QuadratureConfig& cfg) {
    if (!(c > 0.0)) throw InvalidArgument("lauricella_stieltjes: c must be positive");
    const double a = alpha.total_mass();
    if (c == a) return mk_transform(t, alpha, cfg);
    require_finite_log_moment(alpha, cfg);
    if (t == 0.0 || all_at_origin(alpha)) return 1.0;
    auto F = [&](cplx w) { return std::exp(-zeta(kI * w * t, alpha, cfg)); };
    if (c < a) {
        // F(1) plus the mixture of F(u) - F(1): the endpoint exponent at 1 rises from
        // a - c - 1 to a - c, which keeps c close to a tractable.
        const BetaWeight B{c, a - c};
        const double ln = B.log_norm();
        const cplx F1 = F(1.0);
        auto g = [&](double u, double from0, double to1) {
            const double w = std::exp(ln + (c - 1.0) * std::log(from0) + (a - c - 1.0) * std::log(to1));
            return (F(cplx(u, 0.0)) - F1) * w;
        };
        return F1 + integrate_interval(g, 0.0, 1.0, {c - 1.0, a - c}, cfg).value;
    }
    // c > a: loop around [0, 1]. F(w) is singular only on the imaginary axis, so the circle
    // about 1 may grow up to kMaxLoopRadius; it does when |w - 1|^{a - c - 1} would exceed
    // 1e3 on the default circle, since the arc integral then cancels heavily.
    QuadratureConfig lc = cfg;
    const double q = c - a + 1.0;
    const double eps = std::pow(cfg.loop_eps, -q) > 1e3 ? std::max(cfg.loop_eps, kMaxLoopRadius) : cfg.loop_eps;
    lc.loop_tau = cfg.loop_tau * eps / cfg.loop_eps;
    lc.loop_eps = eps;
    const Interval h = alpha.hull();
    const double reach = std::abs(t) * std::max(std::abs(h.lo), std::abs(h.hi));
    if (std::isfinite(reach) && reach > 0.0) {
        // singularities sit at w = i / (t x)
        lc.loop_tau = std::min(lc.loop_tau, 0.5 / reach);
    }
    const Contour loop = build_loop_01(lc);
    const double p = a - c - 1.0;
    auto g = [&](cplx w) { return F(w) * std::pow(w, c - 1.0) * std::pow(w - 1.0, p); };
    // The arc integral is small against |g| on it, so the error target follows the arc's L1 norm.
    QuadratureConfig qc = cfg;
    constexpr int kProbe = 64;
    double l1 = 0.0;
    for (int j = 0; j < kProbe; ++j) l1 += std::abs(g(1.0 + std::polar(eps, 2.0 * M_PI * (j + 0.5) / kProbe)));
    l1 *= 2.0 * M_PI * eps / kProbe;
    if (std::isfinite(l1)) qc.abs_tol = std::max(cfg.abs_tol, cfg.rel_tol * l1);
    const double e0 = std::min(c - 1.0, 0.0);
    const cplx integral = integrate_contour(g, loop, qc, {e0, e0}).value;
    const double log_pref = std::lgamma(c - a + 1.0) + std::lgamma(a) - std::lgamma(c);
    return std::exp(log_pref) * integral / (2.0 * M_PI * kI);
}

namespace {

void check_fd_args(double a, std::span<const double> b, std::span<const double> x) {
    if (b.size() != x.size() || b.empty()) throw InvalidArgument("fd_finite_check: b and x must have equal nonzero length");
    const double sb = std::accumulate(b.begin(), b.end(), 0.0);
    if (sb > a * (1.0 + 1e-15)) throw InvalidArgument("fd_finite_check: |b| must not exceed a");
    for (std::size_t k = 0; k < b.size(); ++k) {
        if (!(b[k] > 0.0)) throw InvalidArgument("fd_finite_check: b must be positive");
        if (!(x[k] >= 0.0 && x[k] < 1.0)) throw InvalidArgument("fd_finite_check: x must lie in [0, 1)");
    }
}

double product_form(std::span<const double> b, std::span<const double> x, double u) {
    double p = 1.0;
    for (std::size_t k = 0; k < b.size(); ++k) p *= std::pow(1.0 - u * x[k], -b[k]);
    return p;
}

}  // namespace

FdCheck fd_finite_check(double a, std::span<const double> b, std::span<const double> x, const QuadratureConfig&) {
    check_fd_args(a, b, x);
    // Degenerate mixture: B(du; a, 0) is the point mass at 1.
    const double v = product_form(b, x, 1.0);
    return {v, v, 0.0};
}

FdCheck fd_finite_check(double a, std::span<const double> b, std::span<const double> x, double c,
                        const QuadratureConfig& cfg, const McConfig& mc) {
    check_fd_args(a, b, x);
    if (!(c > 0.0) || c > a) throw InvalidArgument("fd_finite_check: need 0 < c <= a");
    if (c == a) return fd_finite_check(a, b, x, cfg);
    const BetaWeight B{c, a - c};
    const double ln = B.log_norm();
    auto g = [&](double u, double from0, double to1) {
        return cplx(product_form(b, x, u) * std::exp(ln + (c - 1.0) * std::log(from0) + (a - c - 1.0) * std::log(to1)), 0.0);
    };
    const cplx lhs = integrate_interval(g, 0.0, 1.0, {c - 1.0, a - c - 1.0}, cfg).value;

    std::vector<double> masses(b.begin(), b.end());
    const double rest = a - std::accumulate(b.begin(), b.end(), 0.0);
    if (rest > 1e-15 * a) masses.push_back(rest);
    const std::vector<double> w = sample_dirichlet(masses, mc);
    std::vector<double> vals(mc.n_samples);
    const std::size_t k = masses.size();
    for (std::size_t i = 0; i < mc.n_samples; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) s += w[i * k + j] * x[j];
        vals[i] = std::pow(1.0 - s, -c);
    }
    const Estimate e = sample_average(vals);
    return {lhs, e.value, e.std_err};
}

}  // namespace dpmeans
