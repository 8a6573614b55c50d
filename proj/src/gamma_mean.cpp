#include "dpmeans/gamma_mean.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "dpmeans/identities.hpp"
#include "dpmeans/quadrature.hpp"
#include "dpmeans/zeta.hpp"

namespace dpmeans {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_off_origin(const ParameterMeasure& alpha) {
    const double a = alpha.total_mass();
    if (!(alpha.mass_at(0.0) < a))
        throw Refused("the gamma-process mean has no density when all of alpha sits at 0");
}

// Laplace transform of the image measure y = 1/x, on the side of sign(u).
struct ThorinLaplace {
    std::vector<Atom> pos;
    std::vector<Atom> neg;

    explicit ThorinLaplace(const ParameterMeasure& alpha, int grid_level) {
        const ThorinResult th = thorin_measure(alpha, grid_level);
        if (!th.measure) return;
        for (const Atom& at : th.measure->atoms()) (at.x > 0.0 ? pos : neg).push_back(at);
    }

    double operator()(double u) const {
        double s = 0.0;
        if (u > 0.0)
            for (const Atom& at : pos) s += at.mass * std::exp(-u * at.x);
        else if (u < 0.0)
            for (const Atom& at : neg) s += at.mass * std::exp(-u * at.x);
        return s;
    }

    bool empty() const { return pos.empty() && neg.empty(); }
};

double g_from(const ThorinLaplace& L, double x) {
    if (x == 0.0) return 0.0;
    return std::abs(x) / (1.0 + x * x) * L(x);
}

double one_side(const std::function<double(double)>& h, int dir, const QuadratureConfig& cfg) {
    return integrate_half_line([&](double u) { return cplx(h(u), 0.0); }, 0.0, dir, cfg).value.real();
}

}  // namespace

cplx gamma_charfn(double t, const ParameterMeasure& alpha, const QuadratureConfig& cfg) {
    require_finite_log_moment(alpha, cfg);
    if (t == 0.0) return 1.0;
    return std::exp(-zeta(-kI * t, alpha, cfg));
}

DensityTable gamma_mean_table(const ParameterMeasure& alpha, const QuadratureConfig& cfg) {
    require_off_origin(alpha);
    if (alpha.is_degenerate()) return {};
    return mean_law_table(alpha, cfg);
}

GammaMeanValue gamma_mean_density(double x, const ParameterMeasure& alpha, const DensityTable& mean_table,
                                  const QuadratureConfig& cfg, double tol) {
    require_off_origin(alpha);
    const double a = alpha.total_mass();
    const double lg = std::lgamma(a);
    const bool right = x > 0.0;
    if (alpha.is_degenerate()) {
        const double c = alpha.atoms().front().x;
        if ((c > 0.0) != right) return {0.0, 0.0};
        return {std::pow(std::abs(x), a - 1.0) * std::exp(-a * std::log(std::abs(c)) - x / c - lg), 0.0};
    }
    if (mean_table.abscissae.empty()) throw InvalidArgument("gamma_mean_density: empty mean-law table");
    const double pref = std::pow(std::abs(x), a - 1.0) * std::exp(-lg);
    if (pref == 0.0) return {0.0, 0.0};
    auto h = [&](double y) -> cplx {
        if (right ? !(y > 0.0) : !(y < 0.0)) return 0.0;
        return std::exp(-a * std::log(std::abs(y)) - x / y);
    };
    const TableIntegral r = table_integral(mean_table, h, cfg);
    const GammaMeanValue v{pref * r.value.real(), pref * r.err_est};
    if (!(v.err_est <= tol * (1.0 + std::abs(v.value)))) {
        std::ostringstream msg;
        msg << "gamma_mean_density: mixture error " << v.err_est << " at x = " << x << " exceeds the tolerance";
        throw ToleranceFailure(msg.str(), v.value, v.err_est);
    }
    return v;
}

GammaMeanValue gamma_mean_cdf(double x, const ParameterMeasure& alpha, const DensityTable& mean_table,
                              const QuadratureConfig& cfg) {
    require_off_origin(alpha);
    const double a = alpha.total_mass();
    // P(T y <= x) for T ~ Gamma(a)
    auto kernel = [&](double y) -> double {
        if (y == 0.0) return x >= 0.0 ? 1.0 : 0.0;
        const double z = x / y;
        if (y > 0.0) return z <= 0.0 ? 0.0 : boost::math::gamma_p(a, std::min(z, 1e300));
        return z <= 0.0 ? 1.0 : boost::math::gamma_q(a, std::min(z, 1e300));
    };
    if (alpha.is_degenerate()) return {kernel(alpha.atoms().front().x), 0.0};
    if (mean_table.abscissae.empty()) throw InvalidArgument("gamma_mean_cdf: empty mean-law table");
    const TableIntegral r = table_integral(mean_table, [&](double y) { return cplx(kernel(y), 0.0); }, cfg);
    return {r.value.real(), r.err_est};
}

double levy_g(double x, const ParameterMeasure& alpha, const QuadratureConfig& cfg) {
    return g_from(ThorinLaplace(alpha, cfg.grid_level), x);
}

LevyTriple levy_triple(const ParameterMeasure& alpha, const QuadratureConfig& cfg) {
    require_finite_log_moment(alpha, cfg);
    auto L = std::make_shared<const ThorinLaplace>(alpha, cfg.grid_level);
    LevyTriple tr;
    tr.g = [L](double x) { return g_from(*L, x); };
    if (L->empty()) return tr;
    for (int dir : {1, -1}) {
        const double d = one_side([&](double u) { return (*L)(u) / (1.0 + u * u); }, dir, cfg);
        const double m = one_side([&](double u) { return tr.g(u); }, dir, cfg);
        tr.drift += dir * d;
        tr.abs_moment += d;
        tr.G_total += m;
    }
    if (!std::isfinite(tr.G_total) || !std::isfinite(tr.abs_moment))
        throw Indeterminate("levy_triple: the weight function is not integrable");
    return tr;
}

cplx levy_reconstruct_charfn(double t, const LevyTriple& triple, const QuadratureConfig& cfg) {
    if (t == 0.0) return 1.0;
    cplx expo = kI * triple.drift * t;
    for (int dir : {1, -1}) {
        auto f = [&](double u) -> cplx {
            if (u == 0.0) return 0.0;
            const double g = triple.g(u);
            if (g == 0.0) return 0.0;
            const double s = std::sin(0.5 * t * u);
            const cplx bracket(-2.0 * s * s, std::sin(t * u) - t * u / (1.0 + u * u));
            return bracket * ((1.0 + u * u) / (u * u) * g);
        };
        expo += integrate_half_line(f, 0.0, dir, cfg).value;
    }
    return std::exp(expo);
}

cplx levy_reconstruct_charfn(double t, const ParameterMeasure& alpha, const QuadratureConfig& cfg) {
    if (t == 0.0) return 1.0;
    return levy_reconstruct_charfn(t, levy_triple(alpha, cfg), cfg);
}

}  // namespace dpmeans
