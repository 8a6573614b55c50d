#include "dpmeans/zeta.hpp"

#include <cmath>
#include <sstream>

namespace dpmeans {

namespace {

constexpr double kGaussianReach = 40.0;

// H(z) = (1+z) log(1+z) - z, with its Taylor series near 0.
cplx h_antideriv(cplx z) {
    if (std::abs(z) < 1e-3) {
        cplx term = z * z;
        cplx sum{0.0, 0.0};
        for (int n = 2; n < 12; ++n) {
            sum += term / (double(n) * (n - 1));
            term *= -z;
        }
        return sum;
    }
    const cplx u = 1.0 + z;
    return u * principal_log(u) - z;
}

double h_real(double z) {
    if (std::abs(z) < 1e-3) {
        double term = z * z;
        double sum = 0.0;
        for (int n = 2; n < 12; ++n) {
            sum += term / (double(n) * (n - 1));
            term *= -z;
        }
        return sum;
    }
    const double u = 1.0 + z;
    return u == 0.0 ? -z : u * std::log(std::abs(u)) - z;
}

// Integral of log(1 + w x) dx / (hi - lo) over (lo, hi).
cplx uniform_zeta(cplx w, double lo, double hi) {
    const double len = hi - lo;
    if (w.imag() != 0.0) return (h_antideriv(w * hi) - h_antideriv(w * lo)) / (w * len);
    const double r = w.real();
    if (r == 0.0) return 0.0;
    const double re = (h_real(r * hi) - h_real(r * lo)) / (r * len);
    // Part of (lo, hi) where 1 + r x < 0.
    const double x0 = -1.0 / r;
    double neg = 0.0;
    if (r > 0.0) neg = std::clamp(x0, lo, hi) - lo;
    else neg = hi - std::clamp(x0, lo, hi);
    return {re, M_PI * neg / len};
}

cplx cauchy_zeta(cplx w, const CauchyLaw& c) {
    const double s = 1.0 / c.sigma;
    if (w.imag() > 0.0) return principal_log(1.0 + w * cplx(c.theta, -s));
    if (w.imag() < 0.0) return principal_log(1.0 + w * cplx(c.theta, s));
    const double r = w.real();
    if (r == 0.0) return 0.0;
    const double re = 0.5 * std::log((1.0 + r * c.theta) * (1.0 + r * c.theta) + r * r * s * s);
    const double F = 0.5 + std::atan(c.sigma * (-1.0 / r - c.theta)) / M_PI;
    const double p = r > 0.0 ? F : 1.0 - F;
    return {re, M_PI * p};
}

cplx quad_checked(const ComplexFn& g, double lo, double hi, const QuadratureConfig& cfg, std::span<const double> bp) {
    QuadResult r = gauss_kronrod(g, lo, hi, cfg, bp);
    if (!r.converged) {
        std::ostringstream msg;
        msg << "zeta: quadrature over the density did not converge (err " << r.err_est << ")";
        throw ToleranceFailure(msg.str(), r.value, r.err_est);
    }
    return r.value;
}

cplx continuous_zeta(cplx w, const ContinuousPart& c, const RealFn* f, const QuadratureConfig& cfg) {
    if (w == 0.0) return 0.0;
    const bool ident = f == nullptr;
    auto fx = [&](double x) { return ident ? x : (*f)(x); };
    if (ident && c.full_window()) {
        if (const auto* cl = std::get_if<CauchyLaw>(&c.law)) return c.scale * cauchy_zeta(w, *cl);
        if (const auto* ul = std::get_if<UniformLaw>(&c.law)) return c.scale * uniform_zeta(w, ul->lo, ul->hi);
    }
    if (const auto* ul = std::get_if<UniformLaw>(&c.law); ul && ident) {
        const double lo = std::max(ul->lo, c.window.lo);
        const double hi = std::min(ul->hi, c.window.hi);
        if (!(hi > lo)) return 0.0;
        return c.scale * (hi - lo) / (ul->hi - ul->lo) * uniform_zeta(w, lo, hi);
    }
    // Real location of the zero of 1 + w x, used as a breakpoint.
    const double xstar = (-1.0 / w).real();
    const Interval sup = c.support();
    if (const auto* cl = std::get_if<CauchyLaw>(&c.law)) {
        const double p0 = std::atan(cl->sigma * (sup.lo - cl->theta));
        const double p1 = std::atan(cl->sigma * (sup.hi - cl->theta));
        auto g = [&](double phi) {
            const double x = cl->theta + std::tan(phi) / cl->sigma;
            return principal_log(1.0 + w * fx(x)) / M_PI;
        };
        double bp[1] = {std::atan(cl->sigma * (xstar - cl->theta))};
        return c.scale * quad_checked(g, p0, p1, cfg, ident ? std::span<const double>(bp) : std::span<const double>());
    }
    double lo = sup.lo;
    double hi = sup.hi;
    if (const auto* gl = std::get_if<GaussianLaw>(&c.law)) {
        lo = std::max(lo, gl->theta - kGaussianReach * gl->sd);
        hi = std::min(hi, gl->theta + kGaussianReach * gl->sd);
    }
    auto g = [&](double x) {
        const double d = c.density(x);
        if (d == 0.0) return cplx(0.0, 0.0);
        return principal_log(1.0 + w * fx(x)) * d;
    };
    std::vector<double> bp;
    if (ident) bp.push_back(xstar);
    if (const auto* t = std::get_if<TabulatedLaw>(&c.law)) {
        if (t->x.size() <= 256) bp.insert(bp.end(), t->x.begin(), t->x.end());
    }
    if (std::isfinite(lo) && std::isfinite(hi)) return quad_checked(g, lo, hi, cfg, bp);
    // Unbounded custom density: map each half line onto [0, 1).
    const double mid = std::isfinite(lo) ? lo : (std::isfinite(hi) ? hi : 0.0);
    cplx v{0.0, 0.0};
    auto half = [&](int dir) {
        auto mapped = [&](double s) -> cplx {
            const double r = 1.0 - s;
            const cplx val = g(mid + dir * s / r);
            return val == 0.0 ? val : val / (r * r);
        };
        return quad_checked(mapped, 0.0, 1.0, cfg, {});
    };
    if (mid > lo) v += half(-1);
    if (mid < hi) v += half(+1);
    return v;
}

cplx zeta_impl(cplx w, const ParameterMeasure& alpha, const RealFn* f, const QuadratureConfig& cfg) {
    cplx s{0.0, 0.0};
    for (const Atom& a : alpha.atoms()) {
        const double fx = f ? (*f)(a.x) : a.x;
        const cplx z = 1.0 + w * fx;
        if (z == 0.0) {
            std::ostringstream msg;
            msg << "zeta: 1 + w f(x) vanishes at the atom x = " << a.x;
            throw SingularInput(msg.str());
        }
        s += a.mass * principal_log(z);
    }
    if (alpha.continuous()) s += continuous_zeta(w, *alpha.continuous(), f, cfg);
    return s;
}

}  // namespace

cplx principal_log(cplx z) {
    if (z.imag() == 0.0) z = cplx(z.real(), 0.0);
    return std::log(z);
}

cplx zeta(cplx w, const ParameterMeasure& alpha, const QuadratureConfig& cfg) {
    return zeta_impl(w, alpha, nullptr, cfg);
}

cplx zeta(cplx w, const ParameterMeasure& alpha, const RealFn& f, const QuadratureConfig& cfg) {
    return zeta_impl(w, alpha, &f, cfg);
}

}  // namespace dpmeans
