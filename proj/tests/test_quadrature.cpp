#include "doctest.h"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "dpmeans/contour.hpp"
#include "dpmeans/limits.hpp"
#include "dpmeans/quadrature.hpp"
#include "dpmeans/zeta.hpp"

using namespace dpmeans;
using doctest::Approx;

namespace {
const cplx I{0.0, 1.0};
const QuadratureConfig cfg;
}

TEST_CASE("gauss-kronrod integrates polynomials and smooth functions") {
    auto r = integrate([](double x) { return cplx(std::pow(x, 19), 0.0); }, 0.0, 1.0, cfg);
    CHECK(r.value.real() == Approx(1.0 / 20).epsilon(1e-14));
    auto e = integrate([](double x) { return std::exp(I * x); }, 0.0, M_PI, cfg);
    CHECK(std::abs(e.value - cplx(0.0, 2.0)) < 1e-13);
    auto l = integrate([](double x) { return cplx(std::log(x), 0.0); }, 0.0, 1.0, cfg);
    CHECK(l.value.real() == Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("gauss-kronrod reports non-convergence on a tiny budget") {
    QuadratureConfig c;
    c.max_subdivisions = 2;
    auto r = gauss_kronrod([](double x) { return cplx(1.0 / std::sqrt(std::abs(x - 0.3)), 0.0); }, 0.0, 1.0, c);
    CHECK_FALSE(r.converged);
    CHECK_THROWS_AS(integrate([](double x) { return cplx(1.0 / std::sqrt(std::abs(x - 0.3)), 0.0); }, 0.0, 1.0, c),
                    ToleranceFailure);
}

TEST_CASE("integrate_interval handles declared endpoint exponents") {
    auto one = integrate_interval([](double) { return cplx(1.0, 0.0); }, 0.0, 1.0, {}, cfg);
    CHECK(one.value.real() == Approx(1.0).epsilon(1e-15));
    auto r = integrate_interval([](double u) { return cplx(1.0 / std::sqrt(u), 0.0); }, 0.0, 1.0, {-0.5, 0.0}, cfg);
    CHECK(r.value.real() == Approx(2.0).epsilon(1e-12));
    const double b = 0.4, c = 0.7;
    auto beta = integrate_interval(
        [&](double, double from_lo, double to_hi) { return cplx(std::pow(from_lo, b - 1) * std::pow(to_hi, c - 1), 0.0); },
        0.0, 1.0, {b - 1, c - 1}, cfg);
    const double oracle = std::exp(std::lgamma(b) + std::lgamma(c) - std::lgamma(b + c));
    CHECK(beta.value.real() == Approx(oracle).epsilon(1e-11));
}

TEST_CASE("half-line integration") {
    auto r = integrate_half_line([](double x) { return cplx(std::exp(-x), 0.0); }, 0.0, +1, cfg);
    CHECK(r.value.real() == Approx(1.0).epsilon(1e-12));
    auto c = integrate_half_line([](double x) { return cplx(1.0 / (1.0 + x * x), 0.0); }, 0.0, -1, cfg);
    CHECK(c.value.real() == Approx(M_PI / 2).epsilon(1e-12));
}

TEST_CASE("fixed rules") {
    const double edges[] = {0.0, 0.5, 2.0};
    double s = 0.0;
    for (const auto& q : gauss_legendre_panels(edges, 8)) s += q.w * q.x * q.x * q.x;
    CHECK(s == Approx(4.0).epsilon(1e-14));
    double h = 0.0;
    for (const auto& q : gauss_hermite(40)) h += q.w * q.x * q.x;
    CHECK(h == Approx(std::sqrt(M_PI) / 2).epsilon(1e-12));
    // (1-x)^0.3 (1+x)^-0.6 against x^2 + 1: Beta-function moments of t = (1+x)/2
    const double al = 0.3, be = -0.6;
    double j = 0.0;
    for (const auto& q : gauss_jacobi(12, al, be)) j += q.w * (q.x * q.x + 1.0);
    auto beta_fn = [](double p, double q) { return std::exp(std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q)); };
    // x^2 + 1 = 4t^2 - 4t + 2
    const double scale = std::pow(2.0, al + be + 1.0);
    const double oracle = scale * (4.0 * beta_fn(be + 3.0, al + 1.0) - 4.0 * beta_fn(be + 2.0, al + 1.0) +
                                   2.0 * beta_fn(be + 1.0, al + 1.0));
    CHECK(j == Approx(oracle).epsilon(1e-13));
    double sym = 0.0;
    for (const auto& q : gauss_jacobi(7, -0.5, -0.5)) sym += q.w;
    CHECK(sym == Approx(M_PI).epsilon(1e-14));
}

TEST_CASE("zeta on atoms and closed forms") {
    CHECK(zeta(cplx(0.3, 2.0), ParameterMeasure::discrete({{0.0, 2.5}})) == cplx(0.0, 0.0));
    const cplx z = zeta(I, ParameterMeasure::discrete({{1.0, 1.0}}));
    CHECK(z.real() == Approx(0.5 * std::log(2.0)).epsilon(1e-15));
    CHECK(z.imag() == Approx(M_PI / 4).epsilon(1e-15));
    const auto c = ParameterMeasure::cauchy(0.0, 1.0);
    for (double t : {-3.0, -0.5, 0.7, 2.0}) {
        const cplx v = zeta(I * t, c);
        CHECK(v.real() == Approx(std::log1p(std::abs(t))).epsilon(1e-14));
        CHECK(std::abs(v.imag()) < 1e-14);
    }
    CHECK_THROWS_AS(zeta(cplx(-1.0, 0.0), ParameterMeasure::discrete({{1.0, 1.0}})), SingularInput);
}

TEST_CASE("zeta closed forms agree with quadrature against the density") {
    const auto u = ParameterMeasure::uniform01(2.0);
    const auto ut = ParameterMeasure::density_table({0.0, 1.0}, {1.0, 1.0}, 2.0);
    const auto c = ParameterMeasure::cauchy(0.5, 2.0);
    const auto ct = truncate(ParameterMeasure::cauchy(0.5, 2.0), 1e9);
    for (cplx w : {cplx(0.3, 0.2), cplx(-2.0, 1e-3), cplx(-3.0, -0.5), cplx(1e-5, 1e-6), cplx(-2.0, 0.0), cplx(0.7, 0.0)}) {
        CHECK(std::abs(zeta(w, u) - zeta(w, ut)) < 1e-9);
        CHECK(std::abs(zeta(w, c) - zeta(w, ct)) < 1e-6);
    }
}

TEST_CASE("zeta conjugate symmetry") {
    const auto a = ParameterMeasure::discrete({{-1.0, 0.5}, {2.0, 1.5}});
    const auto g = ParameterMeasure::gaussian(2.0, 0.3, 1.0);
    for (cplx w : {cplx(0.3, 0.2), cplx(-2.0, 1.0), cplx(1.0, -4.0)}) {
        CHECK(std::abs(zeta(std::conj(w), a) - std::conj(zeta(w, a))) < 1e-14);
        CHECK(std::abs(zeta(std::conj(w), g) - std::conj(zeta(w, g))) < 1e-10);
    }
}

TEST_CASE("contour integrals") {
    const Contour circle({CircularArc{0.0, 1.0, 0.0, 2 * M_PI}});
    CHECK(circle.closed());
    CHECK(std::abs(integrate_contour([](cplx) { return cplx(1.0, 0.0); }, circle, cfg).value) < 1e-14);
    CHECK(std::abs(integrate_contour([](cplx w) { return 1.0 / w; }, circle, cfg).value - 2.0 * M_PI * I) < 1e-13);
}

TEST_CASE("loop around [0,1]") {
    QuadratureConfig c;
    const Contour loop = build_loop_01(c);
    CHECK(loop.pieces().size() == 3);
    CHECK(loop.closed(1e-12));
    CHECK(loop.max_gap() < 1e-12);
    c.loop_tau = 0.0;
    CHECK_THROWS_AS(build_loop_01(c), InvalidArgument);

    CHECK(std::abs(integrate_contour([](cplx w) { return 1.0 / (w - 1.0); }, loop, cfg).value - 2.0 * M_PI * I) < 1e-12);

    const double cc = 2.0, a = 0.5;
    auto g = [&](cplx w) { return std::pow(w, cc - 1) * std::pow(w - 1.0, a - cc - 1); };
    const cplx v = integrate_contour(g, loop, cfg).value;
    const double norm = std::exp(std::lgamma(cc) - std::lgamma(cc - a + 1) - std::lgamma(a));
    CHECK(std::abs(v - 2.0 * M_PI * I * norm) < 1e-10);

    // Integrable singularity at the start and end point 0.
    const double c2 = 0.6, a2 = 0.3;
    auto g2 = [&](cplx w) { return std::pow(w, c2 - 1) * std::pow(w - 1.0, a2 - c2 - 1); };
    const cplx v2 = integrate_contour(g2, loop, cfg, {c2 - 1, c2 - 1}).value;
    const double norm2 = std::exp(std::lgamma(c2) - std::lgamma(c2 - a2 + 1) - std::lgamma(a2));
    CHECK(std::abs(v2 - 2.0 * M_PI * I * norm2) < 1e-9);
}

TEST_CASE("loop integral is unchanged when the geometry is halved") {
    QuadratureConfig c1;
    QuadratureConfig c2;
    c2.loop_eps = c1.loop_eps / 2;
    c2.loop_tau = c1.loop_tau / 2;
    auto g = [](cplx w) { return std::exp(-w * w) * std::pow(w, 1.3) * std::pow(w - 1.0, -1.7); };
    const QuadResult r1 = integrate_contour(g, build_loop_01(c1), cfg);
    const QuadResult r2 = integrate_contour(g, build_loop_01(c2), cfg);
    CHECK(std::abs(r1.value - r2.value) < 1e-9);
}

TEST_CASE("principal-value vertical lines") {
    auto r2 = pv_vertical_line([](cplx w) { return std::exp(w) / (w * w); }, 1.0, cfg);
    CHECK(std::abs(r2.value - 2.0 * M_PI * I) < 1e-8);
    auto r1 = pv_vertical_line([](cplx w) { return std::exp(w) / w; }, 1.0, cfg);
    CHECK(std::abs(r1.value - 2.0 * M_PI * I) < 1e-7);
    const double a = 1.7;
    auto ra = pv_vertical_line([&](cplx w) { return std::exp(w) * std::pow(w, -a); }, 1.0, cfg);
    CHECK(std::abs(ra.value - 2.0 * M_PI * I / std::tgamma(a)) < 1e-8);
    auto rb = pv_vertical_line([&](cplx w) { return std::exp(w) * std::pow(w, -a); }, 2.0, cfg);
    CHECK(std::abs(ra.value - rb.value) < 1e-8);
}

TEST_CASE("epsilon limits") {
    const double c = 0.37;
    auto r = stieltjes_perron_limit([&](double, double e) { return cplx(e, c + e * e); }, 0.0, cfg);
    CHECK(r.value == Approx(c / M_PI).epsilon(1e-12));
    auto q = stieltjes_perron_limit([](double l, double e) { return cplx(0.0, 1.0 / (l * l + e * e)); }, 2.0, cfg);
    CHECK(q.value == Approx(1.0 / (4 * M_PI)).epsilon(1e-10));
    const auto cauchy = ParameterMeasure::cauchy(0.0, 1.0);
    auto F = [&](double l, double e) {
        const cplx w = 1.0 / cplx(-l, -e);
        return w * std::exp(-zeta(w, cauchy));
    };
    auto m = stieltjes_perron_limit(F, 0.0, cfg);
    CHECK(m.value == Approx(1.0 / M_PI).epsilon(1e-9));
    CHECK_THROWS_AS(stieltjes_perron_limit([](double, double e) { return cplx(0.0, std::sin(1.0 / e)); }, 0.0, cfg),
                    LimitFailure);
}
