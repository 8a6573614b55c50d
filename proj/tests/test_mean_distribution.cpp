#include "doctest.h"

#include <cmath>

#include <boost/math/special_functions/beta.hpp>

#include "dpmeans/mc_oracle.hpp"
#include "dpmeans/mean_distribution.hpp"

using namespace dpmeans;
using doctest::Approx;

namespace {

const QuadratureConfig cfg;

ParameterMeasure two_point(double x1, double b, double x0, double rest) {
    return ParameterMeasure::discrete({{x1, b}, {x0, rest}});
}

// Beta(p, q) density through log-gamma.
double beta_pdf(double p, double q, double x) {
    return std::exp(std::lgamma(p + q) - std::lgamma(p) - std::lgamma(q) + (p - 1) * std::log(x) +
                    (q - 1) * std::log1p(-x));
}

double cauchy_pdf(double theta, double sigma, double x) {
    return sigma / (M_PI * (1.0 + sigma * sigma * (x - theta) * (x - theta)));
}

}  // namespace

TEST_CASE("regime selection") {
    CHECK(regime_of(1.0) == Regime::AtOne);
    CHECK(regime_of(1.0 + 5e-13) == Regime::AtOne);
    CHECK(regime_of(1.0 + 1e-9) == Regime::AboveOne);
    CHECK(regime_of(0.999) == Regime::BelowOne);
}

TEST_CASE("Cauchy parameter measures are fixed points") {
    const auto c = ParameterMeasure::cauchy(0.0, 1.0);
    CHECK(mean_density(c, 0.0, cfg).value == Approx(1.0 / M_PI).epsilon(1e-10));
    const double grid[] = {-1.0, 0.0, 1.0};
    const DensityTable t = density_grid(c, grid, cfg);
    CHECK(t.failed.empty());
    CHECK(t.density[0] == Approx(0.5 / M_PI).epsilon(1e-10));
    CHECK(t.density[1] == Approx(1.0 / M_PI).epsilon(1e-10));
    CHECK(t.density[2] == Approx(0.5 / M_PI).epsilon(1e-10));

    std::vector<double> g1, g2;
    for (int i = 0; i < 21; ++i) {
        g1.push_back(-5.0 + 0.5 * i);
        g2.push_back(2.0 + (-5.0 + 0.5 * i) / 0.5);
    }
    CHECK(cauchy_fixed_point_residual(0.0, 1.0, g1, cfg) <= 1e-4);
    CHECK(cauchy_fixed_point_residual(2.0, 0.5, g2, cfg) <= 1e-4);
}

TEST_CASE("a Gaussian parameter measure is not a fixed point") {
    const auto g = ParameterMeasure::gaussian(1.0, 0.0, 1.0);
    double worst = 0.0;
    for (double x : {-1.5, -0.5, 0.0, 0.7, 2.0}) {
        const double own = std::exp(-0.5 * x * x) / std::sqrt(2 * M_PI);
        worst = std::max(worst, std::abs(mean_density(g, x, cfg).value - own));
    }
    CHECK(worst > 0.01);
}

TEST_CASE("two-point measures give Beta laws in all three regimes") {
    struct Case {
        double a, b, tol;
    };
    for (const Case& c : {Case{2.0, 1.0, 1e-9}, Case{3.0, 1.5, 1e-9}, Case{1.0, 0.5, 1e-9}, Case{0.8, 0.4, 1e-5},
                          Case{0.5, 0.25, 1e-5}}) {
        const auto alpha = two_point(1.0, c.b, 0.0, c.a - c.b);
        for (double x : {0.05, 0.2, 0.5, 0.77, 0.95}) {
            const DensityValue v = mean_density(alpha, x, cfg);
            CAPTURE(c.a);
            CAPTURE(x);
            CHECK(std::abs(v.value - beta_pdf(c.b, c.a - c.b, x)) <= c.tol);
            CHECK(std::abs(v.value - beta_pdf(c.b, c.a - c.b, x)) <= std::max(v.err_est, 1e-12) * 10);
        }
    }
    // Beta(0.4, 0.4) at the centre: 2^{1.2} Gamma(0.8) / Gamma(0.4)^2
    const double centre = std::exp(1.2 * std::log(2.0) + std::lgamma(0.8) - 2 * std::lgamma(0.4));
    CHECK(mean_density(two_point(1.0, 0.4, 0.0, 0.4), 0.5, cfg).value == Approx(centre).epsilon(1e-6));
}

TEST_CASE("saltus flag marks atoms of mass at least one above a = 1") {
    CHECK(mean_density(two_point(1.0, 1.5, 0.0, 1.5), 0.5, cfg).saltus_flag);
    CHECK_FALSE(mean_density(two_point(1.0, 0.9, 0.0, 0.9), 0.5, cfg).saltus_flag);
    CHECK_FALSE(mean_density(two_point(1.0, 0.5, 0.0, 0.3), 0.5, cfg).saltus_flag);
}

TEST_CASE("interval probabilities") {
    CHECK(mean_cdf_interval(ParameterMeasure::cauchy(0.0, 1.0), -1.0, 1.0, cfg).value == Approx(0.5).epsilon(1e-9));
    CHECK(mean_cdf_interval(two_point(1.0, 1.0, 0.0, 1.0), 0.0, 0.5, cfg).value == Approx(0.5).epsilon(1e-9));
    const auto half = two_point(1.0, 0.25, 0.0, 0.25);
    CHECK(mean_cdf_interval(half, 0.0, 0.5, cfg).value == Approx(0.5).epsilon(1e-9));
    CHECK(mean_cdf_interval(half, 0.0, 0.3, cfg).value == Approx(boost::math::ibeta(0.25, 0.25, 0.3)).epsilon(1e-8));
    // a > 1 with an interior bracket
    const auto b = two_point(1.0, 1.5, 0.0, 2.0);
    const double exact = boost::math::ibeta(1.5, 2.0, 0.6) - boost::math::ibeta(1.5, 2.0, 0.2);
    CHECK(mean_cdf_interval(b, 0.2, 0.6, cfg).value == Approx(exact).epsilon(1e-8));
    CHECK(mean_cdf_interval(b, 2.0, 3.0, cfg).value == 0.0);
    CHECK_THROWS_AS(mean_cdf_interval(b, 0.5, 0.5, cfg), InvalidArgument);
}

TEST_CASE("uniform parameter measure closed form") {
    // regression value, frozen from the generic inversion path
    CHECK(uniform_closed_form(2.0, 0.5, cfg) == Approx(2.22627244576729803).epsilon(1e-10));
    const auto u = ParameterMeasure::uniform01(2.0);
    for (double x : {0.2, 0.5, 0.7}) CHECK(mean_density(u, x, cfg).value == Approx(uniform_closed_form(2.0, x, cfg)).epsilon(1e-8));
    CHECK(mean_density(ParameterMeasure::uniform01(3.5), 0.3, cfg).value ==
          Approx(uniform_closed_form(3.5, 0.3, cfg)).epsilon(1e-8));
    for (double x : {0.05, 0.2, 0.35}) {
        CHECK(uniform_closed_form(2.0, x, cfg) == Approx(uniform_closed_form(2.0, 1.0 - x, cfg)).epsilon(1e-9));
        CHECK(uniform_closed_form(1.5, x, cfg) == Approx(uniform_closed_form(1.5, 1.0 - x, cfg)).epsilon(1e-9));
    }
    // trapezoid mass over (0, 1) with the vanishing end values, refined
    for (int n : {9, 19, 39}) {
        double m = 0.0;
        for (int i = 1; i <= n; ++i) m += uniform_closed_form(2.0, double(i) / (n + 1), cfg) / (n + 1);
        CAPTURE(n);
        CHECK(m >= 0.98);
        CHECK(m <= 1.02);
    }
    CHECK_THROWS_AS(uniform_closed_form(0.5, 0.5, cfg), InvalidArgument);
}

TEST_CASE("symmetry residual") {
    std::vector<double> grid;
    for (int i = 1; i <= 9; ++i) grid.push_back(0.1 * i - 0.05);
    CHECK(symmetry_residual(two_point(1.0, 1.0, -1.0, 1.0), grid, cfg) <= 1e-8);
    CHECK(symmetry_residual(ParameterMeasure::cauchy(0.0, 0.7), grid, cfg) <= 1e-8);
    // delta_2 + delta_{-1} gives Uniform(-1, 2): symmetric on |xi| < 1 only
    const double wide[] = {0.25, 0.75, 1.25, 1.75};
    CHECK(symmetry_residual(two_point(2.0, 1.0, -1.0, 1.0), grid, cfg) <= 1e-8);
    CHECK(symmetry_residual(two_point(2.0, 1.0, -1.0, 1.0), wide, cfg) > 0.01);
}

TEST_CASE("refusals") {
    CHECK_THROWS_AS(mean_density(ParameterMeasure::discrete({{0.3, 2.0}}), 0.3, cfg), Refused);
    const auto b = two_point(1.0, 1.0, 0.0, 1.0);
    CHECK_THROWS_AS(mean_density(b, 1e-4, cfg), BoundaryError);
    CHECK_THROWS_AS(mean_density(b, 1.0 - 5e-4, cfg), BoundaryError);
    CHECK_NOTHROW(mean_density(b, 2e-3, cfg));
    const double grid[] = {0.0, 0.5};
    const DensityTable t = density_grid(b, grid, cfg);
    REQUIRE(t.failed.size() == 1);
    CHECK(t.failed[0] == 0);
    CHECK(std::isnan(t.density[0]));
    CHECK(t.density[1] == Approx(1.0));
}

TEST_CASE("Cauchy transform of the mean law") {
    const auto b = two_point(1.0, 1.0, 0.0, 1.0);
    for (cplx z : {cplx(0.3, 0.2), cplx(-1.0, 0.01), cplx(2.0, 3.0)}) {
        const cplx exact = std::log((1.0 - z) / (-z));
        CHECK(std::abs(mean_cauchy_transform(b, z, cfg) - exact) < 1e-11);
    }
    // a one-sided unbounded hull on the negative axis goes through a reflected canonical form
    const auto e = ParameterMeasure::custom_density([](double x) { return std::exp(-x); }, Interval{0.0, INFINITY}, 1.5);
    const auto r = ParameterMeasure::custom_density([](double x) { return std::exp(x); }, Interval{-INFINITY, 0.0}, 1.5);
    for (cplx z : {cplx(0.7, 0.3), cplx(2.0, 0.05)}) {
        const cplx ze = mean_cauchy_transform(e, z, cfg);
        const cplx zr = mean_cauchy_transform(r, -std::conj(z), cfg);
        CHECK(std::abs(ze + std::conj(zr)) < 1e-9);
    }
    CHECK(mean_density(r, -0.8, cfg).value == Approx(mean_density(e, 0.8, cfg).value).epsilon(1e-9));
}

TEST_CASE("mean-law invariants") {
    SUBCASE("support") {
        const auto b = ParameterMeasure::discrete({{0.0, 0.7}, {0.4, 1.1}, {1.0, 0.6}});
        for (double x : {-0.5, -0.05, 1.05, 2.0}) {
            const DensityValue v = mean_density(b, x, cfg);
            CHECK(v.value <= std::max(v.err_est, 1e-12));
        }
    }
    SUBCASE("normalization and mean of the mean") {
        for (const auto& alpha : {ParameterMeasure::discrete({{0.0, 0.7}, {0.4, 1.1}, {1.0, 0.6}}),
                                  ParameterMeasure::discrete({{-1.0, 0.3}, {0.5, 0.2}, {2.0, 0.2}}),
                                  ParameterMeasure::uniform01(2.0), ParameterMeasure::cauchy(1.0, 2.0),
                                  truncate(ParameterMeasure::gaussian(2.0, 0.0, 1.0), 2.0)}) {
            const DensityTable t = mean_law_table(alpha, cfg);
            CHECK(t.failed.empty());
            // below a = 1 the densities come from differenced interval probabilities
            const double mass_tol = t.regime == Regime::BelowOne ? 1e-5 : 1e-6;
            CHECK(std::abs(t.total_mass() - 1.0) <= mass_tol);
            const double est = table_integral(t, [](double) { return cplx(1.0, 0.0); }, cfg).err_est;
            CHECK(std::abs(t.total_mass() - 1.0) <= std::max(3.0 * est, 1e-9));
            for (std::size_t i = 0; i < t.density.size(); ++i) CHECK(t.density[i] >= -t.err_est[i]);
            if (alpha.total_mass() > 1.0) {
                const double first = table_integral(t, [](double x) { return cplx(x, 0.0); }, cfg).value.real();
                const double prior = integrate_measure(alpha, [](double x) { return x; }, cfg) / alpha.total_mass();
                CHECK(first == Approx(prior).epsilon(1e-8));
            }
        }
    }
    SUBCASE("affine equivariance") {
        const auto b = ParameterMeasure::discrete({{0.0, 0.7}, {0.4, 1.1}, {1.0, 0.6}});
        for (auto [s, c] : {std::pair{2.0, 1.0}, std::pair{-0.5, 3.0}}) {
            const auto img = pushforward(b, Transform::linear(s, c));
            for (double x : {0.1, 0.3, 0.55, 0.9}) {
                CHECK(mean_density(img, s * x + c, cfg).value * std::abs(s) ==
                      Approx(mean_density(b, x, cfg).value).epsilon(1e-9));
            }
        }
    }
    SUBCASE("two-point measures on a general interval") {
        const double x0 = -2.0, x1 = 3.0, b = 1.3, a = 2.1;
        const auto alpha = two_point(x1, b, x0, a - b);
        double worst = 0.0;
        for (int i = 0; i <= 18; ++i) {
            const double u = 0.05 + 0.05 * i;
            const double m = mean_density(alpha, x0 + u * (x1 - x0), cfg).value;
            worst = std::max(worst, std::abs(m * (x1 - x0) - beta_pdf(b, a - b, u)));
        }
        CHECK(worst <= 1e-8);
    }
}

TEST_CASE("density grid against the stick-breaking kernel density") {
    const auto g = ParameterMeasure::gaussian(2.0, 0.0, 1.0);
    std::vector<double> grid;
    for (int i = 0; i < 41; ++i) grid.push_back(-3.0 + 0.15 * i);
    const DensityTable t = density_grid(g, grid, cfg);
    REQUIRE(t.failed.empty());
    const std::vector<double> s = sample_mean(g, McConfig{});
    const double h = silverman_bandwidth(s);
    // kernel estimates are compared with the kernel-smoothed density
    const DensityTable law = mean_law_table(g, cfg);
    // In the sparse tails the empirical standard error understates the spread; the
    // model standard error sqrt((E K^2 - (E K)^2) / n) is used when larger.
    int outside = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Estimate k = kde(s, grid[i], h);
        auto kernel = [&](double x) {
            const double z = (grid[i] - x) / h;
            return std::exp(-0.5 * z * z) / (h * std::sqrt(2 * M_PI));
        };
        const double smoothed = table_integral(law, [&](double x) { return cplx(kernel(x), 0.0); }, cfg).value.real();
        const double second = table_integral(law, [&](double x) { return cplx(kernel(x) * kernel(x), 0.0); }, cfg).value.real();
        const double se = std::max(k.std_err, std::sqrt((second - smoothed * smoothed) / double(s.size())));
        if (std::abs(k.value.real() - smoothed) > 3.0 * se) ++outside;
        CHECK(std::abs(t.density[i] - smoothed) < 0.02);
    }
    CHECK(outside == 0);
}
