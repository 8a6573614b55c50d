#include "doctest.h"

#include <cmath>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/expint.hpp>

#include "dpmeans/measure.hpp"
#include "dpmeans/measure_io.hpp"

using namespace dpmeans;
using doctest::Approx;

namespace {

const QuadratureConfig cfg;

double gaussian_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Midpoint sum of log(1 + tan p) over (0, pi/2) with n cells; the log singularity at pi/2
// is integrable and the sum converges like 1/n.
double cauchy_log_moment_bruteforce(int n) {
    const double h = 0.5 * M_PI / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::log1p(std::tan((i + 0.5) * h));
    return 2.0 * s * h / M_PI;
}

}  // namespace

TEST_CASE("construction and basic accessors") {
    const auto d = ParameterMeasure::discrete({{1.0, 0.5}, {-2.0, 1.5}, {1.0, 0.25}});
    CHECK(d.kind() == MeasureKind::Discrete);
    CHECK(d.atoms().size() == 2);
    CHECK(d.total_mass() == Approx(2.25));
    CHECK(d.mass_at(1.0) == Approx(0.75));
    CHECK(d.cdf(-3.0) == 0.0);
    CHECK(d.cdf(-2.0) == Approx(1.5));
    CHECK(d.cdf(5.0) == Approx(2.25));
    CHECK(d.hull().lo == -2.0);
    CHECK(d.hull().hi == 1.0);
    CHECK_FALSE(d.is_degenerate());

    CHECK_THROWS_AS(ParameterMeasure::discrete({{0.0, -1.0}}), InvalidArgument);
    CHECK_THROWS_AS(ParameterMeasure::discrete({}), InvalidArgument);
    CHECK_THROWS_AS(ParameterMeasure::cauchy(0.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(ParameterMeasure::gaussian(-1.0, 0.0, 1.0), InvalidArgument);

    const auto pt = ParameterMeasure::cauchy(2.0, INFINITY);
    CHECK(pt.is_degenerate());
    CHECK(pt.atoms().front().x == 2.0);
    CHECK(pt.total_mass() == 1.0);

    const auto c = ParameterMeasure::cauchy(1.0, 2.0);
    CHECK(c.kind() == MeasureKind::Cauchy);
    CHECK(c.total_mass() == Approx(1.0));
    CHECK(c.cdf(1.0) == Approx(0.5));
    CHECK(c.cdf(1.5) == Approx(0.75));
    CHECK(ParameterMeasure::uniform01(3.0).cdf(0.25) == Approx(0.75));
    CHECK(ParameterMeasure::gaussian(2.0, 1.0, 2.0).cdf(3.0) == Approx(2.0 * gaussian_cdf(1.0)));

    const auto t = ParameterMeasure::density_table({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0}, 4.0);
    CHECK(t.total_mass() == Approx(4.0));
    CHECK(t.cdf(1.0) == Approx(2.0));
    CHECK(t.cdf(0.5) == Approx(4.0 * 0.125));
}

TEST_CASE("distribution function is nondecreasing with the right limits") {
    const auto m = ParameterMeasure::mixed({{0.0, 0.5}, {2.0, 0.25}}, ContinuousPart{GaussianLaw{1.0, 1.0}, 1.5, Interval{}});
    double prev = 0.0;
    for (int i = -40; i <= 40; ++i) {
        const double v = m.cdf(0.2 * i);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(m.cdf(-1e6) == Approx(0.0));
    CHECK(m.cdf(1e6) == Approx(m.total_mass()));
    // right-continuity at an atom
    CHECK(m.cdf(2.0) - m.cdf(std::nextafter(2.0, 0.0)) == Approx(0.25).epsilon(1e-9));
}

TEST_CASE("log moment") {
    const auto z = log_moment(ParameterMeasure::discrete({{0.0, 2.0}}), cfg);
    CHECK(z.finite);
    CHECK(z.value == 0.0);
    const auto two = log_moment(ParameterMeasure::discrete({{1.0, 1.0}, {-3.0, 1.0}}), cfg);
    CHECK(two.finite);
    CHECK(two.value == Approx(std::log(2.0) + std::log(4.0)).epsilon(1e-14));

    // Cauchy(0,1): brute-force midpoint sums extrapolated in 1/n
    const double b1 = cauchy_log_moment_bruteforce(1 << 18);
    const double b2 = cauchy_log_moment_bruteforce(1 << 19);
    const double extrapolated = 2.0 * b2 - b1;
    const auto c = log_moment(ParameterMeasure::cauchy(0.0, 1.0), cfg);
    CHECK(c.finite);
    CHECK(c.value == Approx(extrapolated).epsilon(1e-6));
    // log 2 / 2 + 2 G / pi with Catalan's constant G
    CHECK(c.value == Approx(0.5 * std::log(2.0) + 2.0 * boost::math::constants::catalan<double>() / M_PI).epsilon(1e-10));

    // exponential density: e E1(1)
    const auto e = log_moment(ParameterMeasure::custom_density([](double x) { return std::exp(-x); }, Interval{0.0, INFINITY}, 1.0), cfg);
    CHECK(e.finite);
    CHECK(e.value == Approx(std::exp(1.0) * boost::math::expint(1, 1.0)).epsilon(1e-8));

    // density 1 / ((e + x) log^2(e + x)) on (0, inf), normalized exactly: finite mass,
    // divergent log moment
    const auto heavy = ParameterMeasure::mixed(
        {}, ContinuousPart{FunctionLaw{[](double x) {
                                           const double l = std::log(M_E + x);
                                           return 1.0 / ((M_E + x) * l * l);
                                       },
                                       Interval{0.0, INFINITY}, 1.0},
                           1.0, Interval{}});
    CHECK_FALSE(log_moment(heavy, cfg).finite);
}

TEST_CASE("truncation") {
    const auto t = truncate(ParameterMeasure::discrete({{5.0, 1.0}}), 2.0);
    REQUIRE(t.atoms().size() == 1);
    CHECK(t.atoms().front().x == 2.0);
    CHECK(t.atoms().front().mass == 1.0);

    const auto c = truncate(ParameterMeasure::cauchy(0.0, 1.0), 10.0);
    const double tail = 0.5 - std::atan(10.0) / M_PI;
    CHECK(c.total_mass() == Approx(1.0).epsilon(1e-14));
    CHECK(c.mass_at(10.0) == Approx(tail).epsilon(1e-12));
    CHECK(c.mass_at(-10.0) == Approx(tail).epsilon(1e-12));
    CHECK(c.hull().lo == -10.0);
    CHECK(c.hull().hi == 10.0);
    CHECK(c.cdf(3.0) == Approx(0.5 + std::atan(3.0) / M_PI).epsilon(1e-12));

    const auto inside = ParameterMeasure::discrete({{0.5, 1.0}, {-0.5, 2.0}});
    const auto same = truncate(inside, 1.0);
    CHECK(same.atoms().size() == 2);
    CHECK(same.mass_at(0.5) == 1.0);
    CHECK(same.mass_at(-0.5) == 2.0);

    // weak convergence on h = cos
    // Cauchy(0.5, 1) characteristic function at 1: cos(0.5) / e
    const auto g = ParameterMeasure::cauchy(0.5, 1.0);
    const double exact = std::cos(0.5) * std::exp(-1.0);
    // |difference| <= 2 alpha(|x| >= k) since |cos| <= 1
    for (double k : {2.0, 8.0, 32.0, 128.0, 1e4}) {
        const double d = std::abs(integrate_measure(truncate(g, k), [](double x) { return std::cos(x); }, cfg) - exact);
        const double outside = g.cdf(-k) + 1.0 - g.cdf(k);
        CAPTURE(k);
        CHECK(d <= 2.0 * outside + 1e-9);
    }
    CHECK_THROWS_AS(truncate(g, 0.0), InvalidArgument);
}

TEST_CASE("pushforward") {
    const auto sq = pushforward(ParameterMeasure::discrete({{2.0, 1.0}, {-1.0, 1.0}}),
                                Transform::general([](double x) { return x * x; }));
    CHECK(sq.atoms().size() == 2);
    CHECK(sq.mass_at(4.0) == 1.0);
    CHECK(sq.mass_at(1.0) == 1.0);

    // inverse-scale convention: density s / (pi (1 + s^2 (x - theta)^2)) maps to scale s / |m|
    const auto c = pushforward(ParameterMeasure::cauchy(1.0, 2.0), Transform::linear(-3.0, 0.5));
    CHECK(c.kind() == MeasureKind::Cauchy);
    const auto& law = std::get<CauchyLaw>(c.continuous()->law);
    CHECK(law.theta == Approx(-2.5));
    CHECK(law.sigma == Approx(2.0 / 3.0));
    CHECK(c.cdf(-2.5) == Approx(0.5));

    const auto g = pushforward(ParameterMeasure::gaussian(2.0, 1.0, 0.5), Transform::linear(2.0, 1.0));
    CHECK(g.kind() == MeasureKind::Gaussian);
    CHECK(g.cdf(3.0) == Approx(1.0));
    CHECK(g.cdf(4.0) == Approx(2.0 * gaussian_cdf(1.0)));

    // grid discretization of a Gaussian: cdf within a / n
    const int n = 10000;
    const double a = 2.0;
    const auto gd = pushforward(ParameterMeasure::gaussian(a, 0.0, 1.0), Transform::general([](double x) { return x; }), n);
    CHECK(gd.is_discrete());
    double worst = 0.0;
    for (int i = -400; i <= 400; ++i) {
        const double x = 0.01 * i + 1e-7;
        worst = std::max(worst, std::abs(gd.cdf(x) - a * gaussian_cdf(x)));
    }
    CHECK(worst <= a / n);

    CHECK_THROWS_AS(pushforward(ParameterMeasure::gaussian(1.0, 0.0, 1.0), Transform::general([](double x) { return x * x; })),
                    Refused);

    const auto m = ParameterMeasure::mixed({{0.3, 0.7}}, ContinuousPart{UniformLaw{0.0, 1.0}, 1.2, Interval{}});
    const auto id = pushforward(m, Transform::identity());
    for (double x : {-1.0, 0.1, 0.3, 0.6, 2.0}) CHECK(id.cdf(x) == Approx(m.cdf(x)));
}

TEST_CASE("Thorin measure") {
    const auto one = thorin_measure(ParameterMeasure::discrete({{2.0, 1.0}}));
    REQUIRE(one.measure);
    CHECK(one.measure->mass_at(0.5) == 1.0);
    CHECK(one.dropped_mass == 0.0);

    const auto two = thorin_measure(ParameterMeasure::discrete({{2.0, 1.0}, {-0.5, 3.0}}));
    REQUIRE(two.measure);
    CHECK(two.measure->mass_at(0.5) == 1.0);
    CHECK(two.measure->mass_at(-2.0) == 3.0);

    const auto zero = thorin_measure(ParameterMeasure::discrete({{0.0, 2.0}}));
    CHECK_FALSE(zero.measure);
    CHECK(zero.dropped_mass == 2.0);

    // involution on discrete measures without mass at 0
    const auto d = ParameterMeasure::discrete({{0.25, 1.0}, {-4.0, 0.5}, {3.0, 2.0}});
    const auto back = thorin_measure(*thorin_measure(d).measure).measure;
    REQUIRE(back);
    REQUIRE(back->atoms().size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back->atoms()[i].x == Approx(d.atoms()[i].x).epsilon(1e-15));
        CHECK(back->atoms()[i].mass == d.atoms()[i].mass);
    }
}

TEST_CASE("reflection and symmetry") {
    CHECK(ParameterMeasure::discrete({{1.0, 1.0}, {-1.0, 1.0}}).is_symmetric());
    CHECK_FALSE(ParameterMeasure::discrete({{2.0, 1.0}, {-1.0, 1.0}}).is_symmetric());
    CHECK(ParameterMeasure::cauchy(0.0, 3.0).is_symmetric());
    CHECK_FALSE(ParameterMeasure::cauchy(0.1, 3.0).is_symmetric());
    CHECK(ParameterMeasure::gaussian(2.0, 0.0, 1.0).is_symmetric());
    const auto u = ParameterMeasure::uniform01(1.0).reflected();
    CHECK(u.hull().lo == -1.0);
    CHECK(u.cdf(-0.5) == Approx(0.5));
}

TEST_CASE("measure definition files") {
    const auto d = parse_measure_json(R"({"kind":"discrete","total_mass":2,"atoms":[{"x":1,"mass":1},{"x":0,"mass":1}]})");
    CHECK(d.total_mass() == 2.0);
    CHECK(d.mass_at(0.0) == 1.0);
    const auto c = parse_measure_json(R"({"kind":"cauchy","params":{"theta":2,"sigma":0.5}})");
    CHECK(c.kind() == MeasureKind::Cauchy);
    CHECK(parse_measure_json(R"({"kind":"cauchy","params":{"theta":2,"sigma":"inf"}})").is_degenerate());
    CHECK(parse_measure_json(R"({"kind":"gaussian","total_mass":2,"params":{"theta":0,"sigma":1}})").total_mass() == 2.0);
    CHECK(parse_measure_json(R"({"kind":"uniform01","total_mass":3})").kind() == MeasureKind::Uniform01);
    CHECK(parse_measure_json(R"({"kind":"density-table","total_mass":1,"density_table":[[0,1],[1,1]]})").cdf(0.5) ==
          Approx(0.5));

    for (const char* bad : {
             "{",
             R"({"kind":"discrete","atoms":[]})",
             R"({"kind":"discrete","atoms":[{"x":1,"mass":-1}]})",
             R"({"kind":"discrete","atoms":[{"x":1,"mass":1},{"x":1,"mass":2}]})",
             R"({"kind":"discrete","total_mass":3,"atoms":[{"x":1,"mass":1}]})",
             R"({"kind":"discrete","atoms":[{"x":"1","mass":1}]})",
             R"({"kind":"cauchy","params":{"theta":0,"sigma":-1}})",
             R"({"kind":"cauchy","params":{"theta":0,"sigma":"nan"}})",
             R"({"kind":"cauchy","total_mass":2,"params":{"theta":0,"sigma":1}})",
             R"({"kind":"gaussian","params":{"theta":0,"sigma":1}})",
             R"({"kind":"poisson","total_mass":1})",
             R"({"kind":"uniform01","total_mass":1,"extra":0})",
             R"({"kind":"density-table","total_mass":1,"density_table":[[0,1]]})",
             R"({"kind":"density-table","total_mass":1,"density_table":[[1,1],[0,1]]})",
             R"([1,2])",
         }) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_measure_json(bad), ParseError);
    }
}

TEST_CASE("FNV-1a fingerprint") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}
