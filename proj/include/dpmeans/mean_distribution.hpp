#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dpmeans/config.hpp"
#include "dpmeans/measure.hpp"

namespace dpmeans {

// Inversion formula family, selected by the total mass a.
enum class Regime { AtOne, AboveOne, BelowOne };

// |a - 1| <= 1e-12 counts as a = 1.
Regime regime_of(double a);
std::string to_string(Regime r);

struct DensityValue {
    double value = 0.0;
    double err_est = 0.0;
    // a > 1 and some atom of alpha carries mass >= 1: the pointwise formula is outside
    // its stated hypothesis. The value is still computed.
    bool saltus_flag = false;
};

struct CdfValue {
    double value = 0.0;
    double err_est = 0.0;
};

// Cauchy transform of the mean law, integral of mu(dx) / (x - z), for Im z > 0,
// computed from alpha alone.
cplx mean_cauchy_transform(const ParameterMeasure& alpha, cplx z, const QuadratureConfig& cfg = {});

// Density of the mean law at xi. Throws Refused for a degenerate alpha (the law is a
// point mass) and BoundaryError within 1e-3 hull widths of a finite hull endpoint.
DensityValue mean_density(const ParameterMeasure& alpha, double xi, const QuadratureConfig& cfg = {});

// Mean-law probability of (x1, x2].
CdfValue mean_cdf_interval(const ParameterMeasure& alpha, double x1, double x2, const QuadratureConfig& cfg = {});

// Power-law continuation m(x) = m0 |x / x0|^{-exponent} beyond |x| > |x0| on one side.
struct PowerTail {
    bool present = false;
    double x0 = 0.0;
    double m0 = 0.0;
    double exponent = 0.0;
};

struct DensityTable {
    std::vector<double> abscissae;
    std::vector<double> density;
    std::vector<double> err_est;
    std::vector<double> weights;  // quadrature weights (trapezoid for user grids)
    std::vector<std::size_t> failed;
    std::vector<std::string> errors;  // parallel to failed
    Regime regime = Regime::AtOne;
    Interval hull;
    PowerTail left;
    PowerTail right;

    // Sum of weights times density, plus the tails.
    double total_mass() const;
};

// mean_density on each grid point, evaluated in parallel. Failed points hold NaN.
DensityTable density_grid(const ParameterMeasure& alpha, std::span<const double> grid, const QuadratureConfig& cfg = {});

// Quadrature table for integrals against the mean law: composite Gauss-Legendre panels
// graded toward finite hull endpoints and interior atoms; unbounded sides use
// x = c + s tan(y) and a power-law tail fitted at |x| = 1e3 s. Nodes close to the hull
// endpoints are evaluated without the boundary refusal.
DensityTable mean_law_table(const ParameterMeasure& alpha, const QuadratureConfig& cfg = {}, int order = 10);

struct TableIntegral {
    cplx value;
    double err_est;
};

// Integral of h against the tabulated law (nodes plus tails).
TableIntegral table_integral(const DensityTable& table, const std::function<cplx(double)>& h,
                             const QuadratureConfig& cfg = {});

// Mean-law density for alpha = a * Uniform(0, 1), a > 1, from its single-integral closed form.
double uniform_closed_form(double a, double xi, const QuadratureConfig& cfg = {});

// Max over the grid of |m(xi) - sigma / (pi (1 + sigma^2 (xi - theta)^2))| for alpha = Cauchy(theta, sigma).
double cauchy_fixed_point_residual(double theta, double sigma, std::span<const double> grid,
                                   const QuadratureConfig& cfg = {});

// Max over the grid of |m(xi) - m(-xi)|; small exactly when alpha is symmetric about 0.
double symmetry_residual(const ParameterMeasure& alpha, std::span<const double> grid, const QuadratureConfig& cfg = {});

}  // namespace dpmeans
