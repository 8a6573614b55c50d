#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dpmeans/config.hpp"
#include "dpmeans/errors.hpp"

namespace dpmeans {

struct QuadResult {
    cplx value{0.0, 0.0};
    double err_est = 0.0;
    int evaluations = 0;
    bool converged = true;
};

using ComplexFn = std::function<cplx(double)>;
using RealFn = std::function<double(double)>;

// Integrand that also receives the exact distances u - lo and hi - u.
using EndpointFn = std::function<cplx(double u, double from_lo, double to_hi)>;

struct EndpointExponents {
    double lo = 0.0;  // g(u) ~ (u - lo)^lo near lo
    double hi = 0.0;  // g(u) ~ (hi - u)^hi near hi
};

// Globally adaptive 21-point Gauss-Kronrod. Never throws on non-convergence;
// inspect `converged`.
QuadResult gauss_kronrod(const ComplexFn& f, double a, double b, const QuadratureConfig& cfg,
                         std::span<const double> breakpoints = {});

// Same, throwing ToleranceFailure when the subdivision budget is exhausted.
QuadResult integrate(const ComplexFn& f, double a, double b, const QuadratureConfig& cfg,
                     std::span<const double> breakpoints = {});

double integrate_real(const RealFn& f, double a, double b, const QuadratureConfig& cfg,
                      std::span<const double> breakpoints = {});

// Integral over [lo, hi] with algebraic endpoint behaviour absorbed by the
// substitution u - lo = L s^{1/(1+p)} on each half of the interval.
QuadResult integrate_interval(const EndpointFn& g, double lo, double hi, EndpointExponents ends,
                              const QuadratureConfig& cfg, std::span<const double> breakpoints = {});
QuadResult integrate_interval(const ComplexFn& g, double lo, double hi, EndpointExponents ends,
                              const QuadratureConfig& cfg, std::span<const double> breakpoints = {});

// [a, +inf) when direction > 0, (-inf, a] otherwise; x = a +- s/(1-s).
QuadResult integrate_half_line(const ComplexFn& f, double a, int direction, const QuadratureConfig& cfg);

struct QuadNode {
    double x;
    double w;
};

// Gauss-Legendre rule of the given order on every panel [edges[i], edges[i+1]].
std::vector<QuadNode> gauss_legendre_panels(std::span<const double> edges, int order);

// Gauss-Hermite rule for weight exp(-x^2) (Golub-Welsch).
std::vector<QuadNode> gauss_hermite(int n);

// Gauss-Jacobi rule on [-1, 1] for weight (1 - x)^alpha (1 + x)^beta, alpha, beta > -1.
std::vector<QuadNode> gauss_jacobi(int n, double alpha, double beta);

}  // namespace dpmeans
