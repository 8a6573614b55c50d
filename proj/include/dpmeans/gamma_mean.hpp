#pragma once

#include <functional>

#include "dpmeans/config.hpp"
#include "dpmeans/mean_distribution.hpp"
#include "dpmeans/measure.hpp"

namespace dpmeans {

// Characteristic function of the gamma-process mean, exp(-zeta(-i t)).
cplx gamma_charfn(double t, const ParameterMeasure& alpha, const QuadratureConfig& cfg = {});

// Table of the Dirichlet mean law used by the scale mixture; empty when alpha is a single atom.
DensityTable gamma_mean_table(const ParameterMeasure& alpha, const QuadratureConfig& cfg = {});

struct GammaMeanValue {
    double value = 0.0;
    double err_est = 0.0;
};

// Density of the gamma-process mean as the Gamma(a) scale mixture of the Dirichlet mean law:
// q(x) = |x|^{a-1} / Gamma(a) * integral over y of the sign of x of |y|^{-a} e^{-x/y} mu(dy).
// Requires alpha{0} < a. Throws ToleranceFailure when the table error exceeds tol * (1 + q).
GammaMeanValue gamma_mean_density(double x, const ParameterMeasure& alpha, const DensityTable& mean_table,
                                  const QuadratureConfig& cfg = {}, double tol = 1e-6);

// Distribution function of the same law: the mixture of Gamma(a) cdfs at x / y.
GammaMeanValue gamma_mean_cdf(double x, const ParameterMeasure& alpha, const DensityTable& mean_table,
                              const QuadratureConfig& cfg = {});

// Levy-Khintchine pair of the gamma-process mean. The weight density is
// g(x) = |x| / (1 + x^2) * integral over y of the sign of x of e^{-x y} alpha*(dy),
// with alpha* the image of alpha under y = 1/x; it is the Levy density times x^2 / (1 + x^2).
struct LevyTriple {
    double drift = 0.0;    // integral of g(x) / x, with sign
    std::function<double(double)> g;
    double G_total = 0.0;  // integral of g
    double abs_moment = 0.0;  // integral of g(x) / |x|
};

double levy_g(double x, const ParameterMeasure& alpha, const QuadratureConfig& cfg = {});
LevyTriple levy_triple(const ParameterMeasure& alpha, const QuadratureConfig& cfg = {});

// exp(i drift t + integral of (e^{itu} - 1 - itu / (1 + u^2)) (1 + u^2) / u^2 g(u) du).
cplx levy_reconstruct_charfn(double t, const ParameterMeasure& alpha, const QuadratureConfig& cfg = {});
cplx levy_reconstruct_charfn(double t, const LevyTriple& triple, const QuadratureConfig& cfg = {});

}  // namespace dpmeans
