#pragma once

#include "dpmeans/config.hpp"
#include "dpmeans/measure.hpp"
#include "dpmeans/quadrature.hpp"

namespace dpmeans {

// Principal logarithm with arg in (-pi, pi]; a signed-zero imaginary part counts as +0.
cplx principal_log(cplx z);

// zeta(w) = integral of log(1 + w x) alpha(dx).
cplx zeta(cplx w, const ParameterMeasure& alpha, const QuadratureConfig& cfg = {});

// zeta(w; f) = integral of log(1 + w f(x)) alpha(dx).
cplx zeta(cplx w, const ParameterMeasure& alpha, const RealFn& f, const QuadratureConfig& cfg = {});

}  // namespace dpmeans
