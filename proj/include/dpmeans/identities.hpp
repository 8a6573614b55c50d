#pragma once

#include <span>

#include "dpmeans/config.hpp"
#include "dpmeans/mc_oracle.hpp"
#include "dpmeans/measure.hpp"

namespace dpmeans {

// Beta(c, a - c) probability on [0, 1]; the point mass at 1 when a - c = 0.
struct BetaWeight {
    double c;
    double a_minus_c;

    bool degenerate() const { return a_minus_c == 0.0; }
    double log_norm() const;             // log Gamma(a) - log Gamma(c) - log Gamma(a - c)
    double density(double u) const;      // for a_minus_c > 0
};

// Throws Refused when the log moment is infinite.
void require_finite_log_moment(const ParameterMeasure& alpha, const QuadratureConfig& cfg);

// exp(-zeta(i t)): the order-a Stieltjes transform of the mean law.
cplx mk_transform(double t, const ParameterMeasure& alpha, const QuadratureConfig& cfg = {});

// Integral of (1 + i t x)^{-c} against the mean law, for any c > 0.
cplx lauricella_stieltjes(double t, const ParameterMeasure& alpha, double c, const QuadratureConfig& cfg = {});

struct FdCheck {
    cplx lhs;
    cplx rhs;
    double rhs_std_err;  // zero for the exact product form
};

// Mixture form of the fourth Lauricella function against its product form (c = a)
// or a Dirichlet Monte Carlo average (c < a).
FdCheck fd_finite_check(double a, std::span<const double> b, std::span<const double> x,
                        const QuadratureConfig& cfg = {});
FdCheck fd_finite_check(double a, std::span<const double> b, std::span<const double> x, double c,
                        const QuadratureConfig& cfg, const McConfig& mc);

}  // namespace dpmeans
