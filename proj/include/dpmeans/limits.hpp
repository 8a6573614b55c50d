#pragma once

#include <functional>

#include "dpmeans/config.hpp"
#include "dpmeans/errors.hpp"

namespace dpmeans {

struct LimitResult {
    double value;
    double err_est;
    int levels;  // schedule entries evaluated
};

// lim_{eps -> 0} v(eps) over cfg.eps_schedule by Neville-Richardson extrapolation in eps.
LimitResult epsilon_limit(const std::function<double(double)>& v, const QuadratureConfig& cfg);

// (1/pi) lim_{eps -> 0} Im F(lambda, eps).
LimitResult stieltjes_perron_limit(const std::function<cplx(double, double)>& F, double lambda,
                                   const QuadratureConfig& cfg);

}  // namespace dpmeans
