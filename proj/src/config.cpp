#include "dpmeans/config.hpp"

#include <cmath>

#include "dpmeans/errors.hpp"

namespace dpmeans {

std::vector<double> QuadratureConfig::default_eps_schedule() {
    std::vector<double> eps;
    for (int j = 0; j <= 12; ++j) eps.push_back(0.1 * std::ldexp(1.0, -j));
    return eps;
}

std::vector<double> QuadratureConfig::default_pv_schedule() {
    std::vector<double> r;
    for (int k = 1; k <= 80; ++k) r.push_back(k * M_PI);
    return r;
}

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw InvalidArgument("tolerances must be positive");
    if (max_subdivisions < 1) throw InvalidArgument("max_subdivisions must be positive");
    if (eps_schedule.size() < 3) throw InvalidArgument("eps_schedule needs at least three entries");
    for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
        if (!(eps_schedule[i] > 0.0)) throw InvalidArgument("eps_schedule entries must be positive");
        if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1]))
            throw InvalidArgument("eps_schedule must be strictly decreasing");
    }
    if (!(loop_eps > 0.0) || !(loop_tau > 0.0)) throw InvalidArgument("loop geometry must be positive");
    if (pv_R_schedule.size() < 4) throw InvalidArgument("pv_R_schedule needs at least four entries");
    for (std::size_t i = 0; i < pv_R_schedule.size(); ++i) {
        if (!(pv_R_schedule[i] > 0.0)) throw InvalidArgument("pv_R_schedule entries must be positive");
        if (i > 0 && !(pv_R_schedule[i] > pv_R_schedule[i - 1]))
            throw InvalidArgument("pv_R_schedule must be strictly increasing");
    }
    if (!(truncation_tol > 0.0)) throw InvalidArgument("truncation_tol must be positive");
    if (grid_level < 2) throw InvalidArgument("grid_level must be at least 2");
}

}  // namespace dpmeans
