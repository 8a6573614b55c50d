#pragma once

#include <vector>

namespace dpmeans {

struct QuadratureConfig {
    double abs_tol = 1e-13;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;

    // Decreasing offsets for Stieltjes-Perron limits; defaults to 0.1 * 2^-j, j = 0..12.
    std::vector<double> eps_schedule = default_eps_schedule();
    double limit_tol = 1e-9;       // early stop of the epsilon extrapolation
    double limit_fail_tol = 1e-3;  // best error estimate above this is a limit failure

    double loop_eps = 0.1;   // radius of the circle around 1
    double loop_tau = 0.05;  // half-height of the loop around [0, 1]

    // Offsets beyond the core radius at which PV partial integrals are sampled.
    std::vector<double> pv_R_schedule = default_pv_schedule();

    double truncation_tol = 1e-4;  // successive-k agreement for truncated measures
    int truncation_max_level = 14; // k = 2^0 .. 2^max_level times the measure scale
    int grid_level = 4000;         // atoms used when a continuous measure must be discretized

    static std::vector<double> default_eps_schedule();
    static std::vector<double> default_pv_schedule();
    void validate() const;
};

}  // namespace dpmeans
