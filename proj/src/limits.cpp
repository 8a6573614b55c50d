#include "dpmeans/limits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace dpmeans {

namespace {
constexpr int kMaxOrder = 6;
}

LimitResult epsilon_limit(const std::function<double(double)>& v, const QuadratureConfig& cfg) {
    const auto& eps = cfg.eps_schedule;
    // T[j][k]: Neville extrapolation to eps = 0 through rows j-k..j.
    std::vector<std::vector<double>> T;
    double best = NAN;
    double best_err = INFINITY;
    int levels = 0;
    for (std::size_t j = 0; j < eps.size(); ++j) {
        double val;
        try {
            val = v(eps[j]);
        } catch (const ToleranceFailure&) {
            if (j >= 4) break;
            throw;
        }
        if (!std::isfinite(val)) {
            if (j >= 4) break;
            throw LimitFailure("epsilon limit: non-finite value in the schedule", val, j > 0 ? T.back()[0] : val);
        }
        ++levels;
        std::vector<double> row{val};
        for (std::size_t k = 1; k <= j && k <= kMaxOrder; ++k) {
            const double num = eps[j - k] * row[k - 1] - eps[j] * T[j - 1][k - 1];
            row.push_back(num / (eps[j - k] - eps[j]));
        }
        T.push_back(row);
        if (j == 0) continue;
        for (std::size_t k = 0; k < row.size(); ++k) {
            double err;
            if (k == 0) {
                err = std::abs(row[0] - T[j - 1][0]);
            } else {
                err = std::max(std::abs(row[k] - row[k - 1]), std::abs(row[k] - T[j - 1][k - 1]));
            }
            if (err < best_err) {
                best_err = err;
                best = row[k];
            }
        }
        if (j >= 3 && best_err <= cfg.limit_tol * std::max(1.0, std::abs(best))) break;
    }
    if (!(best_err <= cfg.limit_fail_tol * std::max(1.0, std::abs(best)))) {
        std::ostringstream msg;
        msg << "epsilon limit: extrapolation did not settle (best change " << best_err << ")";
        const double last = T.empty() ? NAN : T.back()[0];
        const double prev = T.size() > 1 ? T[T.size() - 2][0] : last;
        throw LimitFailure(msg.str(), last, prev);
    }
    return {best, best_err, levels};
}

LimitResult stieltjes_perron_limit(const std::function<cplx(double, double)>& F, double lambda,
                                   const QuadratureConfig& cfg) {
    return epsilon_limit([&](double e) { return F(lambda, e).imag() / M_PI; }, cfg);
}

}  // namespace dpmeans
