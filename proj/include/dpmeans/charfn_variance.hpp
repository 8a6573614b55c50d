#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dpmeans/config.hpp"
#include "dpmeans/mean_distribution.hpp"
#include "dpmeans/measure.hpp"

namespace dpmeans {

enum class CharfnMethod { Exact, PvLine, LoopContour, TruncationLimit };
std::string to_string(CharfnMethod m);

struct CharfnResult {
    double t = 0.0;
    cplx value{1.0, 0.0};
    CharfnMethod method = CharfnMethod::Exact;
    double k_final = 0.0;  // truncation level reached, for TruncationLimit
    double err_est = 0.0;
};

// Path selection for the inversion integral Gamma(a) / (2 pi i) int e^w w^{-a} exp(-zeta(-i t / w)) dw.
struct CharfnOptions {
    enum class Path { Auto, PvLine, Loop };
    Path path = Path::Auto;  // Auto: the PV line for a > 1, the loop otherwise
    double gamma = 1.0;      // abscissa of the PV line
    double loop_scale = 1.0; // scales the clearance of the loop from the singular segment
};

// Characteristic function of the Dirichlet mean. Unbounded supports iterate over
// truncations k = 2^j scale(alpha), j = 0 .. cfg.truncation_max_level, until successive values
// differ by less than cfg.truncation_tol; LimitFailure otherwise.
CharfnResult mean_charfn(double t, const ParameterMeasure& alpha, const QuadratureConfig& cfg = {},
                         const CharfnOptions& opts = {});

// Confluent form of the fourth Lauricella function: the characteristic function of the mean
// for atoms x_k with masses b_k plus mass a - |b| at 0.
cplx confluent_phi(std::span<const double> b, double a, std::span<const double> x, double t,
                   const QuadratureConfig& cfg = {});

// Law of the random functional integral of f: the mean law of the image of alpha under f.
double functional_mean_density(const ParameterMeasure& alpha, const Transform& f, double xi,
                               const QuadratureConfig& cfg = {});
CharfnResult functional_mean_charfn(const ParameterMeasure& alpha, const Transform& f, double t,
                                    const QuadratureConfig& cfg = {});

// Integral of (1 + i <t, x>)^{-c} against the joint law of the means of f_1 .. f_d, reduced to
// the scalar transform of the image of alpha under <t, f>.
cplx joint_stieltjes(std::span<const double> t, const std::vector<std::function<double(double)>>& f,
                     const ParameterMeasure& alpha, double c, const QuadratureConfig& cfg = {});

struct VarianceMgfResult {
    double value = 1.0;
    double err_est = 0.0;
    int hermite_nodes = 0;
    double k_final = 0.0;
};

// E exp(-t V) for the random variance V. Outer Gauss-Hermite in y against e^{-y^2/4}, inner PV
// line for the Laplace transform of the mean of t x^2 - y sqrt(t) x at the abscissa
// max(sup(y sqrt(t) x - t x^2), 0) + 1.
VarianceMgfResult variance_mgf(double t, const ParameterMeasure& alpha, const QuadratureConfig& cfg = {});

}  // namespace dpmeans
