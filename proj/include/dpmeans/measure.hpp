#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dpmeans/config.hpp"
#include "dpmeans/errors.hpp"

namespace dpmeans {

struct Atom {
    double x;
    double mass;
};

struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool contains(double x) const { return x > lo && x < hi; }
    double width() const { return hi - lo; }
    bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
};

// Probability laws used as the shape of the continuous part.
// Cauchy uses the inverse-scale convention: density sigma / (pi (1 + sigma^2 (x - theta)^2)).
struct CauchyLaw {
    double theta;
    double sigma;
};
struct GaussianLaw {
    double theta;
    double sd;
};
struct UniformLaw {
    double lo;
    double hi;
};
// Piecewise-linear density through the table nodes, normalized.
struct TabulatedLaw {
    std::vector<double> x;
    std::vector<double> pdf;
    std::vector<double> cum;  // cdf at the nodes
};
// Density given as a function on a (possibly unbounded) support, normalized by `norm`.
struct FunctionLaw {
    std::function<double(double)> density;
    Interval support;
    double norm = 1.0;
};

using ContinuousLaw = std::variant<CauchyLaw, GaussianLaw, UniformLaw, TabulatedLaw, FunctionLaw>;

double law_pdf(const ContinuousLaw& law, double x);
double law_cdf(const ContinuousLaw& law, double x);
double law_quantile(const ContinuousLaw& law, double p);
Interval law_support(const ContinuousLaw& law);

// mass * law restricted to window (the window mass is mass * P_law(window)).
struct ContinuousPart {
    ContinuousLaw law;
    double scale;
    Interval window;

    double density(double x) const;
    double cdf(double x) const;        // measure of (-inf, x] of the restricted part
    double mass() const;               // total mass of the restricted part
    Interval support() const;          // window intersected with the law support
    bool full_window() const;          // window covers the whole law support
};

enum class MeasureKind { Discrete, Cauchy, Gaussian, Uniform01, CustomDensity, Mixed };

std::string to_string(MeasureKind k);

class ParameterMeasure {
public:
    static ParameterMeasure discrete(std::vector<Atom> atoms);
    // sigma = +inf yields the point mass at theta.
    static ParameterMeasure cauchy(double theta, double sigma);
    static ParameterMeasure gaussian(double mass, double theta, double sd);
    static ParameterMeasure uniform01(double mass);
    static ParameterMeasure custom_density(std::function<double(double)> density, Interval support, double mass);
    static ParameterMeasure density_table(std::vector<double> x, std::vector<double> pdf, double mass);
    static ParameterMeasure mixed(std::vector<Atom> atoms, std::optional<ContinuousPart> part);

    MeasureKind kind() const;
    double total_mass() const { return total_mass_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::optional<ContinuousPart>& continuous() const { return cont_; }
    bool is_discrete() const { return !cont_.has_value(); }

    // A(u) = alpha((-inf, u]).
    double cdf(double u) const;
    // Closed convex hull of the support.
    Interval hull() const;
    double max_atom_mass() const;
    double mass_at(double x) const;
    bool is_degenerate() const;
    // Reflection x -> -x.
    ParameterMeasure reflected() const;
    bool is_symmetric(double tol = 1e-12) const;
    // A characteristic length: the spread of the normalized measure.
    double scale() const;

private:
    std::vector<Atom> atoms_;
    std::optional<ContinuousPart> cont_;
    double total_mass_ = 0.0;
    void finalize();
};

struct LogMoment {
    double value;
    bool finite;
};

// Integral of log(1 + |x|) against alpha.
LogMoment log_moment(const ParameterMeasure& alpha, const QuadratureConfig& cfg = {});

// Integral of h against alpha.
double integrate_measure(const ParameterMeasure& alpha, const std::function<double(double)>& h,
                         const QuadratureConfig& cfg = {});

// Tails beyond +-k collapsed onto atoms at +-k.
ParameterMeasure truncate(const ParameterMeasure& alpha, double k);

// Measure-preserving map f. `affine` set means f(x) = s x + c exactly.
struct Transform {
    std::function<double(double)> fn;
    std::optional<std::pair<double, double>> affine;

    static Transform identity();
    static Transform linear(double s, double c);
    static Transform general(std::function<double(double)> fn);
    double operator()(double x) const { return fn(x); }
};

// grid_level = 0 refuses non-affine images of continuous parts.
ParameterMeasure pushforward(const ParameterMeasure& alpha, const Transform& f, int grid_level = 0);

// Mass-equalized discretization of the continuous part with n atoms
// (quantile midpoints); atoms are kept.
ParameterMeasure discretize(const ParameterMeasure& alpha, int n);

struct ThorinResult {
    std::optional<ParameterMeasure> measure;  // empty when all mass sat at 0
    double dropped_mass;
};

// Image of alpha under x -> 1/x; continuous parts are discretized with grid_level atoms.
ThorinResult thorin_measure(const ParameterMeasure& alpha, int grid_level = 4000);

}  // namespace dpmeans
