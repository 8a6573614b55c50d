#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dpmeans/measure.hpp"

namespace dpmeans {

inline constexpr const char* kRngAlgorithm =
    "mt19937_64 per chunk, seed_seq{seed_lo32, seed_hi32, chunk}; uniforms from the top 53 bits; boost.random gamma";

struct McConfig {
    std::size_t n_samples = 100000;
    std::uint64_t seed = 20240611;
    // Stick-breaking stops once the unassigned mass drops below rho; 0 picks the default
    // (1e-12, or 1e-14 when the support is unbounded).
    double stick_residual = 0.0;
    // Samples per independently seeded chunk.
    std::size_t chunk_size = 8192;
    // Atoms used to discretize a continuous measure for gamma sums.
    int grid_level = 4000;
};

struct SamplingReport {
    double stick_residual;
    std::size_t chunks;
    std::string note;  // bias note for heavy tails, empty otherwise
};

SamplingReport describe_sampling(const ParameterMeasure& alpha, const McConfig& cfg);

// Draws of the random mean by stick-breaking.
std::vector<double> sample_mean(const ParameterMeasure& alpha, const McConfig& cfg);

// Draws of the random mean and of the random variance from the same stick-breaking path.
struct MeanVarianceDraws {
    std::vector<double> mean;
    std::vector<double> variance;
};
MeanVarianceDraws sample_mean_variance(const ParameterMeasure& alpha, const McConfig& cfg);

// Dirichlet(masses) weights, row-major n_samples x masses.size().
std::vector<double> sample_dirichlet(std::span<const double> masses, const McConfig& cfg);

// Draws of <u, x> with u ~ Dirichlet(masses).
std::vector<double> sample_finite_dirichlet_mean(std::span<const double> atoms, std::span<const double> masses,
                                                 const McConfig& cfg);

// Draws of sum_k f(x_k) G_k with independent G_k ~ Gamma(mass_k, 1).
std::vector<double> sample_gamma_functional(const ParameterMeasure& alpha, const std::function<double(double)>& f,
                                            const McConfig& cfg);

struct Estimate {
    cplx value;
    double std_err;
};

// Linear statistics: the jackknife standard error equals sd / sqrt(n).
Estimate ecf(std::span<const double> samples, double t);
Estimate mgf(std::span<const double> samples, double t);
Estimate sample_average(std::span<const double> samples);

// Gaussian-kernel density estimate; bandwidth 0 selects Silverman's rule
// h = 0.9 min(sd, IQR / 1.34) n^{-1/5}.
Estimate kde(std::span<const double> samples, double xi, double bandwidth = 0.0);
double silverman_bandwidth(std::span<const double> samples);

// Kolmogorov-Smirnov distance to a continuous cdf, and between two samples.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);
double ks_two_sample(std::span<const double> a, std::span<const double> b);

}  // namespace dpmeans
