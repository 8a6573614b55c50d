#include "dpmeans/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <boost/random/gamma_distribution.hpp>

#include "dpmeans/parallel.hpp"

namespace dpmeans {

namespace {

using Engine = std::mt19937_64;

Engine chunk_engine(std::uint64_t seed, std::size_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    return Engine(seq);
}

double uniform01(Engine& e) { return static_cast<double>(e() >> 11) * 0x1.0p-53; }

// Draws from alpha / a.
class BaseSampler {
public:
    explicit BaseSampler(const ParameterMeasure& alpha) : alpha_(alpha), total_(alpha.total_mass()) {
        double c = 0.0;
        for (const Atom& a : alpha.atoms()) {
            c += a.mass;
            cum_.push_back(c);
            xs_.push_back(a.x);
        }
        if (alpha.continuous()) {
            const ContinuousPart& p = *alpha.continuous();
            p0_ = law_cdf(p.law, p.window.lo);
            p1_ = law_cdf(p.law, p.window.hi);
        }
    }

    double operator()(Engine& e) const {
        const double u = uniform01(e) * total_;
        const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
        if (it != cum_.end()) return xs_[static_cast<std::size_t>(it - cum_.begin())];
        if (!alpha_.continuous()) return xs_.back();
        const ContinuousPart& p = *alpha_.continuous();
        double x = law_quantile(p.law, p0_ + uniform01(e) * (p1_ - p0_));
        return std::clamp(x, p.window.lo, p.window.hi);
    }

private:
    const ParameterMeasure& alpha_;
    double total_;
    std::vector<double> cum_;
    std::vector<double> xs_;
    double p0_ = 0.0, p1_ = 1.0;
};

double resolved_rho(const ParameterMeasure& alpha, const McConfig& cfg) {
    if (cfg.stick_residual > 0.0) return cfg.stick_residual;
    return alpha.hull().bounded() ? 1e-12 : 1e-14;
}

template <class Fill>
void run_chunks(std::size_t n, const McConfig& cfg, Fill fill) {
    const std::size_t chunk = std::max<std::size_t>(1, cfg.chunk_size);
    const std::size_t chunks = (n + chunk - 1) / chunk;
    parallel_for(chunks, [&](std::size_t c) {
        Engine e = chunk_engine(cfg.seed, c);
        const std::size_t lo = c * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) fill(e, i);
    });
}

double sd_of(std::span<const double> v, double mean) {
    if (v.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

void require_samples(std::span<const double> s) {
    if (s.empty()) throw InvalidArgument("estimator: empty sample list");
}

}  // namespace

SamplingReport describe_sampling(const ParameterMeasure& alpha, const McConfig& cfg) {
    const std::size_t chunk = std::max<std::size_t>(1, cfg.chunk_size);
    SamplingReport r{resolved_rho(alpha, cfg), (cfg.n_samples + chunk - 1) / chunk, ""};
    if (!alpha.hull().bounded())
        r.note = "unbounded support: the residual stick mass is assigned to one extra draw, "
                 "so heavy tails carry a bias of order rho";
    return r;
}

MeanVarianceDraws sample_mean_variance(const ParameterMeasure& alpha, const McConfig& cfg) {
    const double a = alpha.total_mass();
    const double rho = resolved_rho(alpha, cfg);
    const BaseSampler draw(alpha);
    MeanVarianceDraws out;
    out.mean.resize(cfg.n_samples);
    out.variance.resize(cfg.n_samples);
    if (!alpha.continuous() && alpha.atoms().size() == 1) {
        // every stick lands on the one atom
        std::fill(out.mean.begin(), out.mean.end(), alpha.atoms().front().x);
        return out;
    }
    run_chunks(cfg.n_samples, cfg, [&](Engine& e, std::size_t i) {
        double remaining = 1.0;
        double m1 = 0.0;
        double m2 = 0.0;
        while (remaining >= rho) {
            const double v = 1.0 - std::pow(uniform01(e), 1.0 / a);
            const double p = remaining * v;
            const double y = draw(e);
            m1 += p * y;
            m2 += p * y * y;
            remaining -= p;
        }
        const double y = draw(e);
        m1 += remaining * y;
        m2 += remaining * y * y;
        out.mean[i] = m1;
        out.variance[i] = std::max(0.0, m2 - m1 * m1);
    });
    return out;
}

std::vector<double> sample_mean(const ParameterMeasure& alpha, const McConfig& cfg) {
    return sample_mean_variance(alpha, cfg).mean;
}

std::vector<double> sample_dirichlet(std::span<const double> masses, const McConfig& cfg) {
    const std::size_t k = masses.size();
    if (k == 0) throw InvalidArgument("sample_dirichlet: no masses");
    for (double m : masses) {
        if (!(m > 0.0)) throw InvalidArgument("sample_dirichlet: masses must be positive");
    }
    std::vector<double> out(cfg.n_samples * k);
    run_chunks(cfg.n_samples, cfg, [&](Engine& e, std::size_t i) {
        double s = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            boost::random::gamma_distribution<double> g(masses[j]);
            const double x = g(e);
            out[i * k + j] = x;
            s += x;
        }
        for (std::size_t j = 0; j < k; ++j) out[i * k + j] /= s;
    });
    return out;
}

std::vector<double> sample_finite_dirichlet_mean(std::span<const double> atoms, std::span<const double> masses,
                                                 const McConfig& cfg) {
    if (atoms.size() != masses.size()) throw InvalidArgument("sample_finite_dirichlet_mean: size mismatch");
    const std::vector<double> w = sample_dirichlet(masses, cfg);
    const std::size_t k = atoms.size();
    std::vector<double> out(cfg.n_samples);
    for (std::size_t i = 0; i < cfg.n_samples; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < k; ++j) s += w[i * k + j] * atoms[j];
        out[i] = s;
    }
    return out;
}

std::vector<double> sample_gamma_functional(const ParameterMeasure& alpha, const std::function<double(double)>& f,
                                            const McConfig& cfg) {
    const ParameterMeasure d = alpha.continuous() ? discretize(alpha, cfg.grid_level) : alpha;
    std::vector<double> fx, mass;
    for (const Atom& a : d.atoms()) {
        fx.push_back(f(a.x));
        mass.push_back(a.mass);
    }
    std::vector<double> out(cfg.n_samples);
    run_chunks(cfg.n_samples, cfg, [&](Engine& e, std::size_t i) {
        double s = 0.0;
        for (std::size_t j = 0; j < fx.size(); ++j) {
            boost::random::gamma_distribution<double> g(mass[j]);
            s += fx[j] * g(e);
        }
        out[i] = s;
    });
    return out;
}

Estimate sample_average(std::span<const double> samples) {
    require_samples(samples);
    const double n = static_cast<double>(samples.size());
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    return {mean, sd_of(samples, mean) / std::sqrt(n)};
}

Estimate ecf(std::span<const double> samples, double t) {
    require_samples(samples);
    if (t == 0.0) return {1.0, 0.0};
    const double n = static_cast<double>(samples.size());
    cplx s{0.0, 0.0};
    for (double x : samples) s += std::polar(1.0, t * x);
    const cplx mean = s / n;
    double v = 0.0;
    for (double x : samples) v += std::norm(std::polar(1.0, t * x) - mean);
    return {mean, std::sqrt(v / (n - 1.0) / n)};
}

Estimate mgf(std::span<const double> samples, double t) {
    require_samples(samples);
    std::vector<double> e(samples.size());
    std::transform(samples.begin(), samples.end(), e.begin(), [t](double x) { return std::exp(-t * x); });
    return sample_average(e);
}

double silverman_bandwidth(std::span<const double> samples) {
    require_samples(samples);
    std::vector<double> s(samples.begin(), samples.end());
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    const double mean = std::accumulate(s.begin(), s.end(), 0.0) / n;
    const double sd = sd_of(s, mean);
    auto q = [&](double p) {
        const double pos = p * (n - 1.0);
        const std::size_t i = static_cast<std::size_t>(pos);
        const double f = pos - static_cast<double>(i);
        return i + 1 < s.size() ? s[i] * (1.0 - f) + s[i + 1] * f : s.back();
    };
    const double iqr = q(0.75) - q(0.25);
    double spread = std::min(sd, iqr / 1.34);
    if (!(spread > 0.0)) spread = std::max(sd, iqr / 1.34);
    if (!(spread > 0.0)) spread = 1.0;
    return 0.9 * spread * std::pow(n, -0.2);
}

Estimate kde(std::span<const double> samples, double xi, double bandwidth) {
    require_samples(samples);
    const double h = bandwidth > 0.0 ? bandwidth : silverman_bandwidth(samples);
    std::vector<double> k(samples.size());
    const double c = 1.0 / (h * std::sqrt(2.0 * M_PI));
    std::transform(samples.begin(), samples.end(), k.begin(), [&](double x) {
        const double z = (xi - x) / h;
        return c * std::exp(-0.5 * z * z);
    });
    return sample_average(k);
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
    require_samples(samples);
    std::vector<double> s(samples.begin(), samples.end());
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double F = cdf(s[i]);
        d = std::max({d, std::abs(F - i / n), std::abs((i + 1) / n - F)});
    }
    return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
    require_samples(a);
    require_samples(b);
    std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) ++i;
        while (j < y.size() && y[j] <= v) ++j;
        d = std::max(d, std::abs(double(i) / x.size() - double(j) / y.size()));
    }
    return d;
}

}  // namespace dpmeans
