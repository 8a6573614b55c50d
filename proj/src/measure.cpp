#include "dpmeans/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/tools/roots.hpp>

#include "dpmeans/quadrature.hpp"

namespace dpmeans {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Gaussian tails beyond this many standard deviations are below double resolution.
constexpr double kGaussianReach = 40.0;

std::vector<Atom> merge_atoms(std::vector<Atom> atoms) {
    std::map<double, double> acc;
    for (const Atom& a : atoms) {
        if (!std::isfinite(a.x)) throw InvalidArgument("atom location must be finite");
        if (!(a.mass > 0.0) || !std::isfinite(a.mass)) throw InvalidArgument("atom mass must be positive and finite");
        acc[a.x == 0.0 ? 0.0 : a.x] += a.mass;
    }
    std::vector<Atom> out;
    out.reserve(acc.size());
    for (const auto& [x, m] : acc) out.push_back({x, m});
    return out;
}

double tabulated_cdf(const TabulatedLaw& t, double x) {
    if (x <= t.x.front()) return 0.0;
    if (x >= t.x.back()) return 1.0;
    const auto it = std::upper_bound(t.x.begin(), t.x.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - t.x.begin()) - 1;
    const double dx = x - t.x[i];
    const double slope = (t.pdf[i + 1] - t.pdf[i]) / (t.x[i + 1] - t.x[i]);
    return t.cum[i] + t.pdf[i] * dx + 0.5 * slope * dx * dx;
}

double tabulated_quantile(const TabulatedLaw& t, double p) {
    if (p <= 0.0) return t.x.front();
    if (p >= 1.0) return t.x.back();
    const auto it = std::upper_bound(t.cum.begin(), t.cum.end(), p);
    std::size_t i = static_cast<std::size_t>(it - t.cum.begin());
    i = std::clamp<std::size_t>(i, 1, t.x.size() - 1) - 1;
    const double target = p - t.cum[i];
    const double width = t.x[i + 1] - t.x[i];
    const double slope = (t.pdf[i + 1] - t.pdf[i]) / width;
    const double disc = std::max(0.0, t.pdf[i] * t.pdf[i] + 2.0 * slope * target);
    const double denom = t.pdf[i] + std::sqrt(disc);
    const double dx = denom > 0.0 ? 2.0 * target / denom : 0.0;
    return t.x[i] + std::clamp(dx, 0.0, width);
}

QuadratureConfig law_cfg() {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-15;
    return cfg;
}

// Integral of h(x) * density over [lo, hi] for a function law, with half-line maps for infinite ends.
double function_law_integral(const FunctionLaw& f, const std::function<double(double)>& h, double lo, double hi) {
    const QuadratureConfig cfg = law_cfg();
    auto g = [&](double x) { return cplx(h(x) * f.density(x), 0.0); };
    if (std::isfinite(lo) && std::isfinite(hi)) return integrate(g, lo, hi, cfg).value.real();
    if (std::isfinite(lo)) return integrate_half_line(g, lo, +1, cfg).value.real();
    if (std::isfinite(hi)) return integrate_half_line(g, hi, -1, cfg).value.real();
    return integrate_half_line(g, 0.0, +1, cfg).value.real() + integrate_half_line(g, 0.0, -1, cfg).value.real();
}

}  // namespace

double law_pdf(const ContinuousLaw& law, double x) {
    return std::visit(
        [x](const auto& l) -> double {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, CauchyLaw>) {
                const double z = l.sigma * (x - l.theta);
                return l.sigma / (M_PI * (1.0 + z * z));
            } else if constexpr (std::is_same_v<T, GaussianLaw>) {
                const double z = (x - l.theta) / l.sd;
                return std::exp(-0.5 * z * z) / (l.sd * std::sqrt(2.0 * M_PI));
            } else if constexpr (std::is_same_v<T, UniformLaw>) {
                return (x > l.lo && x < l.hi) ? 1.0 / (l.hi - l.lo) : 0.0;
            } else if constexpr (std::is_same_v<T, TabulatedLaw>) {
                if (x < l.x.front() || x > l.x.back()) return 0.0;
                const auto it = std::upper_bound(l.x.begin(), l.x.end(), x);
                std::size_t i = static_cast<std::size_t>(it - l.x.begin());
                i = std::clamp<std::size_t>(i, 1, l.x.size() - 1) - 1;
                const double t = (x - l.x[i]) / (l.x[i + 1] - l.x[i]);
                return (1.0 - t) * l.pdf[i] + t * l.pdf[i + 1];
            } else {
                if (!l.support.contains(x)) return 0.0;
                return l.density(x) / l.norm;
            }
        },
        law);
}

double law_cdf(const ContinuousLaw& law, double x) {
    return std::visit(
        [x](const auto& l) -> double {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, CauchyLaw>) {
                if (x == kInf) return 1.0;
                if (x == -kInf) return 0.0;
                return 0.5 + std::atan(l.sigma * (x - l.theta)) / M_PI;
            } else if constexpr (std::is_same_v<T, GaussianLaw>) {
                return 0.5 * std::erfc(-(x - l.theta) / (l.sd * std::sqrt(2.0)));
            } else if constexpr (std::is_same_v<T, UniformLaw>) {
                if (x <= l.lo) return 0.0;
                if (x >= l.hi) return 1.0;
                return (x - l.lo) / (l.hi - l.lo);
            } else if constexpr (std::is_same_v<T, TabulatedLaw>) {
                return tabulated_cdf(l, x);
            } else {
                if (x <= l.support.lo) return 0.0;
                if (x >= l.support.hi) return 1.0;
                return function_law_integral(l, [](double) { return 1.0; }, l.support.lo, x) / l.norm;
            }
        },
        law);
}

double law_quantile(const ContinuousLaw& law, double p) {
    p = std::clamp(p, 0.0, 1.0);
    return std::visit(
        [p, &law](const auto& l) -> double {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, CauchyLaw>) {
                return l.theta + std::tan(M_PI * (p - 0.5)) / l.sigma;
            } else if constexpr (std::is_same_v<T, GaussianLaw>) {
                if (p <= 0.0) return -kInf;
                if (p >= 1.0) return kInf;
                return l.theta - l.sd * std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
            } else if constexpr (std::is_same_v<T, UniformLaw>) {
                return l.lo + p * (l.hi - l.lo);
            } else if constexpr (std::is_same_v<T, TabulatedLaw>) {
                return tabulated_quantile(l, p);
            } else {
                double lo = l.support.lo;
                double hi = l.support.hi;
                if (!std::isfinite(lo)) {
                    lo = std::isfinite(hi) ? hi - 1.0 : -1.0;
                    while (law_cdf(law, lo) > p) lo = 2.0 * lo - 1.0;
                }
                if (!std::isfinite(hi)) {
                    hi = lo + 1.0;
                    while (law_cdf(law, hi) < p) hi = 2.0 * hi - lo;
                }
                auto f = [&](double x) { return law_cdf(law, x) - p; };
                boost::math::tools::eps_tolerance<double> tol(48);
                std::uintmax_t iters = 200;
                auto [a, b] = boost::math::tools::bisect(f, lo, hi, tol, iters);
                return 0.5 * (a + b);
            }
        },
        law);
}

Interval law_support(const ContinuousLaw& law) {
    return std::visit(
        [](const auto& l) -> Interval {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, UniformLaw>) {
                return {l.lo, l.hi};
            } else if constexpr (std::is_same_v<T, TabulatedLaw>) {
                return {l.x.front(), l.x.back()};
            } else if constexpr (std::is_same_v<T, FunctionLaw>) {
                return l.support;
            } else {
                return {};
            }
        },
        law);
}

double ContinuousPart::density(double x) const {
    if (!window.contains(x)) return 0.0;
    return scale * law_pdf(law, x);
}

double ContinuousPart::cdf(double x) const {
    if (x <= window.lo) return 0.0;
    const double lo = law_cdf(law, window.lo);
    const double top = x >= window.hi ? law_cdf(law, window.hi) : law_cdf(law, x);
    return scale * (top - lo);
}

double ContinuousPart::mass() const { return cdf(kInf); }

Interval ContinuousPart::support() const {
    const Interval s = law_support(law);
    return {std::max(s.lo, window.lo), std::min(s.hi, window.hi)};
}

bool ContinuousPart::full_window() const {
    const Interval s = law_support(law);
    return window.lo <= s.lo && window.hi >= s.hi;
}

std::string to_string(MeasureKind k) {
    switch (k) {
        case MeasureKind::Discrete: return "discrete";
        case MeasureKind::Cauchy: return "cauchy";
        case MeasureKind::Gaussian: return "gaussian";
        case MeasureKind::Uniform01: return "uniform01";
        case MeasureKind::CustomDensity: return "custom-density";
        case MeasureKind::Mixed: return "mixed";
    }
    return "unknown";
}

void ParameterMeasure::finalize() {
    atoms_ = merge_atoms(std::move(atoms_));
    double total = 0.0;
    for (const Atom& a : atoms_) total += a.mass;
    if (cont_) {
        const double m = cont_->mass();
        if (!(m > 0.0)) cont_.reset();
        else total += m;
    }
    if (!(total > 0.0) || !std::isfinite(total)) throw InvalidArgument("parameter measure must have positive finite mass");
    total_mass_ = total;
}

ParameterMeasure ParameterMeasure::discrete(std::vector<Atom> atoms) {
    ParameterMeasure m;
    m.atoms_ = std::move(atoms);
    m.finalize();
    return m;
}

ParameterMeasure ParameterMeasure::cauchy(double theta, double sigma) {
    if (!std::isfinite(theta)) throw InvalidArgument("cauchy: theta must be finite");
    if (sigma == kInf) return discrete({{theta, 1.0}});
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("cauchy: sigma must be positive");
    ParameterMeasure m;
    m.cont_ = ContinuousPart{CauchyLaw{theta, sigma}, 1.0, Interval{}};
    m.finalize();
    return m;
}

ParameterMeasure ParameterMeasure::gaussian(double mass, double theta, double sd) {
    if (!(mass > 0.0) || !std::isfinite(theta) || !(sd > 0.0) || !std::isfinite(sd))
        throw InvalidArgument("gaussian: need mass > 0, finite theta, sd > 0");
    ParameterMeasure m;
    m.cont_ = ContinuousPart{GaussianLaw{theta, sd}, mass, Interval{}};
    m.finalize();
    return m;
}

ParameterMeasure ParameterMeasure::uniform01(double mass) {
    if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidArgument("uniform01: mass must be positive");
    ParameterMeasure m;
    m.cont_ = ContinuousPart{UniformLaw{0.0, 1.0}, mass, Interval{}};
    m.finalize();
    return m;
}

ParameterMeasure ParameterMeasure::custom_density(std::function<double(double)> density, Interval support, double mass) {
    if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidArgument("custom density: mass must be positive");
    if (!(support.hi > support.lo)) throw InvalidArgument("custom density: empty support");
    FunctionLaw law{std::move(density), support, 1.0};
    const double norm = function_law_integral(law, [](double) { return 1.0; }, support.lo, support.hi);
    if (!(norm > 0.0) || !std::isfinite(norm)) throw InvalidArgument("custom density: density must have positive finite integral");
    law.norm = norm;
    ParameterMeasure m;
    m.cont_ = ContinuousPart{std::move(law), mass, Interval{}};
    m.finalize();
    return m;
}

ParameterMeasure ParameterMeasure::density_table(std::vector<double> x, std::vector<double> pdf, double mass) {
    if (x.size() != pdf.size() || x.size() < 2) throw InvalidArgument("density table needs at least two [x, pdf] rows");
    if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidArgument("density table: mass must be positive");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(pdf[i]) || pdf[i] < 0.0)
            throw InvalidArgument("density table: entries must be finite with pdf >= 0");
        if (i > 0 && !(x[i] > x[i - 1])) throw InvalidArgument("density table: abscissae must increase strictly");
    }
    std::vector<double> cum(x.size(), 0.0);
    for (std::size_t i = 1; i < x.size(); ++i) cum[i] = cum[i - 1] + 0.5 * (pdf[i] + pdf[i - 1]) * (x[i] - x[i - 1]);
    const double total = cum.back();
    if (!(total > 0.0)) throw InvalidArgument("density table integrates to zero");
    for (std::size_t i = 0; i < x.size(); ++i) {
        pdf[i] /= total;
        cum[i] /= total;
    }
    ParameterMeasure m;
    m.cont_ = ContinuousPart{TabulatedLaw{std::move(x), std::move(pdf), std::move(cum)}, mass, Interval{}};
    m.finalize();
    return m;
}

ParameterMeasure ParameterMeasure::mixed(std::vector<Atom> atoms, std::optional<ContinuousPart> part) {
    ParameterMeasure m;
    m.atoms_ = std::move(atoms);
    m.cont_ = std::move(part);
    m.finalize();
    return m;
}

MeasureKind ParameterMeasure::kind() const {
    if (!cont_) return MeasureKind::Discrete;
    if (!atoms_.empty() || !cont_->full_window()) return MeasureKind::Mixed;
    return std::visit(
        [](const auto& l) {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, CauchyLaw>) return MeasureKind::Cauchy;
            else if constexpr (std::is_same_v<T, GaussianLaw>) return MeasureKind::Gaussian;
            else if constexpr (std::is_same_v<T, UniformLaw>)
                return (l.lo == 0.0 && l.hi == 1.0) ? MeasureKind::Uniform01 : MeasureKind::CustomDensity;
            else return MeasureKind::CustomDensity;
        },
        cont_->law);
}

double ParameterMeasure::cdf(double u) const {
    double s = 0.0;
    for (const Atom& a : atoms_) {
        if (a.x <= u) s += a.mass;
    }
    if (cont_) s += cont_->cdf(u);
    return std::min(s, total_mass_);
}

Interval ParameterMeasure::hull() const {
    Interval h{kInf, -kInf};
    for (const Atom& a : atoms_) {
        h.lo = std::min(h.lo, a.x);
        h.hi = std::max(h.hi, a.x);
    }
    if (cont_) {
        const Interval s = cont_->support();
        h.lo = std::min(h.lo, s.lo);
        h.hi = std::max(h.hi, s.hi);
    }
    return h;
}

double ParameterMeasure::max_atom_mass() const {
    double m = 0.0;
    for (const Atom& a : atoms_) m = std::max(m, a.mass);
    return m;
}

double ParameterMeasure::mass_at(double x) const {
    for (const Atom& a : atoms_) {
        if (a.x == x) return a.mass;
    }
    return 0.0;
}

bool ParameterMeasure::is_degenerate() const { return !cont_ && atoms_.size() == 1; }

ParameterMeasure ParameterMeasure::reflected() const {
    std::vector<Atom> atoms;
    for (const Atom& a : atoms_) atoms.push_back({-a.x, a.mass});
    std::optional<ContinuousPart> part;
    if (cont_) {
        ContinuousLaw law = std::visit(
            [](const auto& l) -> ContinuousLaw {
                using T = std::decay_t<decltype(l)>;
                if constexpr (std::is_same_v<T, CauchyLaw>) return CauchyLaw{-l.theta, l.sigma};
                else if constexpr (std::is_same_v<T, GaussianLaw>) return GaussianLaw{-l.theta, l.sd};
                else if constexpr (std::is_same_v<T, UniformLaw>) return UniformLaw{-l.hi, -l.lo};
                else if constexpr (std::is_same_v<T, TabulatedLaw>) {
                    TabulatedLaw r;
                    for (std::size_t i = l.x.size(); i-- > 0;) {
                        r.x.push_back(-l.x[i]);
                        r.pdf.push_back(l.pdf[i]);
                        r.cum.push_back(1.0 - l.cum[i]);
                    }
                    return r;
                } else {
                    auto f = l.density;
                    return FunctionLaw{[f](double x) { return f(-x); }, Interval{-l.support.hi, -l.support.lo}, l.norm};
                }
            },
            cont_->law);
        part = ContinuousPart{std::move(law), cont_->scale, Interval{-cont_->window.hi, -cont_->window.lo}};
    }
    return mixed(std::move(atoms), std::move(part));
}

bool ParameterMeasure::is_symmetric(double tol) const {
    const ParameterMeasure r = reflected();
    if (r.atoms_.size() != atoms_.size()) return false;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (std::abs(r.atoms_[i].x - atoms_[i].x) > tol * std::max(1.0, std::abs(atoms_[i].x))) return false;
        if (std::abs(r.atoms_[i].mass - atoms_[i].mass) > tol * std::max(1.0, atoms_[i].mass)) return false;
    }
    if (!cont_) return true;
    const Interval w = cont_->window;
    if (w.lo != -w.hi) return false;
    const Interval s = cont_->support();
    const double reach = s.bounded() ? std::max(std::abs(s.lo), std::abs(s.hi)) : 10.0 * scale();
    for (int i = 1; i <= 16; ++i) {
        const double x = reach * i / 17.0;
        const double d1 = cont_->density(x);
        const double d2 = cont_->density(-x);
        if (std::abs(d1 - d2) > tol * std::max(1.0, std::abs(d1))) return false;
    }
    return true;
}

double ParameterMeasure::scale() const {
    double s = 0.0;
    for (const Atom& a : atoms_) s = std::max(s, std::abs(a.x));
    if (cont_) {
        s = std::max(s, std::abs(law_quantile(cont_->law, 0.25)));
        s = std::max(s, std::abs(law_quantile(cont_->law, 0.75)));
    }
    return s > 0.0 ? s : 1.0;
}

double integrate_measure(const ParameterMeasure& alpha, const std::function<double(double)>& h, const QuadratureConfig& cfg) {
    double s = 0.0;
    for (const Atom& a : alpha.atoms()) s += a.mass * h(a.x);
    if (!alpha.continuous()) return s;
    const ContinuousPart& c = *alpha.continuous();
    const Interval sup = c.support();
    if (const auto* cl = std::get_if<CauchyLaw>(&c.law)) {
        // x = theta + tan(phi)/sigma turns the Cauchy law into dphi/pi.
        const double p0 = std::atan(cl->sigma * (sup.lo - cl->theta));
        const double p1 = std::atan(cl->sigma * (sup.hi - cl->theta));
        auto g = [&](double phi) { return cplx(h(cl->theta + std::tan(phi) / cl->sigma) / M_PI, 0.0); };
        const double bp[] = {std::atan(-cl->theta * cl->sigma)};
        return s + c.scale * integrate(g, p0, p1, cfg, bp).value.real();
    }
    double lo = sup.lo;
    double hi = sup.hi;
    if (const auto* gl = std::get_if<GaussianLaw>(&c.law)) {
        lo = std::max(lo, gl->theta - kGaussianReach * gl->sd);
        hi = std::min(hi, gl->theta + kGaussianReach * gl->sd);
    }
    auto g = [&](double x) { return cplx(h(x) * c.density(x), 0.0); };
    if (std::isfinite(lo) && std::isfinite(hi)) {
        std::vector<double> bp{0.0};
        if (const auto* t = std::get_if<TabulatedLaw>(&c.law)) {
            if (t->x.size() <= 256) bp.insert(bp.end(), t->x.begin(), t->x.end());
        }
        return s + integrate(g, lo, hi, cfg, bp).value.real();
    }
    const double mid = std::isfinite(lo) ? lo : (std::isfinite(hi) ? hi : 0.0);
    double v = 0.0;
    if (mid > lo) v += integrate_half_line(g, mid, -1, cfg).value.real();
    if (mid < hi) v += integrate_half_line(g, mid, +1, cfg).value.real();
    return s + v;
}

LogMoment log_moment(const ParameterMeasure& alpha, const QuadratureConfig& cfg) {
    auto lg = [](double x) { return std::log1p(std::abs(x)); };
    if (!alpha.continuous()) {
        double s = 0.0;
        for (const Atom& a : alpha.atoms()) s += a.mass * lg(a.x);
        return {s, true};
    }
    const ContinuousPart& c = *alpha.continuous();
    const Interval sup = c.support();
    const bool function_tails = std::holds_alternative<FunctionLaw>(c.law) && !sup.bounded();
    if (!function_tails) {
        try {
            return {integrate_measure(alpha, lg, cfg), true};
        } catch (const ToleranceFailure& e) {
            throw Indeterminate(std::string("log moment: ") + e.what());
        }
    }
    // Octave tails for densities with unbounded support.
    double body = 0.0;
    for (const Atom& a : alpha.atoms()) body += a.mass * lg(a.x);
    auto piece = [&](double lo, double hi) -> double {
        lo = std::max(lo, sup.lo);
        hi = std::min(hi, sup.hi);
        if (!(hi > lo)) return 0.0;
        try {
            return integrate([&](double x) { return cplx(lg(x) * c.density(x), 0.0); }, lo, hi, cfg).value.real();
        } catch (const ToleranceFailure& e) {
            throw Indeterminate(std::string("log moment: ") + e.what());
        }
    };
    body += piece(-1.0, 1.0);
    constexpr double kRatio = 0.9;
    constexpr int kRun = 8;
    double total = body;
    double prev = -1.0;
    int slow = 0;
    int fast = 0;
    for (int j = 0; j < 1000; ++j) {
        const double lo = std::ldexp(1.0, j);
        const double hi = std::ldexp(1.0, j + 1);
        const double tj = piece(lo, hi) + piece(-hi, -lo);
        total += tj;
        if (!std::isfinite(total)) return {kInf, false};
        if (prev > 0.0) {
            if (tj >= kRatio * prev) {
                ++slow;
                fast = 0;
            } else {
                ++fast;
                slow = 0;
            }
        } else if (prev == 0.0 && tj == 0.0) {
            ++fast;
        }
        if (slow >= kRun) return {kInf, false};
        if (fast >= kRun && tj * kRatio / (1.0 - kRatio) <= cfg.rel_tol * std::abs(total)) return {total, true};
        if (tj == 0.0 && lo >= std::max(std::abs(sup.lo), std::abs(sup.hi))) return {total, true};
        prev = tj;
    }
    throw Indeterminate("log moment: tail integrals neither decayed nor stalled");
}

ParameterMeasure truncate(const ParameterMeasure& alpha, double k) {
    if (!(k > 0.0)) throw InvalidArgument("truncate: k must be positive");
    std::vector<Atom> atoms;
    for (const Atom& a : alpha.atoms()) atoms.push_back({std::clamp(a.x, -k, k), a.mass});
    std::optional<ContinuousPart> part;
    if (alpha.continuous()) {
        const ContinuousPart& c = *alpha.continuous();
        const Interval sup = c.support();
        if (sup.lo >= -k && sup.hi <= k) {
            part = c;
        } else {
            const double left = c.cdf(-k);
            const double right = c.mass() - c.cdf(k);
            if (left > 0.0) atoms.push_back({-k, left});
            if (right > 0.0) atoms.push_back({k, right});
            ContinuousPart inner = c;
            inner.window = {std::max(c.window.lo, -k), std::min(c.window.hi, k)};
            if (inner.window.hi > inner.window.lo && inner.mass() > 0.0) part = inner;
        }
    }
    return ParameterMeasure::mixed(std::move(atoms), std::move(part));
}

Transform Transform::identity() { return linear(1.0, 0.0); }

Transform Transform::linear(double s, double c) {
    return Transform{[s, c](double x) { return s * x + c; }, std::make_pair(s, c)};
}

Transform Transform::general(std::function<double(double)> fn) { return Transform{std::move(fn), std::nullopt}; }

ParameterMeasure discretize(const ParameterMeasure& alpha, int n) {
    if (n < 1) throw InvalidArgument("discretize: need at least one atom");
    std::vector<Atom> atoms = alpha.atoms();
    if (alpha.continuous()) {
        const ContinuousPart& c = *alpha.continuous();
        const double p0 = law_cdf(c.law, c.window.lo);
        const double p1 = law_cdf(c.law, c.window.hi);
        const double m = c.mass() / n;
        for (int i = 0; i < n; ++i) {
            const double p = p0 + (i + 0.5) / n * (p1 - p0);
            atoms.push_back({law_quantile(c.law, p), m});
        }
    }
    return ParameterMeasure::discrete(std::move(atoms));
}

ParameterMeasure pushforward(const ParameterMeasure& alpha, const Transform& f, int grid_level) {
    if (f.affine && f.affine->first == 1.0 && f.affine->second == 0.0) return alpha;
    if (f.affine && f.affine->first == 0.0) {
        return ParameterMeasure::discrete({{f.affine->second, alpha.total_mass()}});
    }
    if (!alpha.continuous() || !f.affine) {
        if (alpha.continuous() && grid_level <= 0)
            throw Refused("pushforward: non-affine map of a continuous measure needs a grid level");
        const ParameterMeasure d = alpha.continuous() ? discretize(alpha, grid_level) : alpha;
        std::vector<Atom> atoms;
        for (const Atom& a : d.atoms()) atoms.push_back({f(a.x), a.mass});
        return ParameterMeasure::discrete(std::move(atoms));
    }
    const double s = f.affine->first;
    const double c0 = f.affine->second;
    std::vector<Atom> atoms;
    for (const Atom& a : alpha.atoms()) atoms.push_back({s * a.x + c0, a.mass});
    const ContinuousPart& c = *alpha.continuous();
    auto map_pt = [&](double x) { return s * x + c0; };
    ContinuousLaw law = std::visit(
        [&](const auto& l) -> ContinuousLaw {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, CauchyLaw>) return CauchyLaw{map_pt(l.theta), l.sigma / std::abs(s)};
            else if constexpr (std::is_same_v<T, GaussianLaw>) return GaussianLaw{map_pt(l.theta), std::abs(s) * l.sd};
            else if constexpr (std::is_same_v<T, UniformLaw>)
                return UniformLaw{std::min(map_pt(l.lo), map_pt(l.hi)), std::max(map_pt(l.lo), map_pt(l.hi))};
            else if constexpr (std::is_same_v<T, TabulatedLaw>) {
                TabulatedLaw r;
                const std::size_t n = l.x.size();
                for (std::size_t k = 0; k < n; ++k) {
                    const std::size_t i = s > 0 ? k : n - 1 - k;
                    r.x.push_back(map_pt(l.x[i]));
                    r.pdf.push_back(l.pdf[i] / std::abs(s));
                    r.cum.push_back(s > 0 ? l.cum[i] : 1.0 - l.cum[i]);
                }
                return r;
            } else {
                auto g = l.density;
                const Interval sup{std::min(map_pt(l.support.lo), map_pt(l.support.hi)),
                                   std::max(map_pt(l.support.lo), map_pt(l.support.hi))};
                return FunctionLaw{[g, s, c0](double y) { return g((y - c0) / s) / std::abs(s); }, sup, l.norm};
            }
        },
        c.law);
    const Interval w{std::min(map_pt(c.window.lo), map_pt(c.window.hi)), std::max(map_pt(c.window.lo), map_pt(c.window.hi))};
    const Interval window = std::isnan(w.lo) || std::isnan(w.hi) ? Interval{} : w;
    return ParameterMeasure::mixed(std::move(atoms), ContinuousPart{std::move(law), c.scale, window});
}

ThorinResult thorin_measure(const ParameterMeasure& alpha, int grid_level) {
    const ParameterMeasure d = alpha.continuous() ? discretize(alpha, grid_level) : alpha;
    std::vector<Atom> atoms;
    double dropped = 0.0;
    for (const Atom& a : d.atoms()) {
        if (a.x == 0.0) dropped += a.mass;
        else atoms.push_back({1.0 / a.x, a.mass});
    }
    ThorinResult r{std::nullopt, dropped};
    if (!atoms.empty()) r.measure = ParameterMeasure::discrete(std::move(atoms));
    return r;
}

}  // namespace dpmeans
