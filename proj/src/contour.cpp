#include "dpmeans/contour.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dpmeans {

namespace {

constexpr cplx kI{0.0, 1.0};

struct PieceVisitor {
    const HoloFn& g;
    const QuadratureConfig& cfg;
    EndpointExponents ends;

    QuadResult operator()(const LineSegment& s) const {
        const cplx dz = s.z1 - s.z0;
        auto f = [&](double u) { return g(s.z0 + u * dz) * dz; };
        if (ends.lo == 0.0 && ends.hi == 0.0) return integrate(f, 0.0, 1.0, cfg);
        // Use exact distances from the endpoints to keep the singular factor accurate.
        auto fe = [&](double u, double from_lo, double to_hi) {
            const cplx z = from_lo <= to_hi ? s.z0 + from_lo * dz : s.z1 - to_hi * dz;
            (void)u;
            return g(z) * dz;
        };
        return integrate_interval(fe, 0.0, 1.0, ends, cfg);
    }

    QuadResult operator()(const CircularArc& a) const {
        const double span = a.theta_end - a.theta_start;
        auto f = [&](double u) {
            const cplx e = std::polar(1.0, a.theta_start + u * span);
            return g(a.center + a.radius * e) * (kI * a.radius * e * span);
        };
        if (ends.lo == 0.0 && ends.hi == 0.0) return integrate(f, 0.0, 1.0, cfg);
        return integrate_interval(f, 0.0, 1.0, ends, cfg);
    }

    QuadResult operator()(const VerticalPvLine& v) const {
        QuadratureConfig c = cfg;
        if (!v.R_schedule.empty()) c.pv_R_schedule = v.R_schedule;
        PvResult r = pv_vertical_line(g, v.gamma, c);
        return {r.value, r.err_est, 0, true};
    }
};

std::vector<cplx> aitken_step(const std::vector<cplx>& s) {
    std::vector<cplx> out;
    for (std::size_t i = 0; i + 2 < s.size(); ++i) {
        const cplx d1 = s[i + 1] - s[i];
        const cplx d2 = s[i + 2] - s[i + 1];
        const cplx den = d2 - d1;
        if (std::abs(den) <= 1e-300 || std::abs(den) <= 1e-14 * (std::abs(d1) + std::abs(d2))) out.push_back(s[i + 2]);
        else out.push_back(s[i + 2] - d2 * d2 / den);
    }
    return out;
}

cplx iterated_aitken(const std::vector<cplx>& s, int max_depth) {
    std::vector<cplx> cur = s;
    int depth = 0;
    while (cur.size() >= 3 && depth < max_depth) {
        cur = aitken_step(cur);
        ++depth;
    }
    return cur.back();
}

}  // namespace

cplx piece_start(const ContourPiece& p) {
    return std::visit(
        [](const auto& x) -> cplx {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, LineSegment>) return x.z0;
            else if constexpr (std::is_same_v<T, CircularArc>) return x.center + std::polar(x.radius, x.theta_start);
            else return cplx(x.gamma, -INFINITY);
        },
        p);
}

cplx piece_end(const ContourPiece& p) {
    return std::visit(
        [](const auto& x) -> cplx {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, LineSegment>) return x.z1;
            else if constexpr (std::is_same_v<T, CircularArc>) return x.center + std::polar(x.radius, x.theta_end);
            else return cplx(x.gamma, INFINITY);
        },
        p);
}

Contour::Contour(std::vector<ContourPiece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw InvalidArgument("contour needs at least one piece");
    const bool has_pv = std::any_of(pieces_.begin(), pieces_.end(),
                                    [](const ContourPiece& p) { return std::holds_alternative<VerticalPvLine>(p); });
    if (has_pv && pieces_.size() != 1) throw InvalidArgument("a vertical PV line must stand alone");
    if (!has_pv && max_gap() > 1e-12) throw InvalidArgument("contour pieces are not endpoint-continuous");
}

double Contour::max_gap() const {
    double gap = 0.0;
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i)
        gap = std::max(gap, std::abs(piece_end(pieces_[i]) - piece_start(pieces_[i + 1])));
    return gap;
}

bool Contour::closed(double tol) const {
    if (std::holds_alternative<VerticalPvLine>(pieces_.front())) return false;
    return std::abs(piece_end(pieces_.back()) - piece_start(pieces_.front())) <= tol;
}

QuadResult integrate_contour(const HoloFn& g, const Contour& contour, const QuadratureConfig& cfg, ContourEnds ends) {
    QuadResult total;
    const auto& ps = contour.pieces();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        EndpointExponents e;
        if (i == 0) e.lo = ends.start;
        if (i + 1 == ps.size()) e.hi = ends.end;
        QuadResult r = std::visit(PieceVisitor{g, cfg, e}, ps[i]);
        total.value += r.value;
        total.err_est += r.err_est;
        total.evaluations += r.evaluations;
    }
    return total;
}

Contour build_loop_01(const QuadratureConfig& cfg) {
    const double eps = cfg.loop_eps;
    const double tau = cfg.loop_tau;
    if (!(tau > 0.0) || !(eps > 0.0)) throw InvalidArgument("loop around [0,1]: eps and tau must be positive");
    if (!(tau < eps)) throw InvalidArgument("loop around [0,1]: tau must be smaller than eps");
    if (!(eps < 1.0)) throw InvalidArgument("loop around [0,1]: eps must be smaller than 1");
    const double eta = std::asin(tau / eps);
    const cplx below{1.0 - eps * std::cos(eta), -tau};
    const cplx above{1.0 - eps * std::cos(eta), tau};
    return Contour({LineSegment{0.0, below}, CircularArc{1.0, eps, -M_PI + eta, M_PI - eta}, LineSegment{above, 0.0}});
}

PvResult pv_vertical_line(const HoloFn& g, double gamma, const QuadratureConfig& cfg, double core_radius) {
    if (!(gamma > 0.0) && !(gamma < 0.0)) throw InvalidArgument("pv_vertical_line: gamma must be nonzero");
    const auto& sched = cfg.pv_R_schedule;
    if (sched.size() < 4) throw InvalidArgument("pv_vertical_line: schedule too short");
    const double R0 = std::max(core_radius, 0.0) + sched.front();
    auto on_line = [&](double y) { return g(cplx(gamma, y)) * kI; };
    const double bp[] = {0.0};
    QuadResult core = integrate(on_line, -R0, R0, cfg, bp);

    std::vector<cplx> partial{core.value};
    double quad_err = core.err_est;
    cplx best = core.value;
    double best_err = INFINITY;
    cplx prev_est = core.value;
    double prev_diff = INFINITY;
    int terms = 1;
    double lo = R0;
    for (std::size_t k = 1; k < sched.size(); ++k) {
        const double hi = R0 + (sched[k] - sched.front());
        auto pair = [&](double y) { return (g(cplx(gamma, y)) + g(cplx(gamma, -y))) * kI; };
        QuadResult inc = integrate(pair, lo, hi, cfg);
        quad_err += inc.err_est;
        partial.push_back(partial.back() + inc.value);
        lo = hi;
        ++terms;
        if (partial.size() < 5) continue;
        const int depth = std::min<int>(6, static_cast<int>(partial.size() - 1) / 2);
        const cplx est = iterated_aitken(partial, depth);
        const double diff = std::abs(est - prev_est);
        const double err = std::max(diff, prev_diff);
        if (err < best_err) {
            best_err = err;
            best = est;
        }
        prev_est = est;
        prev_diff = diff;
        const double target = 100.0 * std::max(cfg.abs_tol, cfg.rel_tol * std::abs(est));
        if (err <= target) break;
    }
    const double total_err = best_err + quad_err;
    if (!(best_err <= 1e-5 * std::max(1.0, std::abs(best)))) {
        std::ostringstream msg;
        msg << "pv_vertical_line: partial integrals did not settle (last change " << best_err << ")";
        throw ToleranceFailure(msg.str(), best, total_err);
    }
    return {best, total_err, terms};
}

}  // namespace dpmeans
