#include "dpmeans/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <queue>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace dpmeans {

namespace {

struct Gk21 {
    std::vector<double> xk;  // non-negative Kronrod abscissae, xk[0] = 0
    std::vector<double> wk;  // Kronrod weights
    std::vector<double> wg;  // Gauss weights on the same abscissae (0 where not a Gauss node)

    Gk21() {
        using gk = boost::math::quadrature::gauss_kronrod<double, 21>;
        using g = boost::math::quadrature::gauss<double, 10>;
        xk.assign(gk::abscissa().begin(), gk::abscissa().end());
        wk.assign(gk::weights().begin(), gk::weights().end());
        wg.assign(xk.size(), 0.0);
        const auto& gx = g::abscissa();
        const auto& gw = g::weights();
        for (std::size_t j = 0; j < gx.size(); ++j) {
            for (std::size_t i = 0; i < xk.size(); ++i) {
                if (std::abs(xk[i] - gx[j]) < 1e-14) wg[i] = gw[j];
            }
        }
    }
};

const Gk21& gk21() {
    static const Gk21 rule;
    return rule;
}

struct Piece {
    double a, b;
    cplx value;
    double err;
    bool operator<(const Piece& o) const { return err < o.err; }
};

Piece eval_piece(const ComplexFn& f, double a, double b) {
    const Gk21& r = gk21();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const std::size_t n = r.xk.size();
    cplx fv[2 * 11];
    cplx kron{0.0, 0.0};
    cplx gauss{0.0, 0.0};
    fv[0] = f(c);
    kron += r.wk[0] * fv[0];
    gauss += r.wg[0] * fv[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double dx = h * r.xk[i];
        const cplx f1 = f(c - dx);
        const cplx f2 = f(c + dx);
        fv[2 * i - 1] = f1;
        fv[2 * i] = f2;
        kron += r.wk[i] * (f1 + f2);
        gauss += r.wg[i] * (f1 + f2);
    }
    const cplx mean = kron * 0.5;
    double resasc = r.wk[0] * std::abs(fv[0] - mean);
    double resabs = r.wk[0] * std::abs(fv[0]);
    for (std::size_t i = 1; i < n; ++i) {
        resasc += r.wk[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));
        resabs += r.wk[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
    }
    const double ah = std::abs(h);
    resasc *= ah;
    resabs *= ah;
    double err = std::abs((kron - gauss) * h);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    if (!std::isfinite(std::abs(kron))) err = std::numeric_limits<double>::infinity();
    return {a, b, kron * h, err};
}

}  // namespace

QuadResult gauss_kronrod(const ComplexFn& f, double a, double b, const QuadratureConfig& cfg,
                         std::span<const double> breakpoints) {
    QuadResult out;
    if (a == b) return out;
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }
    std::vector<double> edges{a};
    std::vector<double> bp(breakpoints.begin(), breakpoints.end());
    std::sort(bp.begin(), bp.end());
    for (double x : bp) {
        if (x > edges.back() && x < b) edges.push_back(x);
    }
    edges.push_back(b);

    std::priority_queue<Piece> heap;
    std::vector<Piece> done;
    cplx total{0.0, 0.0};
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Piece p = eval_piece(f, edges[i], edges[i + 1]);
        out.evaluations += 21;
        total += p.value;
        total_err += p.err;
        heap.push(p);
    }
    int pieces = static_cast<int>(heap.size());
    const double min_width = 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
    while (!heap.empty()) {
        const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
        if (total_err <= target) break;
        if (pieces >= cfg.max_subdivisions) {
            out.converged = false;
            break;
        }
        Piece worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.b - worst.a <= min_width || mid <= worst.a || mid >= worst.b) {
            done.push_back(worst);
            continue;
        }
        Piece left = eval_piece(f, worst.a, mid);
        Piece right = eval_piece(f, mid, worst.b);
        out.evaluations += 42;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++pieces;
    }
    // Re-sum to shed accumulated cancellation in the running totals.
    total = 0.0;
    total_err = 0.0;
    while (!heap.empty()) {
        done.push_back(heap.top());
        heap.pop();
    }
    std::sort(done.begin(), done.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
    for (const Piece& p : done) {
        total += p.value;
        total_err += p.err;
    }
    const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
    out.converged = out.converged && total_err <= 100.0 * target;
    out.value = sign * total;
    out.err_est = total_err;
    return out;
}

QuadResult integrate(const ComplexFn& f, double a, double b, const QuadratureConfig& cfg,
                     std::span<const double> breakpoints) {
    QuadResult r = gauss_kronrod(f, a, b, cfg, breakpoints);
    if (!r.converged) {
        std::ostringstream msg;
        msg << "adaptive quadrature on [" << a << ", " << b << "] did not reach tolerance (err "
            << r.err_est << ")";
        throw ToleranceFailure(msg.str(), r.value, r.err_est);
    }
    return r;
}

double integrate_real(const RealFn& f, double a, double b, const QuadratureConfig& cfg,
                      std::span<const double> breakpoints) {
    return integrate([&](double x) { return cplx(f(x), 0.0); }, a, b, cfg, breakpoints).value.real();
}

QuadResult integrate_interval(const EndpointFn& g, double lo, double hi, EndpointExponents ends,
                              const QuadratureConfig& cfg, std::span<const double> breakpoints) {
    if (!(hi > lo)) throw InvalidArgument("integrate_interval: empty or reversed interval");
    if (ends.lo <= -1.0 || ends.hi <= -1.0) throw InvalidArgument("integrate_interval: non-integrable endpoint exponent");
    const double half = 0.5 * (hi - lo);
    const double mid = lo + half;
    // Exponent 1/(1+p) only when the endpoint is singular.
    const double kl = ends.lo < 0.0 ? 1.0 / (1.0 + ends.lo) : 1.0;
    const double kh = ends.hi < 0.0 ? 1.0 / (1.0 + ends.hi) : 1.0;

    std::vector<double> bl, bh;
    for (double u : breakpoints) {
        if (u > lo && u < mid) bl.push_back(std::pow((u - lo) / half, 1.0 / kl));
        else if (u > mid && u < hi) bh.push_back(std::pow((hi - u) / half, 1.0 / kh));
    }
    auto left = [&](double s) -> cplx {
        const double d = half * std::pow(s, kl);
        const double jac = half * kl * std::pow(s, kl - 1.0);
        return g(lo + d, d, (hi - lo) - d) * jac;
    };
    auto right = [&](double s) -> cplx {
        const double d = half * std::pow(s, kh);
        const double jac = half * kh * std::pow(s, kh - 1.0);
        return g(hi - d, (hi - lo) - d, d) * jac;
    };
    QuadResult a = integrate(left, 0.0, 1.0, cfg, bl);
    QuadResult b = integrate(right, 0.0, 1.0, cfg, bh);
    return {a.value + b.value, a.err_est + b.err_est, a.evaluations + b.evaluations, true};
}

QuadResult integrate_interval(const ComplexFn& g, double lo, double hi, EndpointExponents ends,
                              const QuadratureConfig& cfg, std::span<const double> breakpoints) {
    return integrate_interval([&](double u, double, double) { return g(u); }, lo, hi, ends, cfg, breakpoints);
}

QuadResult integrate_half_line(const ComplexFn& f, double a, int direction, const QuadratureConfig& cfg) {
    const double dir = direction > 0 ? 1.0 : -1.0;
    auto mapped = [&](double s) -> cplx {
        const double r = 1.0 - s;
        const double x = a + dir * s / r;
        const cplx v = f(x);
        if (v == 0.0) return 0.0;
        return v / (r * r);
    };
    return integrate(mapped, 0.0, 1.0, cfg);
}

namespace {

std::vector<QuadNode> golub_welsch_legendre(int n) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = b;
        J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    std::vector<QuadNode> out(n);
    for (int i = 0; i < n; ++i) {
        const double v = es.eigenvectors()(0, i);
        out[i] = {es.eigenvalues()(i), 2.0 * v * v};
    }
    return out;
}

const std::vector<QuadNode>& legendre_rule(int n) {
    static std::mutex m;
    static std::map<int, std::vector<QuadNode>> cache;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, golub_welsch_legendre(n)).first;
    return it->second;
}

}  // namespace

std::vector<QuadNode> gauss_legendre_panels(std::span<const double> edges, int order) {
    if (order < 1) throw InvalidArgument("gauss_legendre_panels: order must be positive");
    const auto& rule = legendre_rule(order);
    std::vector<QuadNode> out;
    out.reserve(edges.size() * order);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double c = 0.5 * (edges[i] + edges[i + 1]);
        const double h = 0.5 * (edges[i + 1] - edges[i]);
        if (h <= 0.0) continue;
        for (const QuadNode& q : rule) out.push_back({c + h * q.x, h * q.w});
    }
    return out;
}

std::vector<QuadNode> gauss_hermite(int n) {
    if (n < 1) throw InvalidArgument("gauss_hermite: n must be positive");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = std::sqrt(0.5 * k);
        J(k, k - 1) = b;
        J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    const double mu0 = std::sqrt(M_PI);
    std::vector<QuadNode> out(n);
    for (int i = 0; i < n; ++i) {
        const double v = es.eigenvectors()(0, i);
        out[i] = {es.eigenvalues()(i), mu0 * v * v};
    }
    return out;
}

std::vector<QuadNode> gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1) throw InvalidArgument("gauss_jacobi: n must be positive");
    if (!(alpha > -1.0) || !(beta > -1.0)) throw InvalidArgument("gauss_jacobi: exponents must exceed -1");
    const double ab = alpha + beta;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + ab;
        J(k, k) = k == 0 ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (s * (s + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + ab;
        // k (k + ab) / (s - 1) is 1 at k = 1 even when ab = -1
        const double r = k == 1 ? 1.0 : k * (k + ab) / (s - 1.0);
        const double b2 = 4.0 * r * (k + alpha) * (k + beta) / (s * s * (s + 1.0));
        J(k, k - 1) = J(k - 1, k) = std::sqrt(b2);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                                std::lgamma(ab + 2.0));
    std::vector<QuadNode> out(n);
    for (int i = 0; i < n; ++i) {
        const double v = es.eigenvectors()(0, i);
        out[i] = {es.eigenvalues()(i), mu0 * v * v};
    }
    return out;
}

}  // namespace dpmeans
