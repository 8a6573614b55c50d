#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "dpmeans/config.hpp"
#include "dpmeans/errors.hpp"
#include "dpmeans/quadrature.hpp"

namespace dpmeans {

using HoloFn = std::function<cplx(cplx)>;

struct LineSegment {
    cplx z0;
    cplx z1;
};

struct CircularArc {
    cplx center;
    double radius;
    double theta_start;
    double theta_end;
};

struct VerticalPvLine {
    double gamma;
    std::vector<double> R_schedule;
};

using ContourPiece = std::variant<LineSegment, CircularArc, VerticalPvLine>;

cplx piece_start(const ContourPiece& p);
cplx piece_end(const ContourPiece& p);

class Contour {
public:
    Contour() = default;
    explicit Contour(std::vector<ContourPiece> pieces);

    const std::vector<ContourPiece>& pieces() const { return pieces_; }
    bool closed(double tol = 1e-12) const;
    // Largest gap between consecutive piece endpoints.
    double max_gap() const;

private:
    std::vector<ContourPiece> pieces_;
};

// Algebraic behaviour of the integrand at the first start point and the last end point
// of the contour; absorbed by substitution, as for real intervals.
struct ContourEnds {
    double start = 0.0;
    double end = 0.0;
};

QuadResult integrate_contour(const HoloFn& g, const Contour& contour, const QuadratureConfig& cfg,
                             ContourEnds ends = {});

// Closed loop from 0 around w = 1 and back: segment to 1 - eps cos(eta) - i tau, circle of
// radius eps about 1 with eta = asin(tau / eps), segment back to 0. Requires 0 < tau < eps < 1.
Contour build_loop_01(const QuadratureConfig& cfg);

struct PvResult {
    cplx value;
    double err_est;
    int terms;  // partial integrals used
};

// Principal value of the integral of g over gamma - i inf .. gamma + i inf.
// The central part |Im w| <= core_radius is integrated directly; symmetric partial integrals
// beyond it follow cfg.pv_R_schedule (offsets) and are accelerated with iterated Aitken.
PvResult pv_vertical_line(const HoloFn& g, double gamma, const QuadratureConfig& cfg, double core_radius = 0.0);

}  // namespace dpmeans
