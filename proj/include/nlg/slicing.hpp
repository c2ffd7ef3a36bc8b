#pragma once

// One-dimensional sections t -> u(y + t xi) . xi of analytic fields, the 1D
// nonlocal energy
//     F_eps(v, A) = 1/eps int_A atan( (v(t+eps) - v(t))^2 / eps ) dt,
// 1D Mumford-Shah energies, the interval projection used in the lower-bound
// construction, and slice measures of analytic fields.

#include <optional>
#include <utility>
#include <vector>

#include "nlg/domain.hpp"
#include "nlg/energy.hpp"
#include "nlg/quad.hpp"

namespace nlg {

struct Interval {
    double a = 0.0;
    double b = 0.0;

    double length() const { return b - a; }
    bool contains(double t) const { return t > a && t < b; }
};

/// Affine piece v(t) = value_at_begin + slope (t - begin) on [begin, end].
struct Piece {
    double begin = 0.0;
    double end = 0.0;
    double value_at_begin = 0.0;
    double slope = 0.0;

    double value(double t) const { return value_at_begin + slope * (t - begin); }
    double value_at_end() const { return value(end); }
};

/// Piecewise-affine function with jumps on a union of open intervals.
struct Section1D {
    /// Sorted, non-overlapping pieces; consecutive pieces sharing an endpoint meet at a breakpoint.
    std::vector<Piece> pieces;
    /// Set when the slice runs inside a jump plane (xi . nu = 0 and y on the plane).
    bool degenerate = false;

    /// Maximal open intervals covered by the pieces.
    std::vector<Interval> domain() const;
    /// Value at t (right limit at breakpoints, left limit at the right end). Throws DomainError off the domain.
    double value(double t) const;
    /// Interior breakpoints t_k with their jump v(t_k+) - v(t_k-) (zero-amplitude breakpoints included,
    /// rounding-level differences reported as zero).
    std::vector<std::pair<double, double>> jumps() const;

    /// Piecewise-affine section from grid samples v_k at t0 + k h (continuous linear interpolant).
    static Section1D from_samples(double t0, double h, const std::vector<double>& values);
    /// Pieces with the given breakpoints/slopes; `jumps[k]` is the jump at breakpoints[k].
    static Section1D piecewise(double a, double b, double value_at_a, const std::vector<double>& breakpoints,
                               const std::vector<double>& slopes, const std::vector<double>& jumps);
};

/// Exact section of u along the line y + t xi, restricted to {t : y + t xi in E}.
/// Precrack slits are null sets on a line and are ignored. Without E the section runs over |t| < 1e6.
Section1D section(const AnalyticField& u, const Vec3& xi, const Vec3& y, const std::optional<Region>& E = {});

/// 1D energy on a finite union of intervals A, in closed form.
/// Throws DomainError unless A lies in Dom(v) and A + eps in Dom(v).
double F1d(const Section1D& v, const std::vector<Interval>& A, double eps);
double F1d(const Section1D& v, const Interval& A, double eps);

/// gamma * sum slope^2 |piece cap I| + number of nonzero jumps inside the open interval I.
double ms_1d(const Section1D& v, const Interval& I, double gamma);

/// Interval projection on the points a + z/j: affine on [a + z/j, a + (z+1)/j] when j Delta^2 <= pi/2,
/// otherwise constant halves with a jump at the midpoint. Covers every such interval inside Dom(v).
Section1D gobbino_project(const Section1D& v, double a, int j);

/// min{pi/2, (v(b) - v(a))^2 / (b - a)}; an endpoint on a breakpoint is moved inward by shift.
double lower_bound_1d(const Section1D& v, double a, double b, double shift = 0.0);

struct SliceMeasureValue {
    double ac_part = 0.0;
    double jump_count = 0.0;
    double total = 0.0;
};

/// |Dv|(I \ J1) and #(J1 cap I) for one section, J1 = jumps of amplitude > 1.
SliceMeasureValue slice_measure(const Section1D& v);

/// mu^xi_u(B) by a transverse midpoint rule of resolution h over the lines parallel to the unit vector xi.
double mu_xi(const AnalyticField& u, const Vec3& xi, const Region& B, int dim, double h);

/// Lower bound for hat-mu^p_u(Omega): best ball family of the strategy, per-ball
/// (int_S mu^xi_u(B)^p)^{1/p} with the sphere rule.
struct MuHatReport {
    double value = 0.0;
    BallFamily family;
    std::vector<double> per_ball;
};
MuHatReport mu_hat_p(const AnalyticField& u, const BoxDomain& domain, double p, const SphereRule& sphere,
                     const BallStrategy& strategy, double h);

/// int_S int_{Pi^xi} sum over jump points of (|[v]| ^ 1) dy dxi, transverse midpoint rule of resolution h.
double I_u1(const AnalyticField& u, const Region& B, const SphereRule& sphere, int dim, double h);

/// Antiderivative of atan(w^2).
double atan_sq_primitive(double w);

}  // namespace nlg
