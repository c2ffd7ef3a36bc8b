#include "nlg/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "nlg/errors.hpp"

namespace nlg {

namespace {

double radial_factor(const Vec3& xi, double p, Convention c) {
    return c == Convention::Verbatim ? std::pow(norm(xi), p) : 1.0;
}

void check_p(double p) {
    if (!(p >= 1.0)) throw ParameterError("exponent p must be >= 1");
}

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

std::string to_string(Convention c) {
    return c == Convention::Verbatim ? "verbatim" : "calibrated";
}

Convention parse_convention(const std::string& text) {
    if (text == "verbatim") return Convention::Verbatim;
    if (text == "calibrated") return Convention::Calibrated;
    throw ParameterError("convention must be 'verbatim' or 'calibrated'");
}

double phi_p(const Mat3& A, double p, const DirectionRule& rule, Convention convention) {
    check_p(p);
    const double integral = integrate(rule, [&](const Vec3& xi) {
        return std::pow(std::abs(quadratic_form(A, xi)), 2.0 * p) * radial_factor(xi, p, convention);
    });
    return std::pow(integral, 1.0 / p);
}

double beta_p(double p, const DirectionRule& rule, Convention convention, const Vec3& nu) {
    check_p(p);
    if (std::abs(norm(nu) - 1.0) > 1e-12) throw ParameterError("beta_p needs a unit normal");
    const double integral = integrate(rule, [&](const Vec3& xi) {
        return std::pow(std::abs(dot(nu, xi)), p) * radial_factor(xi, p, convention);
    });
    return 0.5 * std::numbers::pi * std::pow(integral, 1.0 / p);
}

double p1_bulk_density(const Mat3& A, int n) {
    const Mat3 s = sym(A);
    const double tr = trace(s);
    return 0.5 * std::pow(std::numbers::pi, 0.5 * n) * (frobenius2(s) + 0.5 * tr * tr);
}

double plane_area_in_box(const PlaneJump& plane, const BoxDomain& box) {
    const int n = box.dim();
    const Vec3& nu = plane.normal;
    const double c = plane.offset;
    if (n == 1) {
        const double x = c / nu[0];
        return x > box.lower()[0] && x < box.upper()[0] ? 1.0 : 0.0;
    }
    if (n == 2) {
        const Vec3 p0 = c * nu;
        const Vec3 d{-nu[1], nu[0]};
        double t0 = -1e300, t1 = 1e300;
        for (int a = 0; a < 2; ++a) {
            if (d[a] == 0.0) {
                if (!(p0[a] > box.lower()[a] && p0[a] < box.upper()[a])) return 0.0;
                continue;
            }
            double s0 = (box.lower()[a] - p0[a]) / d[a], s1 = (box.upper()[a] - p0[a]) / d[a];
            if (s0 > s1) std::swap(s0, s1);
            t0 = std::max(t0, s0);
            t1 = std::min(t1, s1);
        }
        return std::max(0.0, t1 - t0);
    }
    // n = 3: polygon cut from the box by the plane
    std::vector<Vec3> pts;
    const Vec3& lo = box.lower();
    const Vec3& hi = box.upper();
    for (int axis = 0; axis < 3; ++axis) {
        const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
        for (int s1 = 0; s1 < 2; ++s1)
            for (int s2 = 0; s2 < 2; ++s2) {
                Vec3 p;
                p[a1] = s1 ? hi[a1] : lo[a1];
                p[a2] = s2 ? hi[a2] : lo[a2];
                if (std::abs(nu[axis]) < 1e-15) continue;
                const double t = (c - nu[a1] * p[a1] - nu[a2] * p[a2]) / nu[axis];
                if (t < lo[axis] || t > hi[axis]) continue;
                p[axis] = t;
                bool dup = false;
                for (const auto& q : pts) dup = dup || norm2(q - p) < 1e-24;
                if (!dup) pts.push_back(p);
            }
    }
    if (pts.size() < 3) return 0.0;
    Vec3 centroid;
    for (const auto& q : pts) centroid += q;
    centroid *= 1.0 / static_cast<double>(pts.size());
    Vec3 e1 = pts[0] - centroid;
    e1 *= 1.0 / norm(e1);
    const Vec3 e2 = cross(nu, e1);
    std::sort(pts.begin(), pts.end(), [&](const Vec3& a, const Vec3& b) {
        return std::atan2(dot(a - centroid, e2), dot(a - centroid, e1)) <
               std::atan2(dot(b - centroid, e2), dot(b - centroid, e1));
    });
    Vec3 acc;
    for (std::size_t i = 0; i < pts.size(); ++i) acc += cross(pts[i], pts[(i + 1) % pts.size()]);
    return 0.5 * std::abs(dot(acc, nu));
}

GriffithValue griffith_energy(const AnalyticField& u, const BoxDomain& omega, double p, const DirectionRule& rule,
                              Convention convention) {
    if (rule.dim() != omega.dim()) throw ParameterError("direction rule dimension does not match the domain");
    const FlatField f = u.flatten();
    GriffithValue g;
    g.convention = convention;
    g.bulk = phi_p(f.A, p, rule, convention) * omega.volume();
    double area = 0.0;
    for (const auto& j : f.jumps)
        if (norm2(j.amplitude()) > 0.0) area += plane_area_in_box(j, omega);
    if (area > 0.0) g.surface = beta_p(p, rule, convention) * area;
    g.total = g.bulk + g.surface;
    return g;
}

double bar_threshold(const DirectionRule& rule_1d, Convention convention) {
    if (rule_1d.dim() != 1) throw ParameterError("bar threshold needs a 1D rule");
    return std::sqrt(beta_p(1.0, rule_1d, convention) / phi_p(Mat3::identity(1), 1.0, rule_1d, convention));
}

}  // namespace nlg
