#include "nlg/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <tuple>

#include "nlg/errors.hpp"

namespace nlg {

namespace {

constexpr double kTouch = 1e-12;
constexpr double kUnbounded = 1e6;

// {t : y + t xi in E} as an open interval (possibly empty: a >= b).
Interval line_range(const Region& E, const Vec3& xi, const Vec3& y) {
    if (const auto* ball = std::get_if<Ball>(&E)) {
        const Vec3 d = y - ball->center;
        const double qa = norm2(xi), qb = dot(d, xi), qc = norm2(d) - ball->radius * ball->radius;
        const double disc = qb * qb - qa * qc;
        if (disc <= 0.0) return {0.0, 0.0};
        const double root = std::sqrt(disc);
        return {(-qb - root) / qa, (-qb + root) / qa};
    }
    const auto& box = std::get<BoxDomain>(E);
    Interval r{-kUnbounded, kUnbounded};
    for (int a = 0; a < box.dim(); ++a) {
        if (xi[a] == 0.0) {
            if (!(y[a] > box.lower()[a] && y[a] < box.upper()[a])) return {0.0, 0.0};
            continue;
        }
        double t0 = (box.lower()[a] - y[a]) / xi[a];
        double t1 = (box.upper()[a] - y[a]) / xi[a];
        if (t0 > t1) std::swap(t0, t1);
        r.a = std::max(r.a, t0);
        r.b = std::min(r.b, t1);
    }
    return r;
}

// Integral of atan(d(t)^2/eps) over [s0, s1] for d linear with end values d0, d1.
double atan_band(double d0, double d1, double s0, double s1, double eps) {
    const double len = s1 - s0;
    if (len <= 0.0) return 0.0;
    const double root = std::sqrt(eps);
    const double w0 = d0 / root, w1 = d1 / root;
    if (std::abs(w1 - w0) > 1.0) return len / (w1 - w0) * (atan_sq_primitive(w1) - atan_sq_primitive(w0));
    static const auto gl = [] {
        std::pair<std::vector<double>, std::vector<double>> r;
        gauss_legendre(16, 0.0, 1.0, r.first, r.second);
        return r;
    }();
    double acc = 0.0;
    for (std::size_t k = 0; k < gl.first.size(); ++k) {
        const double w = w0 + (w1 - w0) * gl.first[k];
        acc += gl.second[k] * std::atan(w * w);
    }
    return acc * len;
}

const Piece* piece_at(const Section1D& v, double t) {
    for (const auto& p : v.pieces)
        if (t >= p.begin && t <= p.end) return &p;
    return nullptr;
}

bool covered(const std::vector<Interval>& dom, double a, double b) {
    for (const auto& d : dom)
        if (a >= d.a - kTouch && b <= d.b + kTouch) return true;
    return false;
}

// Orthonormal basis of xi^perp in R^dim.
std::vector<Vec3> transverse_basis(const Vec3& xi, int dim) {
    std::vector<Vec3> basis;
    if (dim == 2) basis.push_back(Vec3{-xi[1], xi[0]});
    if (dim == 3) {
        int axis = 0;
        for (int a = 1; a < 3; ++a)
            if (std::abs(xi[a]) < std::abs(xi[axis])) axis = a;
        Vec3 e = unit_vector(axis);
        e -= dot(e, xi) * xi;
        e *= 1.0 / norm(e);
        const Vec3 f{xi[1] * e[2] - xi[2] * e[1], xi[2] * e[0] - xi[0] * e[2], xi[0] * e[1] - xi[1] * e[0]};
        basis.push_back(e);
        basis.push_back(f);
    }
    return basis;
}

void region_ball(const Region& B, Vec3& center, double& radius) {
    if (const auto* ball = std::get_if<Ball>(&B)) {
        center = ball->center;
        radius = ball->radius;
        return;
    }
    const auto& box = std::get<BoxDomain>(B);
    center = box.center();
    radius = 0.5 * norm(box.extent());
}

// Calls f(section) for every transverse line of a midpoint rule over Pi^xi; returns the cell measure.
template <class F>
double for_each_line(const AnalyticField& u, const Vec3& xi, const Region& B, int dim, double h, F&& f) {
    if (!(h > 0.0)) throw ParameterError("transverse resolution must be positive");
    Vec3 c;
    double R = 0.0;
    region_ball(B, c, R);
    const Vec3 base = c - dot(c, xi) * xi;
    const auto basis = transverse_basis(xi, dim);
    const int m = std::max(1, static_cast<int>(std::ceil(2.0 * R / h)));
    const double hh = 2.0 * R / m;
    const int m1 = basis.size() > 0 ? m : 1, m2 = basis.size() > 1 ? m : 1;
    for (int j = 0; j < m2; ++j)
        for (int i = 0; i < m1; ++i) {
            Vec3 y = base;
            if (basis.size() > 0) y += (-R + (i + 0.5) * hh) * basis[0];
            if (basis.size() > 1) y += (-R + (j + 0.5) * hh) * basis[1];
            f(section(u, xi, y, B));
        }
    return std::pow(hh, static_cast<double>(basis.size()));
}

}  // namespace

double atan_sq_primitive(double w) {
    const double r2 = std::numbers::sqrt2;
    const double log_part = std::log((w * w - r2 * w + 1.0) / (w * w + r2 * w + 1.0)) / (2.0 * r2);
    const double atan_part = (std::atan(r2 * w + 1.0) + std::atan(r2 * w - 1.0)) / r2;
    return w * std::atan(w * w) - (log_part + atan_part);
}

std::vector<Interval> Section1D::domain() const {
    std::vector<Interval> out;
    for (const auto& p : pieces) {
        if (!out.empty() && out.back().b == p.begin)
            out.back().b = p.end;
        else
            out.push_back({p.begin, p.end});
    }
    return out;
}

double Section1D::value(double t) const {
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const Piece& p = pieces[k];
        if (t >= p.begin && t < p.end) return p.value(t);
        if (t == p.end && (k + 1 == pieces.size() || pieces[k + 1].begin != p.end)) return p.value(t);
    }
    throw DomainError("section evaluated outside its domain");
}

std::vector<std::pair<double, double>> Section1D::jumps() const {
    std::vector<std::pair<double, double>> out;
    for (std::size_t k = 1; k < pieces.size(); ++k)
        if (pieces[k].begin == pieces[k - 1].end) {
            const Piece& prev = pieces[k - 1];
            const double left = prev.value_at_end(), right = pieces[k].value_at_begin;
            double jump = right - left;
            // rounding in value_at_end is not a discontinuity
            const double scale = std::max({std::abs(prev.value_at_begin), std::abs(prev.slope * (prev.end - prev.begin)),
                                           std::abs(right)});
            if (std::abs(jump) <= 16.0 * std::numeric_limits<double>::epsilon() * scale) jump = 0.0;
            out.emplace_back(pieces[k].begin, jump);
        }
    return out;
}

Section1D Section1D::from_samples(double t0, double h, const std::vector<double>& values) {
    if (values.size() < 2 || !(h > 0.0)) throw ParameterError("need at least two samples and h > 0");
    Section1D s;
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        const double a = t0 + static_cast<double>(k) * h;
        const double b = t0 + static_cast<double>(k + 1) * h;
        s.pieces.push_back({a, b, values[k], (values[k + 1] - values[k]) / h});
    }
    return s;
}

Section1D Section1D::piecewise(double a, double b, double value_at_a, const std::vector<double>& breakpoints,
                               const std::vector<double>& slopes, const std::vector<double>& jumps) {
    if (slopes.size() != breakpoints.size() + 1 || jumps.size() != breakpoints.size())
        throw ParameterError("piecewise section needs one more slope than breakpoints and one jump per breakpoint");
    if (!(a < b)) throw ParameterError("empty section interval");
    Section1D s;
    double start = a, value = value_at_a;
    for (std::size_t k = 0; k <= breakpoints.size(); ++k) {
        const double end = k < breakpoints.size() ? breakpoints[k] : b;
        if (!(end > start) || end > b) throw ParameterError("breakpoints must be strictly increasing inside (a, b)");
        s.pieces.push_back({start, end, value, slopes[k]});
        value = s.pieces.back().value_at_end() + (k < jumps.size() ? jumps[k] : 0.0);
        start = end;
    }
    return s;
}

Section1D section(const AnalyticField& u, const Vec3& xi, const Vec3& y, const std::optional<Region>& E) {
    if (norm2(xi) == 0.0) throw ParameterError("slice direction must be nonzero");
    const FlatField f = u.flatten();
    const Interval range = E ? line_range(*E, xi, y) : Interval{-kUnbounded, kUnbounded};
    Section1D s;
    if (!(range.a < range.b)) return s;

    std::vector<double> cuts{range.a};
    for (const auto& j : f.jumps) {
        const double xn = dot(xi, j.normal);
        if (std::abs(xn) < 1e-14) {
            if (std::abs(j.signed_distance(y)) <= kTouch) s.degenerate = true;
            continue;
        }
        const double t = -j.signed_distance(y) / xn;
        if (t > range.a && t < range.b) cuts.push_back(t);
    }
    std::sort(cuts.begin() + 1, cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.push_back(range.b);

    const double slope = dot(f.A * xi, xi);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
        const double vmid = dot(f.eval_unchecked(y + mid * xi), xi);
        s.pieces.push_back({cuts[k], cuts[k + 1], vmid - slope * (mid - cuts[k]), slope});
    }
    return s;
}

double F1d(const Section1D& v, const std::vector<Interval>& A, double eps) {
    if (!(eps > 0.0)) throw ParameterError("eps must be positive");
    const auto dom = v.domain();
    double total = 0.0;
    for (const auto& I : A) {
        if (!(I.a < I.b)) continue;
        if (!covered(dom, I.a, I.b) || !covered(dom, I.a + eps, I.b + eps))
            throw DomainError("F1d integration set must lie in Dom(v) and Dom(v) - eps");
        std::vector<double> cuts{I.a, I.b};
        for (const auto& p : v.pieces)
            for (double t : {p.begin, p.end, p.begin - eps, p.end - eps})
                if (t > I.a && t < I.b) cuts.push_back(t);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            const double s0 = cuts[k], s1 = cuts[k + 1];
            const double m = 0.5 * (s0 + s1);
            const Piece* P = piece_at(v, m);
            const Piece* Q = piece_at(v, m + eps);
            if (!P || !Q) throw DomainError("F1d integration set leaves the section domain");
            const double d0 = Q->value(s0 + eps) - P->value(s0);
            const double d1 = Q->value(s1 + eps) - P->value(s1);
            total += atan_band(d0, d1, s0, s1, eps);
        }
    }
    return total / eps;
}

double F1d(const Section1D& v, const Interval& A, double eps) {
    return F1d(v, std::vector<Interval>{A}, eps);
}

double ms_1d(const Section1D& v, const Interval& I, double gamma) {
    double bulk = 0.0;
    for (const auto& p : v.pieces) {
        const double len = std::min(p.end, I.b) - std::max(p.begin, I.a);
        if (len > 0.0) bulk += p.slope * p.slope * len;
    }
    double count = 0.0;
    for (const auto& [t, jump] : v.jumps())
        if (jump != 0.0 && I.contains(t)) count += 1.0;
    return gamma * bulk + count;
}

Section1D gobbino_project(const Section1D& v, double a, int j) {
    if (j < 1) throw ParameterError("projection index j must be positive");
    const double half_pi = 0.5 * std::numbers::pi;
    const double len = 1.0 / j;
    Section1D out;
    for (const auto& D : v.domain()) {
        const auto z0 = static_cast<long>(std::ceil((D.a - a) * j - 1e-9));
        const auto z1 = static_cast<long>(std::floor((D.b - a) * j + 1e-9));
        for (long z = z0; z < z1; ++z) {
            const double t0 = std::max(D.a, a + static_cast<double>(z) * len);
            const double t1 = std::min(D.b, a + static_cast<double>(z + 1) * len);
            const double v0 = v.value(t0), v1 = v.value(t1);
            const double delta = v1 - v0;
            if (j * delta * delta <= half_pi) {
                out.pieces.push_back({t0, t1, v0, delta * j});
            } else {
                const double mid = 0.5 * (t0 + t1);
                out.pieces.push_back({t0, mid, v0, 0.0});
                out.pieces.push_back({mid, t1, v1, 0.0});
            }
        }
    }
    return out;
}

double lower_bound_1d(const Section1D& v, double a, double b, double shift) {
    if (!(a < b)) throw ParameterError("lower bound needs a < b");
    for (const auto& [t, jump] : v.jumps()) {
        if (std::abs(a - t) <= kTouch) a += shift;
        if (std::abs(b - t) <= kTouch) b -= shift;
    }
    const double d = v.value(b) - v.value(a);
    return std::min(0.5 * std::numbers::pi, d * d / (b - a));
}

SliceMeasureValue slice_measure(const Section1D& v) {
    SliceMeasureValue m;
    if (v.degenerate) return m;
    for (const auto& p : v.pieces) m.ac_part += std::abs(p.slope) * (p.end - p.begin);
    for (const auto& [t, jump] : v.jumps()) {
        if (std::abs(jump) > 1.0)
            m.jump_count += 1.0;
        else
            m.ac_part += std::abs(jump);
    }
    m.total = m.ac_part + m.jump_count;
    return m;
}

double mu_xi(const AnalyticField& u, const Vec3& xi, const Region& B, int dim, double h) {
    if (std::abs(norm(xi) - 1.0) > 1e-12) throw ParameterError("mu_xi needs a unit direction");
    double sum = 0.0;
    const double cell = for_each_line(u, xi, B, dim, h, [&](const Section1D& s) { sum += slice_measure(s).total; });
    return sum * cell;
}

MuHatReport mu_hat_p(const AnalyticField& u, const BoxDomain& domain, double p, const SphereRule& sphere,
                     const BallStrategy& strategy, double h) {
    if (!(p >= 1.0)) throw ParameterError("exponent p must be >= 1");
    const auto families = ball_candidates(domain, strategy);
    if (families.empty()) throw ParameterError("no candidate ball family");
    std::map<std::tuple<double, double, double, double>, double> memo;
    auto ball_value = [&](const Ball& b) {
        const auto key = std::make_tuple(b.center[0], b.center[1], b.center[2], b.radius);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        double acc = 0.0;
        for (std::size_t k = 0; k < sphere.nodes.size(); ++k)
            acc += sphere.weights[k] * std::pow(mu_xi(u, sphere.nodes[k], b, domain.dim(), h), p);
        const double value = std::pow(acc, 1.0 / p);
        memo.emplace(key, value);
        return value;
    };
    MuHatReport best;
    best.value = -1.0;
    for (const auto& fam : families) {
        std::vector<double> per_ball;
        double total = 0.0;
        for (const auto& b : fam.balls) {
            per_ball.push_back(ball_value(b));
            total += per_ball.back();
        }
        if (total > best.value) {
            best.value = total;
            best.family = fam;
            best.per_ball = std::move(per_ball);
        }
    }
    return best;
}

double I_u1(const AnalyticField& u, const Region& B, const SphereRule& sphere, int dim, double h) {
    double total = 0.0;
    for (std::size_t k = 0; k < sphere.nodes.size(); ++k) {
        double sum = 0.0;
        const double cell = for_each_line(u, sphere.nodes[k], B, dim, h, [&](const Section1D& s) {
            if (s.degenerate) return;
            for (const auto& [t, jump] : s.jumps()) sum += std::min(std::abs(jump), 1.0);
        });
        total += sphere.weights[k] * sum * cell;
    }
    return total;
}

}  // namespace nlg
