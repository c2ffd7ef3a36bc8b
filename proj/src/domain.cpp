#include "nlg/domain.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "nlg/errors.hpp"

namespace nlg {

namespace {

constexpr double kOnPlaneTol = 1e-12;

void check_dim(int dim) {
    if (dim < 1 || dim > 3) throw ParameterError("dimension must be 1, 2 or 3, got " + std::to_string(dim));
}

}  // namespace

// ---------------------------------------------------------------------------
// PlaneSegment / BoxDomain
// ---------------------------------------------------------------------------

bool PlaneSegment::contains(const Vec3& x, int dim) const {
    if (x[axis] != offset) return false;
    for (int i = 0; i < dim; ++i) {
        if (i == axis) continue;
        if (x[i] < lower[i] || x[i] > upper[i]) return false;
    }
    return true;
}

double PlaneSegment::distance(const Vec3& x, int dim) const {
    double d2 = (x[axis] - offset) * (x[axis] - offset);
    for (int i = 0; i < dim; ++i) {
        if (i == axis) continue;
        const double c = std::clamp(x[i], lower[i], upper[i]);
        d2 += (x[i] - c) * (x[i] - c);
    }
    return std::sqrt(d2);
}

BoxDomain::BoxDomain(int dim, Vec3 lower, Vec3 upper, std::vector<PlaneSegment> precrack)
    : dim_(dim), lower_(lower), upper_(upper), precrack_(std::move(precrack)) {
    check_dim(dim);
    for (int i = 0; i < dim; ++i)
        if (!(lower_[i] < upper_[i]))
            throw ParameterError("box needs lower < upper on axis " + std::to_string(i));
    for (int i = dim; i < 3; ++i) lower_[i] = upper_[i] = 0.0;
    for (const auto& s : precrack_) {
        if (s.axis < 0 || s.axis >= dim) throw ParameterError("precrack axis out of range");
        if (s.offset < lower_[s.axis] || s.offset > upper_[s.axis])
            throw ParameterError("precrack plane outside the box");
        for (int i = 0; i < dim; ++i) {
            if (i == s.axis) continue;
            if (s.lower[i] > s.upper[i] || s.lower[i] < lower_[i] || s.upper[i] > upper_[i])
                throw ParameterError("precrack segment must lie inside the closed box");
        }
    }
}

Vec3 BoxDomain::extent() const { return upper_ - lower_; }

Vec3 BoxDomain::center() const { return 0.5 * (lower_ + upper_); }

double BoxDomain::volume() const {
    double v = 1.0;
    for (int i = 0; i < dim_; ++i) v *= upper_[i] - lower_[i];
    return v;
}

bool BoxDomain::contains(const Vec3& x) const {
    if (!box_contains(x)) return false;
    for (const auto& s : precrack_)
        if (s.contains(x, dim_)) return false;
    return true;
}

bool region_contains(const Region& r, const Vec3& x) {
    return std::visit([&](const auto& e) { return e.contains(x); }, r);
}

BoxDomain region_bounds(const Region& r, int dim) {
    if (const auto* box = std::get_if<BoxDomain>(&r)) return BoxDomain(dim, box->lower(), box->upper());
    const auto& ball = std::get<Ball>(r);
    Vec3 lo = ball.center, hi = ball.center;
    for (int i = 0; i < dim; ++i) {
        lo[i] -= ball.radius;
        hi[i] += ball.radius;
    }
    return BoxDomain(dim, lo, hi);
}

Region difference_set(const Region& r, double eps) {
    if (const auto* box = std::get_if<BoxDomain>(&r)) return minkowski_support(*box, eps);
    if (!(eps > 0.0)) throw ParameterError("eps must be positive");
    const auto& ball = std::get<Ball>(r);
    return Ball{Vec3{}, 2.0 * ball.radius / eps};
}

BoxDomain minkowski_support(const BoxDomain& domain, double eps) {
    if (!(eps > 0.0)) throw ParameterError("eps must be positive");
    Vec3 lo, hi;
    for (int i = 0; i < domain.dim(); ++i) {
        const double w = (domain.upper()[i] - domain.lower()[i]) / eps;
        lo[i] = -w;
        hi[i] = w;
    }
    return BoxDomain(domain.dim(), lo, hi);
}

// ---------------------------------------------------------------------------
// Grid
// ---------------------------------------------------------------------------

Grid::Grid(BoxDomain domain, double h) : domain_(std::move(domain)), h_(h) {
    if (!(h > 0.0)) throw ParameterError("grid spacing must be positive");
    const Vec3 ext = domain_.extent();
    for (int i = 0; i < domain_.dim(); ++i) {
        const double cells = ext[i] / h;
        const double rounded = std::round(cells);
        if (rounded < 1.0 || std::abs(cells - rounded) > 1e-6 * std::max(1.0, rounded))
            throw ParameterError("extent on axis " + std::to_string(i) +
                                 " is not an integer multiple of h");
        counts_[static_cast<std::size_t>(i)] = static_cast<int>(rounded);
    }
    cell_volume_ = std::pow(h_, domain_.dim());
    build();
}

void Grid::build() {
    const int n = domain_.dim();
    for (int i = 0; i < 3; ++i) origin_[i] = i < n ? domain_.lower()[i] + 0.5 * h_ + shift_ : 0.0;
    const std::size_t total = static_cast<std::size_t>(counts_[0]) * static_cast<std::size_t>(counts_[1]) *
                              static_cast<std::size_t>(counts_[2]);
    centers_.resize(total);
    inside_.resize(total);
    for (int k = 0; k < counts_[2]; ++k)
        for (int j = 0; j < counts_[1]; ++j)
            for (int i = 0; i < counts_[0]; ++i) {
                const std::size_t idx = index(i, j, k);
                Vec3 x = origin_;
                x[0] += i * h_;
                if (n > 1) x[1] += j * h_;
                if (n > 2) x[2] += k * h_;
                centers_[idx] = x;
                inside_[idx] = domain_.contains(x) ? 1 : 0;
            }
}

std::array<int, 3> Grid::multi_index(std::size_t idx) const {
    const auto nx = static_cast<std::size_t>(counts_[0]);
    const auto ny = static_cast<std::size_t>(counts_[1]);
    return {static_cast<int>(idx % nx), static_cast<int>((idx / nx) % ny), static_cast<int>(idx / (nx * ny))};
}

Grid Grid::shifted(double delta) const {
    Grid g = *this;
    g.shift_ += delta;
    g.build();
    return g;
}

// ---------------------------------------------------------------------------
// AnalyticField
// ---------------------------------------------------------------------------

AnalyticField AnalyticField::affine(const Mat3& A, const Vec3& b) { return AnalyticField(AffineMap{A, b}); }

AnalyticField AnalyticField::constant(const Vec3& value) { return affine(Mat3{}, value); }

AnalyticField AnalyticField::plane_jump(const Vec3& normal, double offset, const Vec3& value_minus,
                                        const Vec3& value_plus) {
    if (std::abs(norm(normal) - 1.0) > 1e-12) throw ParameterError("jump normal must be a unit vector");
    return AnalyticField(PlaneJump{normal, offset, value_minus, value_plus});
}

AnalyticField AnalyticField::sum(std::vector<AnalyticField> terms) { return AnalyticField(std::move(terms)); }

Vec3 AnalyticField::eval(const Vec3& x) const {
    const FlatField f = flatten();
    for (const auto& j : f.jumps)
        if (std::abs(j.signed_distance(x)) <= kOnPlaneTol)
            throw DomainError("evaluation point lies on a jump hyperplane; perturb the query");
    return f.eval_unchecked(x);
}

void AnalyticField::flatten_into(FlatField& out) const {
    if (const auto* a = std::get_if<AffineMap>(&node_)) {
        out.A = out.A + a->A;
        out.b += a->b;
    } else if (const auto* j = std::get_if<PlaneJump>(&node_)) {
        out.jumps.push_back(*j);
    } else {
        for (const auto& t : std::get<std::vector<AnalyticField>>(node_)) t.flatten_into(out);
    }
}

FlatField AnalyticField::flatten() const {
    FlatField f;
    flatten_into(f);
    return f;
}

// ---------------------------------------------------------------------------
// SampledField
// ---------------------------------------------------------------------------

Vec3 SampledField::interpolate(const Vec3& x) const {
    const int n = grid.dim();
    std::array<int, 3> base{0, 0, 0};
    std::array<double, 3> frac{0.0, 0.0, 0.0};
    for (int a = 0; a < n; ++a) {
        const int count = grid.counts()[static_cast<std::size_t>(a)];
        // Past the outermost centres the end interval is extended linearly.
        const double q = (x[a] - grid.origin()[a]) / grid.h();
        const int b = count > 1 ? std::clamp(static_cast<int>(std::floor(q)), 0, count - 2) : 0;
        base[static_cast<std::size_t>(a)] = b;
        frac[static_cast<std::size_t>(a)] = count > 1 ? q - b : 0.0;
    }
    Vec3 v;
    const int corners = 1 << n;
    for (int c = 0; c < corners; ++c) {
        double w = 1.0;
        std::array<int, 3> id{0, 0, 0};
        for (int a = 0; a < n; ++a) {
            const auto ua = static_cast<std::size_t>(a);
            const int bit = (c >> a) & 1;
            w *= bit ? frac[ua] : 1.0 - frac[ua];
            id[ua] = base[ua] + bit;
        }
        if (w == 0.0) continue;
        v += w * values[grid.index(id[0], id[1], id[2])];
    }
    return v;
}

bool grid_hits_jumps(const Grid& grid, const AnalyticField& field) {
    const FlatField f = field.flatten();
    if (f.jumps.empty()) return false;
    for (const auto& x : grid.centers())
        for (const auto& j : f.jumps)
            if (std::abs(j.signed_distance(x)) <= kOnPlaneTol) return true;
    return false;
}

Grid avoid_jumps(const Grid& grid, const AnalyticField& field) {
    Grid g = grid;
    for (int attempt = 0; attempt < 6 && grid_hits_jumps(g, field); ++attempt) g = g.shifted(grid.h() / 7.0);
    if (grid_hits_jumps(g, field)) throw DomainError("could not move grid centres off the jump planes");
    return g;
}

SampledField sample(const AnalyticField& field, const Grid& grid) {
    SampledField s;
    s.grid = avoid_jumps(grid, field);
    const FlatField f = field.flatten();
    s.values.reserve(s.grid.size());
    for (const auto& x : s.grid.centers()) s.values.push_back(f.eval_unchecked(x));
    s.dirichlet.assign(s.grid.size(), 0);
    return s;
}

}  // namespace nlg
