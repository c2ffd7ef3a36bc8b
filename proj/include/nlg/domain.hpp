#pragma once

// Computational domain: boxes (optionally minus axis-aligned planar precracks),
// balls, cell-centred grids, and deformation fields (analytic and sampled).

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "nlg/linalg.hpp"

namespace nlg {

/// Planar piece {x : x[axis] == offset} clipped to the closed box [lower, upper]
/// (the `axis` components of lower/upper are ignored).
struct PlaneSegment {
    int axis = 0;
    double offset = 0.0;
    Vec3 lower;
    Vec3 upper;

    bool contains(const Vec3& x, int dim) const;
    /// Euclidean distance from x to the segment.
    double distance(const Vec3& x, int dim) const;
};

/// Open box prod_i (lower_i, upper_i) in R^dim, minus optional precrack slits.
class BoxDomain {
public:
    BoxDomain() = default;
    BoxDomain(int dim, Vec3 lower, Vec3 upper, std::vector<PlaneSegment> precrack = {});

    int dim() const { return dim_; }
    const Vec3& lower() const { return lower_; }
    const Vec3& upper() const { return upper_; }
    const std::vector<PlaneSegment>& precrack() const { return precrack_; }

    Vec3 extent() const;
    Vec3 center() const;
    double volume() const;

    /// Open bounding box membership (ignores precracks).
    bool box_contains(const Vec3& x) const {
        for (int i = 0; i < dim_; ++i)
            if (!(x[i] > lower_[i] && x[i] < upper_[i])) return false;
        return true;
    }
    /// Membership in the box minus the precrack slits.
    bool contains(const Vec3& x) const;

private:
    int dim_ = 1;
    Vec3 lower_;
    Vec3 upper_{1.0};
    std::vector<PlaneSegment> precrack_;
};

/// Open ball.
struct Ball {
    Vec3 center;
    double radius = 0.0;

    bool contains(const Vec3& x) const { return norm2(x - center) < radius * radius; }
};

/// A measurable subset E of the domain used as integration region.
using Region = std::variant<BoxDomain, Ball>;

bool region_contains(const Region& r, const Vec3& x);
/// Axis-aligned bounding box of a region (as a plain box, dimension `dim`).
BoxDomain region_bounds(const Region& r, int dim);
/// The scaled difference set (E - E)/eps: a centred box, or the ball of radius 2r/eps.
Region difference_set(const Region& r, double eps);

/// The box (Omega - Omega)/eps = prod_i (-(u_i - l_i)/eps, (u_i - l_i)/eps).
BoxDomain minkowski_support(const BoxDomain& domain, double eps);

/// Cell-centred grid with spacing h tiling the bounding box of a BoxDomain.
class Grid {
public:
    Grid() = default;
    /// Throws ParameterError unless every extent is an integer multiple of h.
    Grid(BoxDomain domain, double h);

    const BoxDomain& domain() const { return domain_; }
    int dim() const { return domain_.dim(); }
    double h() const { return h_; }
    double cell_volume() const { return cell_volume_; }
    const std::array<int, 3>& counts() const { return counts_; }
    std::size_t size() const { return centers_.size(); }

    /// Coordinates of the first cell centre (index 0,0,0).
    const Vec3& origin() const { return origin_; }
    const Vec3& center(std::size_t idx) const { return centers_[idx]; }
    const std::vector<Vec3>& centers() const { return centers_; }
    bool inside(std::size_t idx) const { return inside_[idx] != 0; }
    const std::vector<char>& inside_mask() const { return inside_; }

    std::size_t index(int i, int j = 0, int k = 0) const {
        return (static_cast<std::size_t>(k) * static_cast<std::size_t>(counts_[1]) +
                static_cast<std::size_t>(j)) * static_cast<std::size_t>(counts_[0]) +
               static_cast<std::size_t>(i);
    }
    std::array<int, 3> multi_index(std::size_t idx) const;

    /// Copy with every cell centre moved by `delta` along each axis.
    Grid shifted(double delta) const;
    double shift() const { return shift_; }

private:
    void build();

    BoxDomain domain_;
    double h_ = 1.0;
    double cell_volume_ = 1.0;
    double shift_ = 0.0;
    std::array<int, 3> counts_{1, 1, 1};
    Vec3 origin_;
    std::vector<Vec3> centers_;
    std::vector<char> inside_;
};

// ---------------------------------------------------------------------------
// Analytic fields
// ---------------------------------------------------------------------------

struct AffineMap {
    Mat3 A;
    Vec3 b;
};

/// u = value_minus on {x.normal < offset}, value_plus on {x.normal > offset}.
struct PlaneJump {
    Vec3 normal;
    double offset = 0.0;
    Vec3 value_minus;
    Vec3 value_plus;

    double signed_distance(const Vec3& x) const { return dot(x, normal) - offset; }
    Vec3 amplitude() const { return value_plus - value_minus; }
};

/// A field u(x) = A x + b + sum_j jump_j(x): every analytic field flattens to this.
struct FlatField {
    Mat3 A;
    Vec3 b;
    std::vector<PlaneJump> jumps;

    /// Evaluation with the convention that points on a jump plane take value_plus.
    Vec3 eval_unchecked(const Vec3& x) const {
        Vec3 v = A * x + b;
        for (const auto& j : jumps) v += j.signed_distance(x) >= 0.0 ? j.value_plus : j.value_minus;
        return v;
    }
};

/// Closed-form deformation: affine map, plane jump, or a sum of such fields.
class AnalyticField {
public:
    static AnalyticField affine(const Mat3& A, const Vec3& b = {});
    static AnalyticField constant(const Vec3& value);
    /// Throws ParameterError unless |normal| == 1 (to 1e-12).
    static AnalyticField plane_jump(const Vec3& normal, double offset, const Vec3& value_minus,
                                    const Vec3& value_plus);
    static AnalyticField sum(std::vector<AnalyticField> terms);

    /// Pointwise value; throws DomainError on a jump hyperplane.
    Vec3 eval(const Vec3& x) const;
    FlatField flatten() const;
    /// Symmetric gradient e(u) (constant for these fields).
    Mat3 symmetric_gradient() const { return sym(flatten().A); }
    std::vector<PlaneJump> jump_planes() const { return flatten().jumps; }

    bool is_affine() const { return std::holds_alternative<AffineMap>(node_); }
    bool is_plane_jump() const { return std::holds_alternative<PlaneJump>(node_); }
    bool is_sum() const { return std::holds_alternative<std::vector<AnalyticField>>(node_); }
    const AffineMap& as_affine() const { return std::get<AffineMap>(node_); }
    const PlaneJump& as_plane_jump() const { return std::get<PlaneJump>(node_); }
    const std::vector<AnalyticField>& terms() const {
        return std::get<std::vector<AnalyticField>>(node_);
    }

private:
    using Node = std::variant<AffineMap, PlaneJump, std::vector<AnalyticField>>;
    explicit AnalyticField(Node node) : node_(std::move(node)) {}
    void flatten_into(FlatField& out) const;

    Node node_;
};

/// Nodal displacement values on a grid; Dirichlet cells are frozen.
struct SampledField {
    Grid grid;
    std::vector<Vec3> values;
    std::vector<char> dirichlet;

    std::size_t size() const { return values.size(); }
    bool frozen(std::size_t idx) const { return dirichlet[idx] != 0; }
    /// Multilinear interpolation of nodal values at x; the end intervals extend linearly to the box.
    Vec3 interpolate(const Vec3& x) const;
};

/// True if some cell centre lies on one of the field's jump hyperplanes.
bool grid_hits_jumps(const Grid& grid, const AnalyticField& field);
/// The grid itself, or a copy shifted by h/7 per attempt until no centre lies on a jump plane.
Grid avoid_jumps(const Grid& grid, const AnalyticField& field);

/// Pointwise evaluation at the centres of `avoid_jumps(grid, field)`.
SampledField sample(const AnalyticField& field, const Grid& grid);

}  // namespace nlg
