#pragma once

// Quadrature for Gaussian-weighted direction integrals
//     int_{R^n} f(xi) exp(-|xi|^2) dxi,   n in {1, 2, 3},
// plus closed-form Gaussian moments used as oracles.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nlg/domain.hpp"
#include "nlg/errors.hpp"
#include "nlg/linalg.hpp"

namespace nlg {

struct QuadParams {
    int radial_order = 32;
    int angular_order = 64;
    double r_max = 6.0;
    /// Common rotation (radians) applied to the angular nodes.
    double angular_offset = 0.0;

    /// Defaults tuned per dimension (n = 1 has no angular factor).
    static QuadParams defaults(int dim);
};

class DirectionRule {
public:
    int dim() const { return dim_; }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<Vec3>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    const Vec3& node(std::size_t i) const { return nodes_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }
    double truncation_radius() const { return r_max_; }
    int radial_order() const { return radial_order_; }
    int angular_order() const { return angular_order_; }
    double weight_sum() const;

private:
    friend DirectionRule build_direction_rule(int, int, int, double, double);
    int dim_ = 1;
    int radial_order_ = 0;
    int angular_order_ = 0;
    double r_max_ = 0.0;
    std::vector<Vec3> nodes_;
    std::vector<double> weights_;
};

/// Nodes and weights for int_{R^n} f(xi) exp(-|xi|^2) dxi truncated at |xi| <= r_max.
/// n = 1: Gauss-Legendre on (0, r_max) mirrored to (-r_max, 0) (2*radial_order nodes).
/// n >= 2: radial Gauss-Legendre on (0, r_max) with weight r^{n-1} exp(-r^2), times an
/// equal-weight circle rule (n = 2) or Gauss-Legendre(cos theta) x uniform(phi) (n = 3).
/// Throws RuleQualityError when the weights miss pi^{n/2} by more than 1e-6 relative.
DirectionRule build_direction_rule(int n, int radial_order, int angular_order, double r_max,
                                   double angular_offset = 0.0);
DirectionRule build_direction_rule(int n, const QuadParams& params);

/// Unit directions on S^{n-1} with weights summing to its surface measure
/// (n = 1: the two points +-1 with unit counting weights).
struct SphereRule {
    int dim = 1;
    std::vector<Vec3> nodes;
    std::vector<double> weights;
};
SphereRule build_sphere_rule(int n, int angular_order, double angular_offset = 0.0);

/// Gauss-Legendre nodes/weights on [a, b].
void gauss_legendre(int order, double a, double b, std::vector<double>& nodes, std::vector<double>& weights);

/// Surface measure of S^{n-1}.
double sphere_area(int n);
/// int_{R^n} |xi|^k exp(-|xi|^2) dxi = |S^{n-1}| Gamma((k+n)/2) / 2.
double gaussian_radial_moment(int n, double k);
/// int_{R^n} xi^alpha exp(-|xi|^2) dxi (product of 1D moments; 0 if any exponent is odd).
double gaussian_moment(int n, const std::array<int, 3>& alpha);

/// Sum_i w_i f(xi_i) over nodes inside `support` (all nodes if none), ascending node order.
template <class F>
double integrate(const DirectionRule& rule, F&& f, const std::optional<Region>& support = std::nullopt) {
    double total = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const Vec3& xi = rule.node(i);
        if (support && !region_contains(*support, xi)) continue;
        const double v = f(xi);
        if (!std::isfinite(v)) throw EvaluationError(i, "non-finite integrand");
        total += rule.weight(i) * v;
    }
    return total;
}

/// Same reduction for integrand values precomputed per node.
double integrate_values(const DirectionRule& rule, std::span<const double> values,
                        const std::optional<Region>& support = std::nullopt);

}  // namespace nlg
