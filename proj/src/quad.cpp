#include "nlg/quad.hpp"

#include <numbers>
#include <string>

namespace nlg {

QuadParams QuadParams::defaults(int dim) {
    QuadParams q;
    switch (dim) {
        case 1: q.radial_order = 64; q.angular_order = 2; break;
        case 2: q.radial_order = 32; q.angular_order = 64; break;
        default: q.radial_order = 40; q.angular_order = 8; break;
    }
    return q;
}

void gauss_legendre(int order, double a, double b, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(order), 0.0);
    weights.assign(static_cast<std::size_t>(order), 0.0);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 1; j <= order; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
            }
            dp = order * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        // recompute derivative at the converged root
        double p0 = 1.0, p1 = 0.0;
        for (int j = 1; j <= order; ++j) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
        }
        dp = order * (z * p0 - p1) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(order - 1 - i);
        nodes[lo] = mid - half * z;
        nodes[hi] = mid + half * z;
        weights[lo] = weights[hi] = half * w;
    }
}

double sphere_area(int n) {
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double gaussian_radial_moment(int n, double k) {
    if (k < 0.0) throw ParameterError("radial moment exponent must be nonnegative");
    return sphere_area(n) * std::tgamma(0.5 * (k + n)) / 2.0;
}

double gaussian_moment(int n, const std::array<int, 3>& alpha) {
    double v = 1.0;
    for (int i = 0; i < n; ++i) {
        const int m = alpha[static_cast<std::size_t>(i)];
        if (m < 0) throw ParameterError("moment exponents must be nonnegative");
        if (m % 2 == 1) return 0.0;
        v *= std::tgamma(0.5 * (m + 1));
    }
    return v;
}

double DirectionRule::weight_sum() const {
    double s = 0.0;
    for (double w : weights_) s += w;
    return s;
}

SphereRule build_sphere_rule(int n, int angular_order, double angular_offset) {
    SphereRule s;
    s.dim = n;
    if (n == 1) {
        s.nodes = {Vec3{-1.0}, Vec3{1.0}};
        s.weights = {1.0, 1.0};
        return s;
    }
    if (angular_order < 2) throw ParameterError("angular order must be >= 2");
    const double two_pi = 2.0 * std::numbers::pi;
    if (n == 2) {
        const int m = angular_order;
        for (int k = 0; k < m; ++k) {
            const double th = angular_offset + two_pi * (k + 0.5) / m;
            s.nodes.emplace_back(std::cos(th), std::sin(th));
            s.weights.push_back(two_pi / m);
        }
        return s;
    }
    if (n != 3) throw ParameterError("sphere rule supports n in {1,2,3}");
    std::vector<double> mu, wmu;
    gauss_legendre(angular_order, -1.0, 1.0, mu, wmu);
    const int nphi = 2 * angular_order;
    for (std::size_t a = 0; a < mu.size(); ++a) {
        const double st = std::sqrt(std::max(0.0, 1.0 - mu[a] * mu[a]));
        for (int k = 0; k < nphi; ++k) {
            const double ph = angular_offset + two_pi * (k + 0.5) / nphi;
            s.nodes.emplace_back(st * std::cos(ph), st * std::sin(ph), mu[a]);
            s.weights.push_back(wmu[a] * two_pi / nphi);
        }
    }
    return s;
}

DirectionRule build_direction_rule(int n, int radial_order, int angular_order, double r_max,
                                   double angular_offset) {
    if (n < 1 || n > 3) throw ParameterError("direction rule supports n in {1,2,3}");
    if (radial_order < 2 || (n > 1 && angular_order < 2)) throw ParameterError("quadrature orders must be >= 2");
    if (r_max < 3.0) throw ParameterError("truncation radius must be >= 3");

    DirectionRule rule;
    rule.dim_ = n;
    rule.radial_order_ = radial_order;
    rule.angular_order_ = angular_order;
    rule.r_max_ = r_max;

    std::vector<double> r, wr;
    gauss_legendre(radial_order, 0.0, r_max, r, wr);
    if (n == 1) {
        for (std::size_t i = r.size(); i-- > 0;) {
            rule.nodes_.emplace_back(-r[i]);
            rule.weights_.push_back(wr[i] * std::exp(-r[i] * r[i]));
        }
        for (std::size_t i = 0; i < r.size(); ++i) {
            rule.nodes_.emplace_back(r[i]);
            rule.weights_.push_back(wr[i] * std::exp(-r[i] * r[i]));
        }
    } else {
        const SphereRule sphere = build_sphere_rule(n, angular_order, angular_offset);
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double radial = wr[i] * std::pow(r[i], n - 1) * std::exp(-r[i] * r[i]);
            for (std::size_t k = 0; k < sphere.nodes.size(); ++k) {
                rule.nodes_.push_back(r[i] * sphere.nodes[k]);
                rule.weights_.push_back(radial * sphere.weights[k]);
            }
        }
    }

    const double expect0 = std::pow(std::numbers::pi, 0.5 * n);
    const double got0 = rule.weight_sum();
    if (std::abs(got0 - expect0) > 1e-6 * expect0)
        throw RuleQualityError("direction rule normalization off: sum w = " + std::to_string(got0) +
                               ", expected " + std::to_string(expect0));
    const double expect2 = gaussian_radial_moment(n, 2.0);
    const double got2 = integrate(rule, [](const Vec3& xi) { return norm2(xi); });
    if (std::abs(got2 - expect2) > 1e-6 * expect2)
        throw RuleQualityError("direction rule second moment off: " + std::to_string(got2));
    return rule;
}

DirectionRule build_direction_rule(int n, const QuadParams& params) {
    return build_direction_rule(n, params.radial_order, params.angular_order, params.r_max, params.angular_offset);
}

double integrate_values(const DirectionRule& rule, std::span<const double> values,
                        const std::optional<Region>& support) {
    if (values.size() != rule.size()) throw ParameterError("one value per direction node expected");
    double total = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        if (support && !region_contains(*support, rule.node(i))) continue;
        if (!std::isfinite(values[i])) throw EvaluationError(i, "non-finite integrand");
        total += rule.weight(i) * values[i];
    }
    return total;
}

}  // namespace nlg
