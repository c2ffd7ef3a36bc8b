#include <algorithm>
#include <cmath>

#include "nlg/energy.hpp"
#include "nlg/errors.hpp"

namespace nlg::reference {

namespace {

template <class Eval>
double directional_generic(const Grid& g, const Region& E, double eps, const Vec3& xi, Eval&& eval) {
    if (!(eps > 0.0)) throw ParameterError("eps must be positive");
    double sum = 0.0;
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        const Vec3& x = g.center(idx);
        const Vec3 y = x + eps * xi;
        if (!region_contains(E, x) || !region_contains(E, y)) continue;
        const double s = dot(eval(y) - eval(x), xi);
        sum += std::atan(s * s / eps);
    }
    return sum * g.cell_volume() / eps;
}

}  // namespace

double directional_energy(const SampledField& u, const Region& E, double eps, const Vec3& xi) {
    return directional_generic(u.grid, E, eps, xi, [&](const Vec3& x) { return u.interpolate(x); });
}

double directional_energy(const AnalyticField& u, const Grid& grid, const Region& E, double eps, const Vec3& xi) {
    const FlatField f = u.flatten();
    return directional_generic(grid, E, eps, xi, [&](const Vec3& x) { return f.eval_unchecked(x); });
}

double averaged_energy(const SampledField& u, const Region& E, double eps, const DirectionRule& rule) {
    require_resolution(u.grid.h(), eps);
    return integrate(rule, [&](const Vec3& xi) { return reference::directional_energy(u, E, eps, xi); },
                     difference_set(E, eps));
}

double averaged_energy(const AnalyticField& u, const Grid& grid, const Region& E, double eps,
                       const DirectionRule& rule) {
    require_resolution(grid.h(), eps);
    return integrate(rule, [&](const Vec3& xi) { return reference::directional_energy(u, grid, E, eps, xi); },
                     difference_set(E, eps));
}

double pair_energy(const SampledField& u, const Region& region, double eps, double r_max) {
    const Grid& g = u.grid;
    require_resolution(g.h(), eps);
    const double eps3 = eps * eps * eps;
    const double cut2 = r_max * eps * r_max * eps;
    double total = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!region_contains(region, g.center(i))) continue;
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (i == j || !region_contains(region, g.center(j))) continue;
            const Vec3 d = g.center(j) - g.center(i);
            const double d2 = norm2(d);
            if (d2 > cut2) continue;
            const double s = dot(u.values[j] - u.values[i], d);
            total += std::atan(s * s / eps3) * std::exp(-d2 / (eps * eps));
        }
    }
    return total * g.cell_volume() * g.cell_volume() / std::pow(eps, g.dim() + 1);
}

EnergyAndGradient energy_gradient(const SampledField& u, double eps, const DirectionRule& rule) {
    const Grid& g = u.grid;
    require_resolution(g.h(), eps);
    const BoxDomain& omega = g.domain();
    const Region support = minkowski_support(omega, eps);
    const int n = g.dim();
    EnergyAndGradient out;
    out.gradient.assign(g.size(), Vec3{});
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const Vec3& xi = rule.node(i);
        if (!region_contains(support, xi)) continue;
        const double w = rule.weight(i) * g.cell_volume() / eps;
        for (std::size_t idx = 0; idx < g.size(); ++idx) {
            const Vec3& x = g.center(idx);
            const Vec3 y = x + eps * xi;
            if (!omega.contains(x) || !omega.contains(y)) continue;
            const double s = dot(u.interpolate(y) - u.values[idx], xi);
            out.energy += w * std::atan(s * s / eps);
            const double ds = w * (2.0 * s / eps) / (1.0 + s * s * s * s / (eps * eps));
            // scatter through the same multilinear weights as interpolate()
            std::array<int, 3> base{0, 0, 0};
            std::array<double, 3> frac{0.0, 0.0, 0.0};
            for (int a = 0; a < n; ++a) {
                const auto ua = static_cast<std::size_t>(a);
                const int count = g.counts()[ua];
                const double q = (y[a] - g.origin()[a]) / g.h();
                const int b = count > 1 ? std::clamp(static_cast<int>(std::floor(q)), 0, count - 2) : 0;
                base[ua] = b;
                frac[ua] = count > 1 ? q - b : 0.0;
            }
            for (int c = 0; c < (1 << n); ++c) {
                double wc = 1.0;
                std::array<int, 3> id{0, 0, 0};
                for (int a = 0; a < n; ++a) {
                    const auto ua = static_cast<std::size_t>(a);
                    const int bit = (c >> a) & 1;
                    wc *= bit ? frac[ua] : 1.0 - frac[ua];
                    id[ua] = base[ua] + bit;
                }
                if (wc != 0.0) out.gradient[g.index(id[0], id[1], id[2])] += (ds * wc) * xi;
            }
            out.gradient[idx] -= ds * xi;
        }
    }
    for (std::size_t k = 0; k < g.size(); ++k)
        if (u.frozen(k)) out.gradient[k] = Vec3{};
    return out;
}

}  // namespace nlg::reference
