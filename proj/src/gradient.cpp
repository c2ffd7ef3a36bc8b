#include <algorithm>
#include <cmath>

#include "kernel_util.hpp"
#include "nlg/energy.hpp"
#include "nlg/errors.hpp"

namespace nlg {

EnergyAndGradient energy_gradient(const SampledField& u, double eps, const DirectionRule& rule) {
    const Grid& g = u.grid;
    require_resolution(g.h(), eps);
    if (rule.dim() != g.dim()) throw ParameterError("direction rule dimension does not match the grid");

    const BoxDomain& omega = g.domain();
    const Region support = minkowski_support(omega, eps);
    const detail::CellRange all = detail::cell_range(g, omega);
    const std::size_t N = g.size();
    const std::size_t P = kGradientPartitions;
    const std::size_t M = rule.size();

    std::vector<std::vector<Vec3>> buffers(P);
    std::vector<double> energies(P, 0.0);
    const double scale = g.cell_volume() / eps;

#pragma omp parallel for schedule(dynamic, 1)
    for (long lp = 0; lp < static_cast<long>(P); ++lp) {
        const auto part = static_cast<std::size_t>(lp);
        std::vector<Vec3> grad(N);
        double energy = 0.0;
        const std::size_t begin = M * part / P, end = M * (part + 1) / P;
        for (std::size_t i = begin; i < end; ++i) {
            const Vec3& xi = rule.node(i);
            if (!region_contains(support, xi)) continue;
            const Vec3 step = eps * xi;
            const detail::Stencil st = detail::make_stencil(g, step);
            const double w = rule.weight(i) * scale;
            double e_dir = 0.0;
            detail::for_each_cell(g, all, [&](std::size_t idx, const std::array<int, 3>& cell) {
                const Vec3& x = g.center(idx);
                if (!omega.contains(x) || !omega.contains(x + step)) return;
                const detail::Corners cs = detail::corners_at(g, cell, st);
                Vec3 v;
                for (int c = 0; c < cs.count; ++c) {
                    const auto uc = static_cast<std::size_t>(c);
                    if (cs.weight[uc] != 0.0) v += cs.weight[uc] * u.values[cs.index[uc]];
                }
                const double s = dot(v - u.values[idx], xi);
                const double s2 = s * s;
                e_dir += std::atan(s2 / eps);
                const double ds = w * (2.0 * s / eps) / (1.0 + s2 * s2 / (eps * eps));
                if (ds == 0.0) return;
                const Vec3 d = ds * xi;
                for (int c = 0; c < cs.count; ++c) {
                    const auto uc = static_cast<std::size_t>(c);
                    if (cs.weight[uc] != 0.0) grad[cs.index[uc]] += cs.weight[uc] * d;
                }
                grad[idx] -= d;
            });
            energy += w * e_dir;
        }
        buffers[part] = std::move(grad);
        energies[part] = energy;
    }

    EnergyAndGradient out;
    out.gradient.assign(N, Vec3{});
    for (std::size_t part = 0; part < P; ++part) {
        out.energy += energies[part];
        for (std::size_t k = 0; k < N; ++k) out.gradient[k] += buffers[part][k];
    }
    for (std::size_t k = 0; k < N; ++k)
        if (u.frozen(k)) out.gradient[k] = Vec3{};
    return out;
}

}  // namespace nlg
