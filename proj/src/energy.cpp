#include "nlg/energy.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

#include "kernel_util.hpp"
#include "nlg/errors.hpp"

namespace nlg {

using detail::CellRange;

void require_resolution(double h, double eps) {
    if (!(eps > 0.0)) throw ParameterError("eps must be positive");
    if (h > 0.25 * eps * (1.0 + 1e-12))
        throw ParameterError("grid does not resolve eps: need h <= eps/4 (h = " + std::to_string(h) +
                             ", eps = " + std::to_string(eps) + ")");
}

namespace {

template <class Reg>
double analytic_directional(const FlatField& f, const Grid& g, const Reg& E, const CellRange& range, double eps,
                            const Vec3& xi) {
    const Vec3 step = eps * xi;
    const double affine_part = dot(f.A * step, xi);
    // per jump: normal . step and the slice jump [u].xi
    std::array<double, 8> nstep{}, jxi{};
    const std::size_t nj = std::min<std::size_t>(f.jumps.size(), 8);
    for (std::size_t j = 0; j < nj; ++j) {
        nstep[j] = dot(f.jumps[j].normal, step);
        jxi[j] = dot(f.jumps[j].amplitude(), xi);
    }
    double sum = 0.0;
    detail::for_each_cell(g, range, [&](std::size_t idx, const std::array<int, 3>&) {
        const Vec3& x = g.center(idx);
        if (!E.contains(x)) return;
        const Vec3 y = x + step;
        if (!E.contains(y)) return;
        double s = affine_part;
        if (nj == f.jumps.size()) {
            for (std::size_t j = 0; j < nj; ++j) {
                const double d0 = f.jumps[j].signed_distance(x);
                const bool plus0 = d0 >= 0.0;
                const bool plus1 = d0 + nstep[j] >= 0.0;
                if (plus0 != plus1) s += plus1 ? jxi[j] : -jxi[j];
            }
        } else {
            s = dot(f.eval_unchecked(y) - f.eval_unchecked(x), xi);
        }
        sum += std::atan(s * s / eps);
    });
    return sum * g.cell_volume() / eps;
}

template <class Reg>
double sampled_directional(const SampledField& u, const Reg& E, const CellRange& range, double eps,
                           const Vec3& xi) {
    const Grid& g = u.grid;
    const Vec3 step = eps * xi;
    const detail::Stencil st = detail::make_stencil(g, step);
    double sum = 0.0;
    detail::for_each_cell(g, range, [&](std::size_t idx, const std::array<int, 3>& cell) {
        const Vec3& x = g.center(idx);
        if (!E.contains(x)) return;
        if (!E.contains(x + step)) return;
        const detail::Corners cs = detail::corners_at(g, cell, st);
        Vec3 v;
        for (int c = 0; c < cs.count; ++c) {
            const auto uc = static_cast<std::size_t>(c);
            if (cs.weight[uc] != 0.0) v += cs.weight[uc] * u.values[cs.index[uc]];
        }
        const double s = dot(v - u.values[idx], xi);
        sum += std::atan(s * s / eps);
    });
    return sum * g.cell_volume() / eps;
}

// Dispatch over the region type once, outside the cell loop.
template <class Kernel>
double with_region(const Region& E, const Grid& g, Kernel&& k) {
    const CellRange range = detail::cell_range(g, region_bounds(E, g.dim()));
    return std::visit([&](const auto& reg) { return k(reg, range); }, E);
}

double directional_any(const SampledField* su, const FlatField* af, const Grid& g, const Region& E, double eps,
                       const Vec3& xi) {
    return with_region(E, g, [&](const auto& reg, const CellRange& range) {
        return su ? sampled_directional(*su, reg, range, eps, xi) : analytic_directional(*af, g, reg, range, eps, xi);
    });
}

/// F_{eps,xi_i}(u,E) for every node inside `support` (0 elsewhere), parallel over nodes.
std::vector<double> directional_table(const SampledField* su, const FlatField* af, const Grid& g, const Region& E,
                                      double eps, const DirectionRule& rule, const std::optional<Region>& support) {
    const CellRange range = detail::cell_range(g, region_bounds(E, g.dim()));
    std::vector<double> out(rule.size(), 0.0);
    const auto n = static_cast<long>(rule.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) {
        const Vec3& xi = rule.node(static_cast<std::size_t>(i));
        if (support && !region_contains(*support, xi)) continue;
        out[static_cast<std::size_t>(i)] = std::visit(
            [&](const auto& reg) {
                return su ? sampled_directional(*su, reg, range, eps, xi)
                          : analytic_directional(*af, g, reg, range, eps, xi);
            },
            E);
    }
    return out;
}

QuadParams rule_params(const DirectionRule& rule) {
    QuadParams q;
    q.radial_order = rule.radial_order();
    q.angular_order = rule.angular_order();
    q.r_max = rule.truncation_radius();
    return q;
}

EnergyReport averaged_any(const SampledField* su, const FlatField* af, const Grid& g, const Region& E, double eps,
                          const DirectionRule& rule) {
    require_resolution(g.h(), eps);
    if (rule.dim() != g.dim()) throw ParameterError("direction rule dimension does not match the grid");
    const Region support = difference_set(E, eps);
    EnergyReport rep;
    rep.per_direction = directional_table(su, af, g, E, eps, rule, support);
    rep.total = integrate_values(rule, rep.per_direction, support);
    rep.eps = eps;
    rep.p = 1.0;
    rep.grid_h = g.h();
    rep.rule_meta = rule_params(rule);
    rep.n_directions = rule.size();
    rep.partitions = rule.size();
    return rep;
}

// --- pair energy -------------------------------------------------------------

double pair_from_values(const Grid& g, const std::vector<Vec3>& values, const Region& region, double eps,
                        double r_max) {
    require_resolution(g.h(), eps);
    const int n = g.dim();
    const double cutoff = r_max * eps;
    const int reach = static_cast<int>(std::floor(cutoff / g.h()));
    // neighbour offsets within the cutoff, in a fixed order
    std::vector<std::array<int, 3>> offsets;
    const int rz = n > 2 ? reach : 0, ry = n > 1 ? reach : 0;
    for (int k = -rz; k <= rz; ++k)
        for (int j = -ry; j <= ry; ++j)
            for (int i = -reach; i <= reach; ++i) {
                const double d2 = (double(i) * i + double(j) * j + double(k) * k) * g.h() * g.h();
                if ((i || j || k) && d2 <= cutoff * cutoff) offsets.push_back({i, j, k});
            }

    const std::size_t N = g.size();
    std::vector<double> partial(N, 0.0);
    const double eps3 = eps * eps * eps;
    const auto nn = static_cast<long>(N);
#pragma omp parallel for schedule(static)
    for (long li = 0; li < nn; ++li) {
        const auto idx = static_cast<std::size_t>(li);
        const Vec3& x = g.center(idx);
        if (!region_contains(region, x)) continue;
        const auto cell = g.multi_index(idx);
        double acc = 0.0;
        for (const auto& off : offsets) {
            std::array<int, 3> nb{cell[0] + off[0], cell[1] + off[1], cell[2] + off[2]};
            bool ok = true;
            for (int a = 0; a < n; ++a)
                if (nb[static_cast<std::size_t>(a)] < 0 || nb[static_cast<std::size_t>(a)] >= g.counts()[static_cast<std::size_t>(a)]) ok = false;
            if (!ok) continue;
            const std::size_t jdx = g.index(nb[0], nb[1], nb[2]);
            const Vec3& xp = g.center(jdx);
            if (!region_contains(region, xp)) continue;
            const Vec3 d = xp - x;
            const double s = dot(values[jdx] - values[idx], d);
            acc += std::atan(s * s / eps3) * std::exp(-norm2(d) / (eps * eps));
        }
        partial[idx] = acc;
    }
    double total = 0.0;
    for (double v : partial) total += v;
    return total * g.cell_volume() * g.cell_volume() / std::pow(eps, n + 1);
}

// --- ball families -----------------------------------------------------------

bool ball_fits(const BoxDomain& domain, const Ball& b) {
    for (int a = 0; a < domain.dim(); ++a) {
        if (b.center[a] - b.radius < domain.lower()[a] - 1e-12) return false;
        if (b.center[a] + b.radius > domain.upper()[a] + 1e-12) return false;
    }
    for (const auto& s : domain.precrack())
        if (s.distance(b.center, domain.dim()) < b.radius) return false;
    return true;
}

bool disjoint(const Ball& a, const Ball& b) {
    return norm(a.center - b.center) >= a.radius + b.radius - 1e-12;
}

std::vector<BallFamily> dyadic_families(const BoxDomain& domain, int levels) {
    const int n = domain.dim();
    std::vector<BallFamily> out;
    for (int level = 0; level <= levels; ++level) {
        const int per_axis = 1 << level;
        Vec3 size;
        double radius = 1e300;
        for (int a = 0; a < n; ++a) {
            size[a] = domain.extent()[a] / per_axis;
            radius = std::min(radius, 0.5 * size[a]);
        }
        BallFamily fam;
        const int nz = n > 2 ? per_axis : 1, ny = n > 1 ? per_axis : 1;
        for (int k = 0; k < nz; ++k)
            for (int j = 0; j < ny; ++j)
                for (int i = 0; i < per_axis; ++i) {
                    const std::array<int, 3> id{i, j, k};
                    Vec3 c;
                    for (int a = 0; a < n; ++a)
                        c[a] = domain.lower()[a] + (id[static_cast<std::size_t>(a)] + 0.5) * size[a];
                    const Ball b{c, radius};
                    if (ball_fits(domain, b)) fam.balls.push_back(b);
                }
        if (!fam.balls.empty()) out.push_back(std::move(fam));
    }
    return out;
}

std::vector<BallFamily> greedy_families(const BoxDomain& domain, int count) {
    const int n = domain.dim();
    double r0 = 1e300;
    for (int a = 0; a < n; ++a) r0 = std::min(r0, 0.5 * domain.extent()[a]);
    std::vector<BallFamily> out;
    BallFamily current;
    for (int stage = 0; stage <= 12 && static_cast<int>(current.balls.size()) < count; ++stage) {
        const double r = r0 / std::pow(2.0, stage);
        const double pitch = 0.5 * r;
        std::array<int, 3> steps{1, 1, 1};
        for (int a = 0; a < n; ++a)
            steps[static_cast<std::size_t>(a)] =
                std::max(1, static_cast<int>(std::floor((domain.extent()[a] - 2.0 * r) / pitch + 1e-9)) + 1);
        bool added = false;
        for (int k = 0; k < steps[2]; ++k)
            for (int j = 0; j < steps[1]; ++j)
                for (int i = 0; i < steps[0]; ++i) {
                    if (static_cast<int>(current.balls.size()) >= count) continue;
                    const std::array<int, 3> id{i, j, k};
                    Vec3 c;
                    for (int a = 0; a < n; ++a)
                        c[a] = domain.lower()[a] + r + id[static_cast<std::size_t>(a)] * pitch;
                    const Ball b{c, r};
                    if (!ball_fits(domain, b)) continue;
                    bool free = true;
                    for (const auto& o : current.balls) free = free && disjoint(o, b);
                    if (!free) continue;
                    current.balls.push_back(b);
                    added = true;
                }
        if (added) out.push_back(current);
    }
    return out;
}

EnergyReport family_any(const SampledField* su, const FlatField* af, const Grid& g, const BoxDomain& domain,
                        double eps, double p, const DirectionRule& rule, const std::vector<BallFamily>& families,
                        SupportVariant variant, const std::string& label) {
    require_resolution(g.h(), eps);
    if (!(p >= 1.0)) throw ParameterError("exponent p must be >= 1");
    if (families.empty()) throw ParameterError("no candidate ball family");
    if (rule.dim() != g.dim()) throw ParameterError("direction rule dimension does not match the grid");

    // one evaluation per distinct ball
    std::map<std::tuple<double, double, double, double>, double> memo;
    auto ball_value = [&](const Ball& b) {
        const auto key = std::make_tuple(b.center[0], b.center[1], b.center[2], b.radius);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        const Region E = b;
        const Region support = variant == SupportVariant::PerBall ? difference_set(E, eps)
                                                                  : Region(minkowski_support(domain, eps));
        std::vector<double> table = directional_table(su, af, g, E, eps, rule, support);
        if (p != 1.0)
            for (double& v : table) v = std::pow(v, p);
        const double integral = integrate_values(rule, table, support);
        const double value = p == 1.0 ? integral : std::pow(integral, 1.0 / p);
        memo.emplace(key, value);
        return value;
    };

    EnergyReport best;
    best.total = -1.0;
    for (const auto& fam : families) {
        if (!fam.valid_in(domain)) throw ParameterError("candidate family is not a disjoint family inside the domain");
        std::vector<double> per_ball;
        double total = 0.0;
        for (const auto& b : fam.balls) {
            per_ball.push_back(ball_value(b));
            total += per_ball.back();
        }
        if (total > best.total) {
            best.total = total;
            best.per_ball = std::move(per_ball);
            best.family = fam;
        }
    }
    best.eps = eps;
    best.p = p;
    best.strategy = label;
    best.grid_h = g.h();
    best.rule_meta = rule_params(rule);
    best.n_directions = rule.size();
    best.partitions = best.per_ball.size();
    return best;
}

}  // namespace

// ---------------------------------------------------------------------------

bool BallFamily::valid_in(const BoxDomain& domain) const {
    for (std::size_t i = 0; i < balls.size(); ++i) {
        if (!(balls[i].radius > 0.0) || !ball_fits(domain, balls[i])) return false;
        for (std::size_t j = i + 1; j < balls.size(); ++j)
            if (!disjoint(balls[i], balls[j])) return false;
    }
    return true;
}

BallStrategy BallStrategy::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw ParameterError("strategy must be dyadic:L or greedy:K");
    const std::string_view kind = text.substr(0, colon);
    const std::string_view num = text.substr(colon + 1);
    int value = -1;
    const auto res = std::from_chars(num.data(), num.data() + num.size(), value);
    if (res.ec != std::errc{} || res.ptr != num.data() + num.size() || value < 0)
        throw ParameterError("bad strategy parameter in '" + std::string(text) + "'");
    if (kind == "dyadic") return dyadic(value);
    if (kind == "greedy") {
        if (value < 1) throw ParameterError("greedy strategy needs at least one ball");
        return greedy(value);
    }
    throw ParameterError("unknown strategy '" + std::string(kind) + "'");
}

std::string BallStrategy::to_string() const {
    return (kind == Kind::Dyadic ? "dyadic:" : "greedy:") + std::to_string(param);
}

std::vector<BallFamily> ball_candidates(const BoxDomain& domain, const BallStrategy& strategy) {
    return strategy.kind == BallStrategy::Kind::Dyadic ? dyadic_families(domain, strategy.param)
                                                       : greedy_families(domain, strategy.param);
}

double directional_energy(const SampledField& u, const Region& E, double eps, const Vec3& xi) {
    if (!(eps > 0.0)) throw ParameterError("eps must be positive");
    return directional_any(&u, nullptr, u.grid, E, eps, xi);
}

double directional_energy(const AnalyticField& u, const Grid& grid, const Region& E, double eps, const Vec3& xi) {
    if (!(eps > 0.0)) throw ParameterError("eps must be positive");
    const FlatField f = u.flatten();
    return directional_any(nullptr, &f, grid, E, eps, xi);
}

EnergyReport averaged_energy(const SampledField& u, const Region& E, double eps, const DirectionRule& rule) {
    return averaged_any(&u, nullptr, u.grid, E, eps, rule);
}

EnergyReport averaged_energy(const AnalyticField& u, const Grid& grid, const Region& E, double eps,
                             const DirectionRule& rule) {
    const FlatField f = u.flatten();
    return averaged_any(nullptr, &f, grid, E, eps, rule);
}

double pair_energy(const SampledField& u, const Region& region, double eps, double r_max) {
    return pair_from_values(u.grid, u.values, region, eps, r_max);
}

double pair_energy(const AnalyticField& u, const Grid& grid, const Region& region, double eps, double r_max) {
    const FlatField f = u.flatten();
    std::vector<Vec3> values;
    values.reserve(grid.size());
    for (const auto& x : grid.centers()) values.push_back(f.eval_unchecked(x));
    return pair_from_values(grid, values, region, eps, r_max);
}

EnergyReport ball_sup_energy(const SampledField& u, const BoxDomain& domain, double eps, double p,
                             const DirectionRule& rule, const BallStrategy& strategy, SupportVariant variant) {
    return family_any(&u, nullptr, u.grid, domain, eps, p, rule, ball_candidates(domain, strategy), variant,
                      strategy.to_string());
}

EnergyReport ball_sup_energy(const AnalyticField& u, const Grid& grid, const BoxDomain& domain, double eps, double p,
                             const DirectionRule& rule, const BallStrategy& strategy, SupportVariant variant) {
    const FlatField f = u.flatten();
    return family_any(nullptr, &f, grid, domain, eps, p, rule, ball_candidates(domain, strategy), variant,
                      strategy.to_string());
}

EnergyReport family_energy(const AnalyticField& u, const Grid& grid, const BoxDomain& domain, double eps, double p,
                           const DirectionRule& rule, const BallFamily& family, SupportVariant variant) {
    const FlatField f = u.flatten();
    return family_any(nullptr, &f, grid, domain, eps, p, rule, {family}, variant, "explicit");
}

}  // namespace nlg
