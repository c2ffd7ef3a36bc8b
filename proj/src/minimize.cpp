#include "nlg/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "nlg/errors.hpp"

namespace nlg {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxHalvings = 60;
constexpr int kStagnationWindow = 20;

SampledField frozen_shell(const DirichletProblem& prob) {
    const FlatField f = prob.datum.flatten();
    SampledField u;
    u.grid = prob.grid;
    u.values.resize(prob.grid.size());
    u.dirichlet.resize(prob.grid.size());
    for (std::size_t i = 0; i < prob.grid.size(); ++i) {
        const Vec3& x = prob.grid.center(i);
        const bool frozen = !prob.inner.contains(x);
        u.dirichlet[i] = frozen ? 1 : 0;
        if (frozen) u.values[i] = f.eval_unchecked(x);
    }
    return u;
}

// Datum values just outside the two axis-0 faces of Omega, on the line through x.
std::pair<Vec3, Vec3> face_values(const DirichletProblem& prob, const FlatField& f, const Vec3& x, double& xl,
                                  double& xr) {
    const double h = prob.grid.h();
    xl = prob.inner.lower()[0] - 0.5 * h;
    xr = prob.inner.upper()[0] + 0.5 * h;
    Vec3 pl = x, pr = x;
    pl[0] = xl;
    pr[0] = xr;
    return {f.eval_unchecked(pl), f.eval_unchecked(pr)};
}

double sum_sq(const std::vector<Vec3>& g) {
    double s = 0.0;
    for (const auto& v : g) s += norm2(v);
    return s;
}

struct Level {
    double eps;
    const DirectionRule* rule;
};

// Backtracking descent at one eps; appends to the trace and returns false on a hard stop.
bool descend(SampledField& u, const Level& level, const DescentOptions& opts, DescentTrace& trace) {
    const Grid& g = u.grid;
    const double inv_cell = 1.0 / g.cell_volume();
    EnergyAndGradient cur = energy_gradient(u, level.eps, *level.rule);
    double alpha = 0.0;
    int quiet = 0;
    for (int it = 0;; ++it) {
        const double gn2 = sum_sq(cur.gradient) * inv_cell;
        trace.energies.push_back(cur.energy);
        trace.grad_norms.push_back(std::sqrt(gn2));
        trace.eps_levels.push_back(level.eps);
        if (opts.observer) opts.observer(static_cast<int>(trace.energies.size()) - 1, u);
        if (std::sqrt(gn2) <= opts.gtol) {
            trace.stop_reason = StopReason::GradientTolerance;
            trace.converged = true;
            return true;
        }
        if (it >= opts.max_iter) {
            trace.stop_reason = StopReason::MaxIterations;
            trace.converged = false;
            return true;
        }
        std::vector<Vec3> dir(u.size());
        double dmax = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            dir[i] = -inv_cell * cur.gradient[i];
            dmax = std::max(dmax, norm(dir[i]));
        }
        if (alpha <= 0.0) alpha = 0.01 / dmax;

        SampledField trial = u;
        EnergyAndGradient next;
        bool accepted = false;
        for (int k = 0; k < kMaxHalvings; ++k) {
            for (std::size_t i = 0; i < u.size(); ++i)
                if (!u.frozen(i)) trial.values[i] = u.values[i] + alpha * dir[i];
            next = energy_gradient(trial, level.eps, *level.rule);
            if (next.energy <= cur.energy - kArmijo * alpha * gn2) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            trace.stop_reason = StopReason::LineSearchFailed;
            trace.converged = false;
            return false;
        }
        trace.step_sizes.push_back(alpha);

        // Barzilai-Borwein step for the next iteration
        double ss = 0.0, sy = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            const Vec3 s = alpha * dir[i];
            ss += norm2(s);
            sy += dot(s, inv_cell * (next.gradient[i] - cur.gradient[i]));
        }
        const double decrease = cur.energy - next.energy;
        u = std::move(trial);
        cur = std::move(next);
        alpha = sy > 0.0 ? std::clamp(ss / sy, 1e-12, 1e12) : 2.0 * alpha;

        quiet = decrease <= opts.ftol * (1.0 + std::abs(cur.energy)) ? quiet + 1 : 0;
        if (quiet >= kStagnationWindow) {
            trace.energies.push_back(cur.energy);
            trace.grad_norms.push_back(std::sqrt(sum_sq(cur.gradient) * inv_cell));
            trace.eps_levels.push_back(level.eps);
            if (opts.observer) opts.observer(static_cast<int>(trace.energies.size()) - 1, u);
            trace.stop_reason = StopReason::EnergyStagnation;
            trace.converged = true;
            return true;
        }
    }
}

DescentTrace run_from(SampledField u, const DirichletProblem& prob, const DescentOptions& opts,
                      const DirectionRule& rule, const std::string& label) {
    DescentTrace trace;
    trace.start = label;
    for (int k = opts.continuation; k >= 0; --k) {
        const double eps = prob.eps * std::ldexp(1.0, k);
        if (prob.grid.h() > 0.25 * eps * (1.0 + 1e-12)) {
            trace.stop_reason = StopReason::GridCapability;
            trace.converged = false;
            break;
        }
        if (!descend(u, {eps, &rule}, opts, trace)) break;
    }
    trace.final_energy = trace.energies.empty() ? 0.0 : trace.energies.back();
    trace.final = std::move(u);
    return trace;
}

}  // namespace

void DirichletProblem::validate() const {
    const int n = outer.dim();
    if (inner.dim() != n || grid.dim() != n) throw ParameterError("problem dimensions disagree");
    for (int a = 0; a < n; ++a)
        if (!(outer.lower()[a] < inner.lower()[a] && inner.upper()[a] < outer.upper()[a]))
            throw ParameterError("Omega must lie strictly inside Omega'");
    if (!(grid.domain().lower() == outer.lower()) || !(grid.domain().upper() == outer.upper()))
        throw ParameterError("the grid must tile Omega'");
    if (!(eps > 0.0)) throw ParameterError("eps must be positive");
    if (!(p >= 1.0)) throw ParameterError("exponent p must be >= 1");
}

DirichletProblem bar_problem(double load, double eps, double h) {
    if (!(h > 0.0)) throw ParameterError("grid spacing must be positive");
    const double margin = h * std::max(1.0, std::round(0.125 / h));
    const double cells_inner = std::round(1.0 / h);
    if (std::abs(cells_inner * h - 1.0) > 1e-9) throw ParameterError("1/h must be an integer");
    DirichletProblem prob;
    prob.inner = BoxDomain(1, Vec3{0.0}, Vec3{1.0});
    prob.outer = BoxDomain(1, Vec3{-margin}, Vec3{1.0 + margin});
    prob.datum = AnalyticField::plane_jump(Vec3{1.0}, 0.5, Vec3{0.0}, Vec3{load});
    prob.eps = eps;
    prob.grid = Grid(prob.outer, h);
    prob.validate();
    return prob;
}

std::string to_string(StopReason r) {
    switch (r) {
        case StopReason::GradientTolerance: return "gradient_tolerance";
        case StopReason::MaxIterations: return "max_iterations";
        case StopReason::LineSearchFailed: return "line_search_failed";
        case StopReason::GridCapability: return "grid_capability";
        case StopReason::EnergyStagnation: return "energy_stagnation";
    }
    return "unknown";
}

Nucleation parse_nucleation(const std::string& text) {
    if (text == "none") return Nucleation::None;
    if (text == "random") return Nucleation::Random;
    if (text == "candidates") return Nucleation::Candidates;
    throw ParameterError("nucleation must be none, random or candidates");
}

SampledField elastic_interpolant(const DirichletProblem& prob) {
    const FlatField f = prob.datum.flatten();
    SampledField u = frozen_shell(prob);
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u.frozen(i)) continue;
        const Vec3& x = prob.grid.center(i);
        double xl = 0.0, xr = 0.0;
        const auto [fl, fr] = face_values(prob, f, x, xl, xr);
        const double lambda = (x[0] - xl) / (xr - xl);
        u.values[i] = fl + lambda * (fr - fl);
    }
    return u;
}

SampledField cracked_candidate(const DirichletProblem& prob, double plane) {
    const FlatField f = prob.datum.flatten();
    SampledField u = frozen_shell(prob);
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u.frozen(i)) continue;
        const Vec3& x = prob.grid.center(i);
        double xl = 0.0, xr = 0.0;
        const auto [fl, fr] = face_values(prob, f, x, xl, xr);
        u.values[i] = x[0] < plane ? fl : fr;
    }
    return u;
}

std::vector<double> candidate_planes(const DirichletProblem& prob, int stride) {
    if (stride < 1) throw ParameterError("candidate stride must be positive");
    const Grid& g = prob.grid;
    std::vector<double> planes;
    for (int k = 1; k < g.counts()[0]; k += stride) {
        const double face = g.origin()[0] + (k - 0.5) * g.h();
        if (face - 0.5 * g.h() > prob.inner.lower()[0] && face + 0.5 * g.h() < prob.inner.upper()[0])
            planes.push_back(face);
    }
    return planes;
}

DescentTrace minimize_dirichlet(const DirichletProblem& prob, const DescentOptions& opts) {
    prob.validate();
    if (opts.continuation < 0) throw ParameterError("continuation levels must be nonnegative");
    const DirectionRule rule = build_direction_rule(prob.grid.dim(), opts.quad.value_or(QuadParams::defaults(prob.grid.dim())));

    SampledField start = elastic_interpolant(prob);
    if (opts.nucleation == Nucleation::Random) {
        std::mt19937_64 rng(opts.seed);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        for (std::size_t i = 0; i < start.size(); ++i) {
            if (start.frozen(i)) continue;
            for (int a = 0; a < prob.grid.dim(); ++a) start.values[i][a] += opts.nucleation_amplitude * unif(rng);
        }
        return run_from(std::move(start), prob, opts, rule, "random");
    }
    DescentTrace elastic = run_from(std::move(start), prob, opts, rule, "elastic");
    if (opts.nucleation == Nucleation::None) return elastic;

    double best_plane = 0.0, best_energy = std::numeric_limits<double>::infinity();
    for (double plane : candidate_planes(prob, opts.candidate_stride)) {
        const double e = averaged_energy(cracked_candidate(prob, plane), prob.outer, prob.eps, rule).total;
        if (e < best_energy) {
            best_energy = e;
            best_plane = plane;
        }
    }
    if (!std::isfinite(best_energy)) return elastic;
    DescentTrace cracked = run_from(cracked_candidate(prob, best_plane), prob, opts, rule, "cracked");
    return cracked.final_energy < elastic.final_energy ? cracked : elastic;
}

double quasi_min_gap(const SampledField& u, const DirichletProblem& prob, const DirectionRule& rule, int stride) {
    auto F = [&](const SampledField& v) { return averaged_energy(v, prob.outer, prob.eps, rule).total; };
    double best = F(elastic_interpolant(prob));
    for (double plane : candidate_planes(prob, stride)) best = std::min(best, F(cracked_candidate(prob, plane)));
    return std::max(0.0, F(u) - best);
}

int count_cracks(const SampledField& u, double eps, double threshold) {
    const Grid& g = u.grid;
    if (g.dim() != 1) throw ParameterError("crack counting is implemented for 1D fields");
    const auto k = static_cast<std::size_t>(std::max(1.0, std::round(eps / g.h())));
    int runs = 0;
    bool in_run = false;
    for (std::size_t i = 0; i + k < u.size(); ++i) {
        const bool big = u.values[i + k][0] - u.values[i][0] > threshold;
        if (big && !in_run) ++runs;
        in_run = big;
    }
    return runs;
}

double max_band_difference(const SampledField& u, double eps) {
    const Grid& g = u.grid;
    if (g.dim() != 1) throw ParameterError("band differences are implemented for 1D fields");
    const auto k = static_cast<std::size_t>(std::max(1.0, std::round(eps / g.h())));
    double m = 0.0;
    for (std::size_t i = 0; i + k < u.size(); ++i) m = std::max(m, u.values[i + k][0] - u.values[i][0]);
    return m;
}

}  // namespace nlg
