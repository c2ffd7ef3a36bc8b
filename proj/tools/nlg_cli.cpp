// nlg: command-line front end.
//
//   nlg energy        --field cfg.json --eps 0.02 [--p 1] [--h H] [--strategy dyadic:2] --out report.csv
//   nlg p1-explore    --field cfg.json [--h 0.01] [--p 1] [--strategy dyadic:1] --out slices.csv
//   nlg density-table [--dim 2] [--p 1,2] [--scale 0.5,1,2] --out densities.csv
//   nlg minimize      --load 2.0 [--eps 0.02] [--h H] [--continuation 0] [--seed 0] --out trace.csv
//   nlg gamma-study   --spec sweep.json
//   nlg audit         --spec audit.json          (exit code 0 iff every check passes)

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nlg/config.hpp"
#include "nlg/energy.hpp"
#include "nlg/harness.hpp"
#include "nlg/limits.hpp"
#include "nlg/minimize.hpp"
#include "nlg/slicing.hpp"

using namespace nlg;

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParameterError("cannot open '" + path + "' for writing");
    return out;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    if (out.empty()) throw ParameterError("empty value list");
    return out;
}

std::string fmt(double v) { return format_double(v); }

// --- energy -----------------------------------------------------------------

struct EnergyArgs {
    std::string field, strategy = "none", variant = "domain", out = "report.csv";
    double eps = 0.02, p = 1.0, h = 0.0;
};

int run_energy(const EnergyArgs& a) {
    const ProblemConfig cfg = load_problem_config(a.field);
    const double h = a.h > 0.0 ? a.h : a.eps / 8.0;
    const Grid grid = avoid_jumps(Grid(cfg.domain, h), cfg.field);
    const DirectionRule rule = build_direction_rule(cfg.domain.dim(), cfg.quad);
    const SupportVariant variant = a.variant == "per_ball" ? SupportVariant::PerBall : SupportVariant::Domain;
    if (a.variant != "per_ball" && a.variant != "domain") throw ParameterError("variant must be domain or per_ball");

    const auto t0 = std::chrono::steady_clock::now();
    EnergyReport rep;
    if (a.strategy == "none") {
        if (a.p != 1.0) throw ParameterError("p != 1 needs a ball strategy");
        rep = averaged_energy(cfg.field, grid, cfg.domain, a.eps, rule);
        rep.strategy = "none";
    } else {
        rep = ball_sup_energy(cfg.field, grid, cfg.domain, a.eps, a.p, rule, BallStrategy::parse(a.strategy), variant);
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    auto out = open_out(a.out);
    out << "eps,p,h,strategy,total,n_balls,n_directions,wall_ms\n";
    out << fmt(a.eps) << ',' << fmt(a.p) << ',' << fmt(h) << ',' << rep.strategy << ',' << fmt(rep.total) << ','
        << (rep.family ? rep.family->balls.size() : 0) << ',' << rep.n_directions << ',' << fmt(ms) << '\n';
    std::printf("energy %.10g (eps %g, p %g, h %g, strategy %s)\n", rep.total, a.eps, a.p, h, rep.strategy.c_str());
    return 0;
}

// --- p1-explore -------------------------------------------------------------

struct ExploreArgs {
    std::string field, strategy = "dyadic:1", out = "slices.csv";
    double h = 0.01, p = 1.0;
    int sphere_order = 64;
};

int run_explore(const ExploreArgs& a) {
    const ProblemConfig cfg = load_problem_config(a.field);
    const int n = cfg.domain.dim();
    const SphereRule sphere = build_sphere_rule(n, a.sphere_order);
    const Region omega = cfg.domain;
    auto out = open_out(a.out);
    out << "kind,index,coord0,coord1,coord2,radius,value\n";
    for (std::size_t k = 0; k < sphere.nodes.size(); ++k) {
        const Vec3& xi = sphere.nodes[k];
        out << "mu_xi," << k << ',' << fmt(xi[0]) << ',' << fmt(xi[1]) << ',' << fmt(xi[2]) << ",0,"
            << fmt(mu_xi(cfg.field, xi, omega, n, a.h)) << '\n';
    }
    const MuHatReport mu = mu_hat_p(cfg.field, cfg.domain, a.p, sphere, BallStrategy::parse(a.strategy), a.h);
    for (std::size_t b = 0; b < mu.family.balls.size(); ++b) {
        const Ball& ball = mu.family.balls[b];
        const std::string where = fmt(ball.center[0]) + ',' + fmt(ball.center[1]) + ',' + fmt(ball.center[2]) + ',' +
                                  fmt(ball.radius);
        out << "mu_hat_p," << b << ',' << where << ',' << fmt(mu.per_ball[b]) << '\n';
        out << "I_u1," << b << ',' << where << ',' << fmt(I_u1(cfg.field, ball, sphere, n, a.h)) << '\n';
    }
    out << "mu_hat_p_total,0,0,0,0,0," << fmt(mu.value) << '\n';
    out << "I_u1_total,0,0,0,0,0," << fmt(I_u1(cfg.field, omega, sphere, n, a.h)) << '\n';
    std::printf("mu_hat_p lower bound %.10g over %zu balls\n", mu.value, mu.family.balls.size());
    return 0;
}

// --- density-table ----------------------------------------------------------

struct DensityArgs {
    int dim = 2;
    std::string p = "1,2", scale = "0.5,1,2", out = "densities.csv";
};

int run_density(const DensityArgs& a) {
    const int n = a.dim;
    const DirectionRule rule = build_direction_rule(n, QuadParams::defaults(n));
    Mat3 uniaxial, shear, skew;
    uniaxial(0, 0) = 1.0;
    if (n > 1) {
        shear(0, 1) = shear(1, 0) = 0.5;
        skew(0, 1) = 1.0;
        skew(1, 0) = -1.0;
    }
    const std::vector<std::pair<std::string, Mat3>> mats{
        {"identity", Mat3::identity(n)}, {"uniaxial", uniaxial}, {"shear", shear}, {"skew", skew}};
    auto out = open_out(a.out);
    out << "matrix,scale,p,convention,phi,beta,p1_closed_form\n";
    for (const auto& [name, M] : mats)
        for (double s : parse_list(a.scale))
            for (double p : parse_list(a.p))
                for (Convention c : {Convention::Verbatim, Convention::Calibrated}) {
                    const Mat3 A = s * M;
                    out << name << ',' << fmt(s) << ',' << fmt(p) << ',' << to_string(c) << ','
                        << fmt(phi_p(A, p, rule, c)) << ',' << fmt(beta_p(p, rule, c)) << ','
                        << fmt(p1_bulk_density(A, n)) << '\n';
                }
    return 0;
}

// --- minimize ---------------------------------------------------------------

struct MinimizeArgs {
    double load = 2.0, eps = 0.02, h = 0.0;
    int continuation = 0, max_iter = 3000;
    std::uint64_t seed = 0;
    std::string nucleation = "candidates", out = "trace.csv", final_out = "final_field.csv";
};

int run_minimize(const MinimizeArgs& a) {
    const double h = a.h > 0.0 ? a.h : a.eps / 8.0;
    const DirichletProblem prob = bar_problem(a.load, a.eps, h);
    DescentOptions opts;
    opts.max_iter = a.max_iter;
    opts.continuation = a.continuation;
    opts.seed = a.seed;
    opts.nucleation = parse_nucleation(a.nucleation);
    const DescentTrace tr = minimize_dirichlet(prob, opts);

    auto trace = open_out(a.out);
    trace << "iteration,eps,energy,grad_norm,step\n";
    for (std::size_t i = 0; i < tr.energies.size(); ++i)
        trace << i << ',' << fmt(tr.eps_levels[i]) << ',' << fmt(tr.energies[i]) << ',' << fmt(tr.grad_norms[i])
              << ',' << (i < tr.step_sizes.size() ? fmt(tr.step_sizes[i]) : std::string()) << '\n';

    auto field = open_out(a.final_out);
    field << "cell,x0,u0,frozen\n";
    for (std::size_t i = 0; i < tr.final.size(); ++i)
        field << i << ',' << fmt(tr.final.grid.center(i)[0]) << ',' << fmt(tr.final.values[i][0]) << ','
              << (tr.final.frozen(i) ? 1 : 0) << '\n';

    const DirectionRule rule = build_direction_rule(1, QuadParams::defaults(1));
    std::printf("start %s, energy %.10g, stop %s, iterations %zu, cracks %d, gap %.3g\n", tr.start.c_str(),
                tr.final_energy, to_string(tr.stop_reason).c_str(), tr.energies.size(),
                count_cracks(tr.final, a.eps, 0.5), quasi_min_gap(tr.final, prob, rule));
    return 0;
}

// --- gamma-study / audit ----------------------------------------------------

int run_gamma(const std::string& spec_path, const std::string& out) {
    SweepSpec spec = load_sweep_spec(spec_path);
    if (!out.empty()) spec.output = out;
    const ExtrapolationResult r = run_sweep(spec);
    for (const auto& p : r.points) std::printf("eps %-8g h %-10g value %.10g\n", p.eps, p.h, p.value);
    std::printf("extrapolated %.10g  raw %.10g  target %.10g  relative error %.3e\n", r.extrapolated, r.raw_smallest,
                r.target, r.relative_error);
    return 0;
}

int run_audit(const std::string& spec_path, const std::string& out) {
    AuditSpec spec = load_audit_spec(spec_path);
    if (!out.empty()) spec.params.output = out;
    const AuditReport rep = audit_inequalities(spec.fields, spec.params);
    std::size_t failed = 0;
    for (const auto& it : rep.items)
        if (!it.pass) {
            ++failed;
            std::printf("FAIL %s field %zu %s: lhs %.10g rhs %.10g\n", it.check.c_str(), it.field, it.detail.c_str(),
                        it.lhs, it.rhs);
        }
    std::printf("%zu checks, %zu failed\n", rep.items.size(), failed);
    return rep.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlocal arctan energies, limit densities and fracture experiments"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "Print this help message and exit");

    EnergyArgs ea;
    auto* energy = app.add_subcommand("energy", "Evaluate the averaged or ball-supremum energy of a field");
    energy->add_option("--field", ea.field, "JSON field/domain config")->required()->check(CLI::ExistingFile);
    energy->add_option("--eps", ea.eps, "Length scale eps");
    energy->add_option("--p", ea.p, "Exponent p >= 1");
    energy->add_option("--h", ea.h, "Grid spacing (default eps/8)");
    energy->add_option("--strategy", ea.strategy, "none | dyadic:L | greedy:K");
    energy->add_option("--variant", ea.variant, "domain | per_ball");
    energy->add_option("--out", ea.out, "CSV report");

    ExploreArgs xa;
    auto* explore = app.add_subcommand("p1-explore", "Slice measures of an analytic field");
    explore->add_option("--field", xa.field, "JSON field/domain config")->required()->check(CLI::ExistingFile);
    explore->add_option("--h", xa.h, "Transverse resolution");
    explore->add_option("--p", xa.p, "Exponent p >= 1");
    explore->add_option("--strategy", xa.strategy, "dyadic:L | greedy:K");
    explore->add_option("--sphere-order", xa.sphere_order, "Angular order of the sphere rule");
    explore->add_option("--out", xa.out, "CSV output");

    DensityArgs da;
    auto* density = app.add_subcommand("density-table", "Limit densities phi_p and beta_p in both conventions");
    density->add_option("--dim", da.dim, "Dimension (1-3)");
    density->add_option("--p", da.p, "Comma-separated exponents");
    density->add_option("--scale", da.scale, "Comma-separated matrix scales");
    density->add_option("--out", da.out, "CSV output");

    MinimizeArgs ma;
    auto* minimize = app.add_subcommand("minimize", "Dirichlet descent on the loaded unit bar");
    minimize->add_option("--load", ma.load, "Grip displacement t");
    minimize->add_option("--eps", ma.eps, "Length scale eps");
    minimize->add_option("--h", ma.h, "Grid spacing (default eps/8)");
    minimize->add_option("--continuation", ma.continuation, "Extra eps-halving levels");
    minimize->add_option("--seed", ma.seed, "Seed of the random nucleation");
    minimize->add_option("--nucleation", ma.nucleation, "none | random | candidates");
    minimize->add_option("--max-iter", ma.max_iter, "Iterations per eps level");
    minimize->add_option("--out", ma.out, "Trace CSV");
    minimize->add_option("--final", ma.final_out, "Final field CSV");

    std::string gamma_spec, gamma_out;
    auto* gamma = app.add_subcommand("gamma-study", "eps sweep with extrapolation against the limit energy");
    gamma->add_option("--spec", gamma_spec, "JSON sweep spec")->required()->check(CLI::ExistingFile);
    gamma->add_option("--out", gamma_out, "CSV output (overrides the spec)");

    std::string audit_spec, audit_out;
    auto* audit = app.add_subcommand("audit", "Inequality audit; exit code 0 iff all checks pass");
    audit->add_option("--spec", audit_spec, "JSON audit spec")->required()->check(CLI::ExistingFile);
    audit->add_option("--out", audit_out, "CSV output (overrides the spec)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*energy) return run_energy(ea);
        if (*explore) return run_explore(xa);
        if (*density) return run_density(da);
        if (*minimize) return run_minimize(ma);
        if (*gamma) return run_gamma(gamma_spec, gamma_out);
        if (*audit) return run_audit(audit_spec, audit_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
