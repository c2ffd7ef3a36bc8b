#include "nlg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "nlg/errors.hpp"
#include "nlg/slicing.hpp"

namespace nlg {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write_file(const std::string& path, const std::string& text) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParameterError("cannot open '" + path + "' for writing");
    out << text;
}

double spec_relative_error(double x, double target) {
    return std::abs(x - target) / (1.0 + std::abs(target));
}

}  // namespace

void SweepSpec::validate() const {
    if (eps_list.size() < 2) throw ParameterError("a sweep needs at least two eps values");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0)) throw ParameterError("eps values must be positive");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw ParameterError("eps list must be strictly decreasing");
    }
    if (h_factor < 4) throw ParameterError("grid capability: h = eps/k needs k >= 4");
    if (!(p >= 1.0)) throw ParameterError("exponent p must be >= 1");
    if (!strategy && p != 1.0) throw ParameterError("p != 1 requires a ball strategy");
}

double richardson(double eps_a, double value_a, double eps_b, double value_b) {
    if (eps_a == eps_b) throw ParameterError("Richardson extrapolation needs two distinct eps");
    return (eps_a * value_b - eps_b * value_a) / (eps_a - eps_b);
}

double richardson_quadratic(double f_eps, double f_half, double f_quarter) {
    return (8.0 * f_quarter - 6.0 * f_half + f_eps) / 3.0;
}

ExtrapolationResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    const int n = spec.domain.dim();
    const DirectionRule rule = build_direction_rule(n, spec.quad);
    ExtrapolationResult res;
    for (double eps : spec.eps_list) {
        const double h = eps / spec.h_factor;
        const Grid grid = avoid_jumps(Grid(spec.domain, h), spec.field);
        SweepPoint pt;
        pt.eps = eps;
        pt.h = h;
        if (spec.strategy) {
            const EnergyReport rep =
                ball_sup_energy(spec.field, grid, spec.domain, eps, spec.p, rule, *spec.strategy, spec.variant);
            pt.value = rep.total;
            pt.n_directions = rep.n_directions;
            pt.partitions = rep.partitions;
            pt.n_balls = rep.family ? rep.family->balls.size() : 0;
        } else {
            const EnergyReport rep = averaged_energy(spec.field, grid, spec.domain, eps, rule);
            pt.value = rep.total;
            pt.n_directions = rep.n_directions;
            pt.partitions = rep.partitions;
        }
        res.points.push_back(pt);
    }
    const auto& a = res.points[res.points.size() - 2];
    const auto& b = res.points.back();
    res.extrapolated = richardson(a.eps, a.value, b.eps, b.value);
    res.raw_smallest = b.value;
    res.target = spec.target ? *spec.target
                             : griffith_energy(spec.field, spec.domain, spec.p, rule, spec.convention).total;
    res.relative_error = spec_relative_error(res.extrapolated, res.target);
    res.strict_relative_error =
        res.target != 0.0 ? std::abs(res.extrapolated - res.target) / std::abs(res.target) : std::abs(res.extrapolated);

    std::ostringstream csv;
    csv << "kind,eps,h,value,target,relative_error\n";
    for (const auto& pt : res.points)
        csv << "sample," << format_double(pt.eps) << ',' << format_double(pt.h) << ',' << format_double(pt.value)
            << ',' << format_double(res.target) << ',' << format_double(spec_relative_error(pt.value, res.target))
            << '\n';
    csv << "extrapolated,0,0," << format_double(res.extrapolated) << ',' << format_double(res.target) << ','
        << format_double(res.relative_error) << '\n';
    csv << "raw_smallest," << format_double(b.eps) << ',' << format_double(b.h) << ','
        << format_double(res.raw_smallest) << ',' << format_double(res.target) << ','
        << format_double(spec_relative_error(res.raw_smallest, res.target)) << '\n';
    res.csv = csv.str();
    write_file(spec.output, res.csv);
    return res;
}

// ---------------------------------------------------------------------------

std::vector<AnalyticField> random_piecewise_fields(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0), angle(0.0, 2.0 * std::numbers::pi),
        centre(0.35, 0.65), amp(0.2, 3.0);
    std::vector<AnalyticField> out;
    for (std::size_t k = 0; k < count; ++k) {
        Mat3 A;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) A(i, j) = unit(rng);
        const Vec3 b{unit(rng), unit(rng)};
        std::vector<AnalyticField> terms{AnalyticField::affine(A, b)};
        const int jumps = 1 + static_cast<int>(rng() % 2);
        for (int j = 0; j < jumps; ++j) {
            const double th = angle(rng);
            const Vec3 nu{std::cos(th), std::sin(th)};
            const Vec3 p{centre(rng), centre(rng)};
            const double a = amp(rng), phi = angle(rng);
            terms.push_back(AnalyticField::plane_jump(nu, dot(nu, p), Vec3{}, Vec3{a * std::cos(phi), a * std::sin(phi)}));
        }
        out.push_back(AnalyticField::sum(std::move(terms)));
    }
    return out;
}

namespace {

struct Checker {
    AuditReport& report;

    // slack is rhs - lhs (upper bounds) or lhs - rhs (lower bounds); pass iff slack + tolerance >= 0
    void add(std::string check, std::size_t field, std::string detail, double lhs, double rhs, double slack,
             double tolerance) {
        const double margin = slack + tolerance;
        AuditItem item{std::move(check), field, std::move(detail), lhs, rhs, margin, tolerance, margin >= 0.0};
        report.all_pass = report.all_pass && item.pass;
        report.items.push_back(std::move(item));
    }
};

struct Line {
    Vec3 xi;
    Vec3 y;
};

std::vector<Line> random_lines(std::mt19937_64& rng, int count) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi), pos(0.3, 0.7), len(0.5, 1.5);
    std::vector<Line> lines;
    for (int i = 0; i < count; ++i) {
        const double th = angle(rng), r = len(rng);
        lines.push_back({Vec3{r * std::cos(th), r * std::sin(th)}, Vec3{pos(rng), pos(rng)}});
    }
    return lines;
}

std::string line_detail(int index, const Line& l, double extra_value, const char* extra_name) {
    std::ostringstream s;
    s << "slice=" << index << " xi=(" << format_double(l.xi[0]) << ";" << format_double(l.xi[1]) << ") "
      << extra_name << "=" << format_double(extra_value);
    return s.str();
}

}  // namespace

AuditReport audit_inequalities(const std::vector<AnalyticField>& fields, const AuditParams& params) {
    AuditReport report;
    Checker chk{report};
    const BoxDomain omega(2, Vec3{0.0, 0.0}, Vec3{1.0, 1.0});
    const BoxDomain inner(2, Vec3{0.25, 0.25}, Vec3{0.75, 0.75});
    const double half_pi = 0.5 * std::numbers::pi;
    std::mt19937_64 rng(params.seed ^ 0x5bd1e995ULL);

    // Lebesgue measure on {|xi| <= rho}: radial Gauss-Legendre x equal angles.
    std::vector<Vec3> r_nodes;
    std::vector<double> r_weights;
    {
        std::vector<double> r, wr;
        gauss_legendre(8, 0.0, params.mstep_rho, r, wr);
        const int m = 16;
        for (std::size_t i = 0; i < r.size(); ++i)
            for (int k = 0; k < m; ++k) {
                const double th = 2.0 * std::numbers::pi * (k + 0.5) / m;
                r_nodes.emplace_back(r[i] * std::cos(th), r[i] * std::sin(th));
                r_weights.push_back(wr[i] * r[i] * 2.0 * std::numbers::pi / m);
            }
    }

    for (std::size_t f = 0; f < fields.size(); ++f) {
        const AnalyticField& u = fields[f];
        const FlatField flat = u.flatten();
        const auto lines = random_lines(rng, params.slices);

        for (int li = 0; li < static_cast<int>(lines.size()); ++li) {
            const Line& line = lines[static_cast<std::size_t>(li)];
            const Section1D v = section(u, line.xi, line.y, Region(omega));
            const auto dom = v.domain();
            if (dom.empty()) continue;
            const Interval I = dom.front();

            // upper bound F_eps(v, I cap (I - eps)) <= pi/2 MS_{2/pi}(v, I)
            const double ms = half_pi * ms_1d(v, I, 2.0 / std::numbers::pi);
            for (double eps : params.upper_bound_eps) {
                if (!(I.length() > eps)) continue;
                const double lhs = F1d(v, Interval{I.a, I.b - eps}, eps);
                chk.add("upper_bound", f, line_detail(li, line, eps, "eps"), lhs, ms, ms - lhs, 1e-12 * (1.0 + ms));
            }

            // liminf lower bound at Lebesgue points a, b
            const double a = I.a + 0.15 * I.length(), b = I.b - 0.15 * I.length();
            const double e0 = params.lower_bound_eps;
            const double lb = lower_bound_1d(v, a, b, 1e-3 * I.length());
            const double limit = richardson_quadratic(F1d(v, Interval{a, b}, e0), F1d(v, Interval{a, b}, 0.5 * e0),
                                                      F1d(v, Interval{a, b}, 0.25 * e0));
            chk.add("lower_bound", f, line_detail(li, line, e0, "eps"), limit, lb, limit - lb, 1e-6 * (1.0 + lb));
        }

        // translation estimate
        {
            const double delta = params.translation_delta;
            const double h = delta / 4.0;
            const Grid grid = avoid_jumps(Grid(omega, h), u);
            const auto dirs = random_lines(rng, params.slices);
            double face_sum = 0.0;
            for (const auto& d : dirs)
                face_sum = std::max(face_sum, (std::abs(d.xi[0]) + h / delta) * inner.extent()[1] +
                                                  (std::abs(d.xi[1]) + h / delta) * inner.extent()[0]);
            const double perimeter = 2.0 * (inner.extent()[0] + inner.extent()[1]);
            const double C = std::max(4.0, 0.5 * (inner.volume() + perimeter * h) + std::numbers::pi * face_sum);
            for (int di = 0; di < static_cast<int>(dirs.size()); ++di) {
                const Vec3& xi = dirs[static_cast<std::size_t>(di)].xi;
                double lhs = 0.0;
                for (std::size_t c = 0; c < grid.size(); ++c) {
                    const Vec3& x = grid.center(c);
                    if (!inner.contains(x)) continue;
                    lhs += std::abs(std::atan(dot(flat.eval_unchecked(x + delta * xi), xi)) -
                                    std::atan(dot(flat.eval_unchecked(x), xi)));
                }
                lhs *= grid.cell_volume();
                const double F = directional_energy(u, grid, Region(inner), delta, xi);
                const double rhs = C * delta * (1.0 + F);
                chk.add("translation", f, line_detail(di, dirs[static_cast<std::size_t>(di)], C, "C_E"), lhs, rhs,
                        rhs - lhs, 1e-12 * (1.0 + rhs));
            }
        }

        // m-step monotonicity
        {
            const double eps = params.mstep_eps;
            const Grid grid = avoid_jumps(Grid(omega, eps / 4.0), u);
            double rhs = 0.0;
            for (std::size_t k = 0; k < r_nodes.size(); ++k)
                rhs += r_weights[k] * directional_energy(u, grid, Region(omega), eps, r_nodes[k]);
            for (int m : params.mstep_m) {
                if (!(m * eps < params.mstep_eta)) throw ParameterError("m-step check needs m eps < eta");
                double lhs = 0.0;
                for (std::size_t k = 0; k < r_nodes.size(); ++k)
                    lhs += r_weights[k] * directional_energy(u, grid, Region(inner), m * eps, r_nodes[k]);
                chk.add("m_step", f, "m=" + std::to_string(m), lhs, rhs, rhs - lhs, params.mstep_tolerance * rhs);
            }
        }
    }

    std::ostringstream csv;
    csv << "check,field,detail,lhs,rhs,margin,tolerance,pass\n";
    for (const auto& it : report.items)
        csv << it.check << ',' << it.field << ',' << it.detail << ',' << format_double(it.lhs) << ','
            << format_double(it.rhs) << ',' << format_double(it.margin) << ',' << format_double(it.tolerance) << ','
            << (it.pass ? 1 : 0) << '\n';
    report.csv = csv.str();
    write_file(params.output, report.csv);
    return report;
}

}  // namespace nlg
