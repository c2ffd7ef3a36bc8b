#pragma once

// Experiment orchestration: eps sweeps with Richardson extrapolation against
// the limit energy, the inequality audit, and CSV emission.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlg/domain.hpp"
#include "nlg/energy.hpp"
#include "nlg/limits.hpp"
#include "nlg/quad.hpp"

namespace nlg {

struct SweepSpec {
    AnalyticField field = AnalyticField::constant({});
    BoxDomain domain;
    /// Strictly decreasing.
    std::vector<double> eps_list;
    /// h = eps / h_factor, h_factor >= 4.
    int h_factor = 8;
    double p = 1.0;
    QuadParams quad = QuadParams::defaults(1);
    /// Ball supremum with this strategy; the averaged energy over the domain when empty.
    std::optional<BallStrategy> strategy;
    SupportVariant variant = SupportVariant::Domain;
    Convention convention = Convention::Calibrated;
    /// Overrides the limit energy of the field as comparison target.
    std::optional<double> target;
    /// CSV destination; nothing is written when empty.
    std::string output;

    /// Throws ParameterError on an invalid spec.
    void validate() const;
};

struct SweepPoint {
    double eps = 0.0;
    double h = 0.0;
    double value = 0.0;
    std::size_t n_directions = 0;
    std::size_t partitions = 0;
    std::size_t n_balls = 0;
};

struct ExtrapolationResult {
    std::vector<SweepPoint> points;
    /// First-order Richardson value from the two smallest eps.
    double extrapolated = 0.0;
    /// Value at the smallest eps.
    double raw_smallest = 0.0;
    double target = 0.0;
    /// |extrapolated - target| / (1 + |target|).
    double relative_error = 0.0;
    /// |extrapolated - target| / |target| (equals relative_error's numerator when target = 0).
    double strict_relative_error = 0.0;
    /// CSV text as written to the output path.
    std::string csv;
};

/// Limit of F(eps) = L + c eps through (eps_a, F_a), (eps_b, F_b).
double richardson(double eps_a, double value_a, double eps_b, double value_b);
/// Limit of F(eps) = L + c1 eps + c2 eps^2 from F(eps), F(eps/2), F(eps/4).
double richardson_quadratic(double f_eps, double f_half, double f_quarter);

ExtrapolationResult run_sweep(const SweepSpec& spec);

// --- inequality audit ------------------------------------------------------

struct AuditItem {
    std::string check;
    std::size_t field = 0;
    std::string detail;
    double lhs = 0.0;
    double rhs = 0.0;
    /// rhs - lhs + tolerance for upper bounds, lhs - rhs + tolerance for lower bounds.
    double margin = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct AuditReport {
    std::vector<AuditItem> items;
    bool all_pass = true;
    std::string csv;
};

struct AuditParams {
    std::size_t n_fields = 10;
    std::uint64_t seed = 7;
    /// Slices per field for the one-dimensional checks.
    int slices = 5;
    std::vector<double> upper_bound_eps{0.1, 0.01};
    double lower_bound_eps = 1e-4;
    double translation_delta = 0.02;
    /// m-step check: eps, m values, direction radius rho, eta.
    double mstep_eps = 0.02;
    std::vector<int> mstep_m{2, 3, 5};
    double mstep_rho = 2.0;
    double mstep_eta = 0.125;
    double mstep_tolerance = 0.01;
    std::string output;
};

/// Random two-dimensional fields on the unit square: affine part plus one or two plane jumps.
std::vector<AnalyticField> random_piecewise_fields(std::size_t count, std::uint64_t seed);

/// Evaluates the four audited inequalities on every field (2D fields on the unit square).
AuditReport audit_inequalities(const std::vector<AnalyticField>& fields, const AuditParams& params);

/// printf-style "%.17g".
std::string format_double(double v);

}  // namespace nlg
