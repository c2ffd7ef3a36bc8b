#pragma once

// Dirichlet-constrained descent on the averaged energy F_eps(u, Omega'):
// cells of Omega' outside Omega are frozen to the datum f, the remaining
// cells are updated by gradient descent with Armijo backtracking.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nlg/domain.hpp"
#include "nlg/energy.hpp"
#include "nlg/quad.hpp"

namespace nlg {

struct DirichletProblem {
    BoxDomain outer;  ///< Omega'
    BoxDomain inner;  ///< Omega
    AnalyticField datum = AnalyticField::constant({});
    double eps = 0.02;
    double p = 1.0;
    Grid grid;        ///< on Omega'

    /// Throws ParameterError unless Omega is strictly inside Omega' and the grid lives on Omega'.
    void validate() const;
};

/// Unit bar Omega = (0,1) in Omega' = (-d, 1+d), d the multiple of h closest to 1/8.
/// The datum holds the left grip at 0 and the right grip at `load`.
DirichletProblem bar_problem(double load, double eps, double h);

enum class StopReason { GradientTolerance, MaxIterations, LineSearchFailed, GridCapability, EnergyStagnation };
std::string to_string(StopReason r);

enum class Nucleation {
    None,       ///< start from the elastic interpolant only
    Random,     ///< elastic interpolant plus a seeded uniform perturbation of the free cells
    Candidates  ///< descend from the elastic interpolant and from the best single-crack candidate, keep the lower
};
Nucleation parse_nucleation(const std::string& text);

struct DescentOptions {
    int max_iter = 3000;
    /// Stop when the L^2 norm of the gradient density falls below gtol.
    double gtol = 1e-7;
    /// Stop after 20 consecutive steps with relative energy decrease below ftol.
    double ftol = 1e-13;
    /// Extra continuation levels: solve at eps 2^k, ..., 2 eps before eps.
    int continuation = 0;
    Nucleation nucleation = Nucleation::Candidates;
    double nucleation_amplitude = 0.1;
    std::uint64_t seed = 0;
    /// Spacing (in cells) between candidate crack planes.
    int candidate_stride = 1;
    std::optional<QuadParams> quad;
    /// Called with (iteration, iterate) after every accepted step and at the start.
    std::function<void(int, const SampledField&)> observer;
};

struct DescentTrace {
    std::vector<double> energies;
    std::vector<double> grad_norms;
    std::vector<double> step_sizes;
    std::vector<double> eps_levels;
    SampledField final;
    bool converged = false;
    StopReason stop_reason = StopReason::MaxIterations;
    /// "elastic", "cracked" or "random": the start that produced `final`.
    std::string start;
    double final_energy = 0.0;
};

/// Nodal field equal to the datum on frozen cells and, inside Omega, to the linear blend along
/// axis 0 between the datum values just outside the two faces. Reproduces affine data exactly.
SampledField elastic_interpolant(const DirichletProblem& prob);
/// Inside Omega: datum value of the left face for x_0 < plane, of the right face otherwise.
SampledField cracked_candidate(const DirichletProblem& prob, double plane);
/// Candidate crack planes: interior cell faces along axis 0, every `stride` cells.
std::vector<double> candidate_planes(const DirichletProblem& prob, int stride = 1);

DescentTrace minimize_dirichlet(const DirichletProblem& prob, const DescentOptions& opts = {});

/// Energy of u minus the lowest energy among the elastic interpolant and the single-crack
/// candidates, clamped at 0.
double quasi_min_gap(const SampledField& u, const DirichletProblem& prob, const DirectionRule& rule,
                     int stride = 1);

/// Number of maximal runs of cells where u_0(x + eps) - u_0(x) exceeds `threshold` (1D fields).
int count_cracks(const SampledField& u, double eps, double threshold);
/// Largest increase u_0(x + eps) - u_0(x) over the grid (1D fields).
double max_band_difference(const SampledField& u, double eps);

}  // namespace nlg
