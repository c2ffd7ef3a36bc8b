#pragma once

// Nonlocal arctan energies of a displacement u on a cell-centred grid:
//
//   directional:  F_{eps,xi}(u,E) = 1/eps sum_{x in E, x+eps xi in E} h^n
//                                   atan( ((u(x+eps xi) - u(x)) . xi)^2 / eps )
//   averaged:     F_eps(u,E)      = int_{(E-E)/eps} F_{eps,xi}(u,E) exp(-|xi|^2) dxi
//   pair form:    1/eps^{n+1} sum_{x,x'} h^{2n} atan( ((u(x')-u(x)).(x'-x))^2 / eps^3 )
//                                        exp(-|x'-x|^2/eps^2)
//   ball supremum: max over disjoint ball families of
//                  sum_B ( int F_{eps,xi}(u,B)^p exp(-|xi|^2) dxi )^{1/p}
//
// The direction loop is parallelised with OpenMP; every reduction is carried
// out in ascending node order so results do not depend on the thread count.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlg/domain.hpp"
#include "nlg/quad.hpp"

namespace nlg {

/// Finite family of pairwise disjoint open balls.
struct BallFamily {
    std::vector<Ball> balls;

    /// Pairwise disjoint (open balls may touch) and each ball inside domain minus precracks.
    bool valid_in(const BoxDomain& domain) const;
};

/// Ball placement used to search the supremum over families.
struct BallStrategy {
    enum class Kind { Dyadic, Greedy };
    Kind kind = Kind::Dyadic;
    /// Dyadic: deepest level L (families for levels 0..L). Greedy: ball count.
    int param = 0;

    static BallStrategy dyadic(int levels) { return {Kind::Dyadic, levels}; }
    static BallStrategy greedy(int count) { return {Kind::Greedy, count}; }
    /// "dyadic:L" or "greedy:K".
    static BallStrategy parse(std::string_view text);
    std::string to_string() const;
};

/// Which truncation of the direction integral a ball term uses.
enum class SupportVariant {
    Domain,  ///< (Omega - Omega)/eps for every ball
    PerBall  ///< (B - B)/eps, for which the p = 1 term of a single ball equals F_eps(u, B)
};

struct EnergyReport {
    double total = 0.0;
    double eps = 0.0;
    double p = 1.0;
    /// F_{eps,xi_i}(u, E) per node (zero outside the support); averaged energy only.
    std::vector<double> per_direction;
    /// (int F_{eps,xi}(u,B)^p)^{1/p} per ball of `family`; ball supremum only.
    std::vector<double> per_ball;
    std::optional<BallFamily> family;
    std::string strategy;
    double grid_h = 0.0;
    QuadParams rule_meta;
    std::size_t n_directions = 0;
    /// Number of independent partial sums merged (in fixed order) into `total`.
    std::size_t partitions = 0;
};

/// Number of direction partitions used by the gradient accumulation.
inline constexpr std::size_t kGradientPartitions = 16;

// --- directional energy -----------------------------------------------------

double directional_energy(const SampledField& u, const Region& E, double eps, const Vec3& xi);
double directional_energy(const AnalyticField& u, const Grid& grid, const Region& E, double eps,
                          const Vec3& xi);

// --- averaged energy --------------------------------------------------------

/// F_eps(u, E) with support (E - E)/eps. Requires h <= eps/4.
EnergyReport averaged_energy(const SampledField& u, const Region& E, double eps, const DirectionRule& rule);
EnergyReport averaged_energy(const AnalyticField& u, const Grid& grid, const Region& E, double eps,
                             const DirectionRule& rule);

// --- pair (double-integral) energy -------------------------------------------

/// Double-integral form over cell pairs of `region`, cut off at |x'-x| <= r_max * eps.
/// Requires h <= eps/4.
double pair_energy(const SampledField& u, const Region& region, double eps, double r_max = 6.0);
double pair_energy(const AnalyticField& u, const Grid& grid, const Region& region, double eps,
                   double r_max = 6.0);

// --- ball supremum ----------------------------------------------------------

std::vector<BallFamily> ball_candidates(const BoxDomain& domain, const BallStrategy& strategy);

/// Best family value over the strategy's candidates: a lower bound for the supremum.
EnergyReport ball_sup_energy(const SampledField& u, const BoxDomain& domain, double eps, double p,
                             const DirectionRule& rule, const BallStrategy& strategy,
                             SupportVariant variant = SupportVariant::Domain);
EnergyReport ball_sup_energy(const AnalyticField& u, const Grid& grid, const BoxDomain& domain, double eps,
                             double p, const DirectionRule& rule, const BallStrategy& strategy,
                             SupportVariant variant = SupportVariant::Domain);
/// Value of one explicit family.
EnergyReport family_energy(const AnalyticField& u, const Grid& grid, const BoxDomain& domain, double eps,
                           double p, const DirectionRule& rule, const BallFamily& family,
                           SupportVariant variant = SupportVariant::Domain);

// --- gradient ---------------------------------------------------------------

struct EnergyAndGradient {
    double energy = 0.0;
    std::vector<Vec3> gradient;
};

/// F_eps(u, Omega) over the grid domain and its gradient w.r.t. the nodal values;
/// Dirichlet cells get zero gradient. Requires h <= eps/4.
EnergyAndGradient energy_gradient(const SampledField& u, double eps, const DirectionRule& rule);

/// Throws ParameterError unless h <= eps/4.
void require_resolution(double h, double eps);

namespace reference {

// Straightforward serial versions of the kernels above, kept for testing and
// benchmarking. They use generic pointwise evaluation/interpolation.

double directional_energy(const SampledField& u, const Region& E, double eps, const Vec3& xi);
double directional_energy(const AnalyticField& u, const Grid& grid, const Region& E, double eps,
                          const Vec3& xi);
double averaged_energy(const SampledField& u, const Region& E, double eps, const DirectionRule& rule);
double averaged_energy(const AnalyticField& u, const Grid& grid, const Region& E, double eps,
                       const DirectionRule& rule);
double pair_energy(const SampledField& u, const Region& region, double eps, double r_max = 6.0);
EnergyAndGradient energy_gradient(const SampledField& u, double eps, const DirectionRule& rule);

}  // namespace reference

}  // namespace nlg
