#pragma once

// Limit densities of the nonlocal energies:
//   phi_p(A) = ( int |A xi . xi|^{2p} |xi|^{kp} exp(-|xi|^2) dxi )^{1/p}
//   beta_p   = pi/2 ( int |nu . xi|^p |xi|^{kp} exp(-|xi|^2) dxi )^{1/p}
// with k = 1 in the verbatim convention and k = 0 in the calibrated one,
// plus the closed-form p = 1 bulk density and the Griffith energy of analytic fields.

#include <string>

#include "nlg/domain.hpp"
#include "nlg/quad.hpp"

namespace nlg {

enum class Convention {
    Verbatim,   ///< densities carry the extra |xi|^p factor
    Calibrated  ///< no |xi|^p factor; matches the small-eps extrapolation of the energies
};

std::string to_string(Convention c);
/// "verbatim" or "calibrated".
Convention parse_convention(const std::string& text);

double phi_p(const Mat3& A, double p, const DirectionRule& rule, Convention convention);
/// Surface constant for the unit normal nu (default e_1).
double beta_p(double p, const DirectionRule& rule, Convention convention, const Vec3& nu = Vec3{1.0});

/// (pi^{n/2}/2)(|sym A|^2 + tr(A)^2/2).
double p1_bulk_density(const Mat3& A, int n);

struct GriffithValue {
    double bulk = 0.0;
    double surface = 0.0;
    double total = 0.0;
    Convention convention = Convention::Calibrated;
};

/// H^{n-1} of the hyperplane {x . nu = c} inside the box (a point count for n = 1).
double plane_area_in_box(const PlaneJump& plane, const BoxDomain& box);

/// bulk = phi_p(e(u)) |Omega|, surface = beta_p * area of the nonzero-amplitude jump planes inside Omega.
GriffithValue griffith_energy(const AnalyticField& u, const BoxDomain& omega, double p, const DirectionRule& rule,
                              Convention convention);

/// Load at which the elastic branch phi_1(1) t^2 of the unit bar meets the cracked branch beta_1 (n = 1).
double bar_threshold(const DirectionRule& rule_1d, Convention convention);

}  // namespace nlg
