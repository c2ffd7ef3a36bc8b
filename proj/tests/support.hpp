#pragma once

// Shared fixtures for the unit tests.

#include <cmath>
#include <random>

#include "nlg/domain.hpp"
#include "nlg/linalg.hpp"

namespace nlg::testing {

inline BoxDomain unit_box(int n) {
    Vec3 hi;
    for (int i = 0; i < n; ++i) hi[i] = 1.0;
    return BoxDomain(n, Vec3{}, hi);
}

inline Mat3 random_matrix(std::mt19937_64& rng, int n, double scale = 1.0) {
    std::uniform_real_distribution<double> d(-scale, scale);
    Mat3 a;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = d(rng);
    return a;
}

inline Mat3 random_skew(std::mt19937_64& rng, int n, double scale = 1.0) {
    const Mat3 a = random_matrix(rng, n, scale);
    return 0.5 * (a + (-1.0) * transpose(a));
}

inline Vec3 random_vector(std::mt19937_64& rng, int n, double scale = 1.0) {
    std::uniform_real_distribution<double> d(-scale, scale);
    Vec3 v;
    for (int i = 0; i < n; ++i) v[i] = d(rng);
    return v;
}

inline Mat3 scalar_matrix(double a) {
    Mat3 m;
    m(0, 0) = a;
    return m;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace nlg::testing
