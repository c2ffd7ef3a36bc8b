#include <doctest.h>

#include <numbers>

#include "nlg/errors.hpp"
#include "nlg/quad.hpp"
#include "support.hpp"

using namespace nlg;
using namespace nlg::testing;

namespace {

// Composite Simpson on [a, b], used as an independent oracle.
template <class F>
double simpson(F&& f, double a, double b, int n = 20000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

}  // namespace

TEST_CASE("rule normalization") {
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    for (int n = 1; n <= 3; ++n) {
        const DirectionRule r = build_direction_rule(n, QuadParams::defaults(n));
        CHECK(r.dim() == n);
        CHECK(r.weight_sum() == doctest::Approx(std::pow(sqrt_pi, n)).epsilon(1e-10));
        for (std::size_t i = 0; i < r.size(); ++i) {
            CHECK(r.weight(i) > 0.0);
            CHECK(norm(r.node(i)) <= r.truncation_radius());
        }
    }
    const DirectionRule r1 = build_direction_rule(1, 24, 2, 6.0);
    CHECK(r1.weight_sum() == doctest::Approx(sqrt_pi).epsilon(1e-6));
}

TEST_CASE("rule preconditions") {
    CHECK_THROWS_AS(build_direction_rule(4, 16, 16, 6.0), ParameterError);
    CHECK_THROWS_AS(build_direction_rule(2, 1, 16, 6.0), ParameterError);
    CHECK_THROWS_AS(build_direction_rule(2, 16, 16, 2.0), ParameterError);
    CHECK_THROWS_AS(build_direction_rule(1, 2, 2, 6.0), RuleQualityError);
}

TEST_CASE("gaussian moments") {
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    CHECK(gaussian_radial_moment(1, 0.0) == doctest::Approx(sqrt_pi));
    CHECK(gaussian_moment(1, {2, 0, 0}) == doctest::Approx(sqrt_pi / 2.0));
    CHECK(gaussian_moment(1, {3, 0, 0}) == 0.0);
    CHECK(gaussian_moment(2, {2, 2, 0}) == doctest::Approx(std::numbers::pi / 4.0));
    const double brute = simpson([](double x) { return x * x * std::exp(-x * x); }, -12.0, 12.0);
    CHECK(gaussian_moment(1, {2, 0, 0}) == doctest::Approx(brute).epsilon(1e-10));
    CHECK(gaussian_radial_moment(2, 4.0) == doctest::Approx(2.0 * std::numbers::pi));
    const double r3 = simpson([](double r) { return 4.0 * std::numbers::pi * std::pow(r, 3.5) * std::exp(-r * r); },
                              0.0, 12.0, 200000);
    CHECK(gaussian_radial_moment(3, 1.5) == doctest::Approx(r3).epsilon(1e-7));
    CHECK_THROWS_AS(gaussian_radial_moment(2, -1.0), ParameterError);
}

TEST_CASE("integrate examples") {
    const DirectionRule r1 = build_direction_rule(1, QuadParams::defaults(1));
    CHECK(integrate(r1, [](const Vec3& x) { return std::pow(x[0], 4); }) ==
          doctest::Approx(0.75 * std::sqrt(std::numbers::pi)).epsilon(1e-10));
    const double truncated = integrate(r1, [](const Vec3&) { return 1.0; }, Region{BoxDomain(1, Vec3{-1.0}, Vec3{1.0})});
    const double oracle = simpson([](double x) { return std::exp(-x * x); }, -1.0, 1.0);
    CHECK(oracle == doctest::Approx(std::erf(1.0) * std::sqrt(std::numbers::pi)).epsilon(1e-12));
    // Truncation at a finite box is resolved only to the node spacing.
    CHECK(truncated == doctest::Approx(oracle).epsilon(0.03));
    CHECK_THROWS_AS(integrate(r1, [](const Vec3& x) { return x[0] > 0.0 ? NAN : 0.0; }), EvaluationError);
    std::vector<double> ones(r1.size(), 1.0);
    CHECK(integrate_values(r1, ones) == doctest::Approx(r1.weight_sum()));
    CHECK_THROWS_AS(integrate_values(r1, std::vector<double>(3, 1.0)), ParameterError);
}

TEST_CASE("polynomial exactness against the moment oracle") {
    for (int n = 1; n <= 3; ++n) {
        const DirectionRule r = build_direction_rule(n, QuadParams::defaults(n));
        const int max_deg = n == 3 ? 8 : 12;
        for (int a = 0; a <= max_deg; a += 2)
            for (int b = 0; b <= (n > 1 ? max_deg - a : 0); b += 2)
                for (int c = 0; c <= (n > 2 ? max_deg - a - b : 0); c += 2) {
                    const double want = gaussian_moment(n, {a, b, c});
                    const double got = integrate(r, [&](const Vec3& x) {
                        return std::pow(x[0], a) * std::pow(x[1], b) * std::pow(x[2], c);
                    });
                    CHECK(std::abs(got - want) <= 1e-8 * (1.0 + std::abs(want)));
                }
    }
}

TEST_CASE("radial integrands are invariant under node rotation") {
    const DirectionRule a = build_direction_rule(2, 32, 64, 6.0, 0.0);
    const DirectionRule b = build_direction_rule(2, 32, 64, 6.0, 0.37);
    auto g = [](const Vec3& x) { return std::cos(norm(x)) + norm2(x); };
    CHECK(rel_diff(integrate(b, g), integrate(a, g)) <= 1e-10);
}

TEST_CASE("truncation radius control") {
    std::mt19937_64 rng(5);
    for (int n = 1; n <= 3; ++n) {
        const QuadParams q = QuadParams::defaults(n);
        const DirectionRule r5 = build_direction_rule(n, q.radial_order, q.angular_order, 5.0);
        const DirectionRule r8 = build_direction_rule(n, q.radial_order, q.angular_order, 8.0);
        const Mat3 A = random_matrix(rng, n);
        auto f = [&](const Vec3& x) { return std::pow(quadratic_form(A, x), 2); };
        CHECK(rel_diff(integrate(r5, f), integrate(r8, f)) <= 1e-6);
    }
}

TEST_CASE("gauss legendre") {
    std::vector<double> x, w;
    gauss_legendre(5, 0.0, 2.0, x, w);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], 9);
    CHECK(s == doctest::Approx(102.4));
}
