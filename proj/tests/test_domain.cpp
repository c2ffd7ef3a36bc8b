#include <doctest.h>

#include <algorithm>

#include "nlg/domain.hpp"
#include "nlg/errors.hpp"
#include "support.hpp"

using namespace nlg;
using namespace nlg::testing;

TEST_CASE("box validation") {
    CHECK_THROWS_AS(BoxDomain(0, Vec3{}, Vec3{1.0}), ParameterError);
    CHECK_THROWS_AS(BoxDomain(1, Vec3{1.0}, Vec3{0.5}), ParameterError);
    CHECK_THROWS_AS(BoxDomain(2, Vec3{}, Vec3{1.0, 1.0}, {PlaneSegment{0, 2.0, {}, {}}}), ParameterError);
    const BoxDomain b(2, Vec3{}, Vec3{2.0, 0.5});
    CHECK(b.volume() == doctest::Approx(1.0));
    CHECK(b.contains(Vec3{1.0, 0.25}));
    CHECK_FALSE(b.contains(Vec3{2.0, 0.25}));
}

TEST_CASE("precrack removes the slit from membership only") {
    const PlaneSegment slit{0, 0.5, Vec3{0.5, 0.25}, Vec3{0.5, 0.75}};
    const BoxDomain b(2, Vec3{}, Vec3{1.0, 1.0}, {slit});
    CHECK_FALSE(b.contains(Vec3{0.5, 0.5}));
    CHECK(b.contains(Vec3{0.5, 0.9}));
    CHECK(b.contains(Vec3{0.49, 0.5}));
    CHECK(b.box_contains(Vec3{0.5, 0.5}));
    const BoxDomain s = minkowski_support(b, 0.1);
    CHECK(s.upper()[0] == doctest::Approx(10.0));
    CHECK(s.lower()[1] == doctest::Approx(-10.0));
}

TEST_CASE("difference sets") {
    const Region ball = Ball{Vec3{0.3, 0.3}, 0.2};
    const auto d = std::get<Ball>(difference_set(ball, 0.1));
    CHECK(d.radius == doctest::Approx(4.0));
    CHECK(norm(d.center) == 0.0);
    CHECK_THROWS_AS(difference_set(ball, 0.0), ParameterError);
    CHECK_THROWS_AS(difference_set(Region{unit_box(1)}, -1.0), ParameterError);
}

TEST_CASE("grid layout") {
    const Grid g(BoxDomain(2, Vec3{}, Vec3{1.0, 0.5}), 0.125);
    CHECK(g.counts()[0] == 8);
    CHECK(g.counts()[1] == 4);
    CHECK(g.size() == 32);
    CHECK(g.cell_volume() == doctest::Approx(0.015625));
    const std::size_t idx = g.index(3, 2);
    const auto mi = g.multi_index(idx);
    CHECK(mi[0] == 3);
    CHECK(mi[1] == 2);
    CHECK(g.center(idx)[0] == doctest::Approx(0.4375));
    CHECK(g.center(idx)[1] == doctest::Approx(0.3125));
    CHECK_THROWS_AS(Grid(unit_box(1), 0.3), ParameterError);
    CHECK_THROWS_AS(Grid(unit_box(1), 0.0), ParameterError);
}

TEST_CASE("analytic fields") {
    Mat3 A;
    A(0, 0) = 1.0;
    A(0, 1) = 2.0;
    A(1, 0) = -1.0;
    const auto u = AnalyticField::sum({AnalyticField::affine(A, Vec3{0.5}),
                                       AnalyticField::plane_jump(Vec3{1.0, 0.0}, 0.5, Vec3{}, Vec3{3.0, 0.0})});
    CHECK(u.eval(Vec3{0.25, 0.5})[0] == doctest::Approx(1.75));
    CHECK(u.eval(Vec3{0.75, 0.5})[0] == doctest::Approx(5.25));
    CHECK_THROWS_AS(u.eval(Vec3{0.5, 0.1}), DomainError);
    const Mat3 e = u.symmetric_gradient();
    CHECK(e(0, 1) == doctest::Approx(0.5));
    CHECK(e(1, 0) == doctest::Approx(0.5));
    CHECK(u.jump_planes().size() == 1);
    CHECK_THROWS_AS(AnalyticField::plane_jump(Vec3{2.0}, 0.0, Vec3{}, Vec3{1.0}), ParameterError);
}

TEST_CASE("sampling keeps centres off jump planes") {
    const auto u = AnalyticField::plane_jump(Vec3{1.0}, 0.5, Vec3{}, Vec3{1.0});
    const Grid g(unit_box(1), 1.0 / 3.0);
    CHECK(grid_hits_jumps(g, u));
    CHECK_FALSE(grid_hits_jumps(Grid(unit_box(1), 0.25), u));
    const SampledField s = sample(u, g);
    CHECK_FALSE(grid_hits_jumps(s.grid, u));
    CHECK(s.size() == 3);
    CHECK(s.values[0][0] == 0.0);
    CHECK(s.values[2][0] == 1.0);
    CHECK(std::none_of(s.dirichlet.begin(), s.dirichlet.end(), [](char c) { return c != 0; }));
}

TEST_CASE("multilinear interpolation reproduces affine fields") {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 3; ++n) {
        const Mat3 A = random_matrix(rng, n);
        const Vec3 b = random_vector(rng, n);
        const SampledField s = sample(AnalyticField::affine(A, b), Grid(unit_box(n), 0.125));
        for (int k = 0; k < 20; ++k) {
            Vec3 x;
            for (int i = 0; i < n; ++i) x[i] = 0.0625 + 0.875 * std::uniform_real_distribution<double>(0, 1)(rng);
            const Vec3 want = A * x + b;
            const Vec3 got = s.interpolate(x);
            for (int i = 0; i < n; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("interpolation extends linearly up to the box boundary") {
    std::mt19937_64 rng(12);
    const Mat3 A = random_matrix(rng, 2);
    const SampledField s = sample(AnalyticField::affine(A), Grid(unit_box(2), 0.1));
    for (const Vec3& x : {Vec3{0.01, 0.5}, Vec3{0.99, 0.99}, Vec3{0.0, 0.0}, Vec3{1.0, 0.02}}) {
        const Vec3 got = s.interpolate(x);
        const Vec3 want = A * x;
        for (int i = 0; i < 2; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
    }
}
