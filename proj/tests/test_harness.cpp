#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "nlg/config.hpp"
#include "nlg/errors.hpp"
#include "nlg/harness.hpp"
#include "support.hpp"

using namespace nlg;
using namespace nlg::testing;

namespace {

SweepSpec bar_sweep(const AnalyticField& u) {
    SweepSpec s;
    s.field = u;
    s.domain = unit_box(1);
    s.eps_list = {0.08, 0.04, 0.02, 0.01};
    s.quad = QuadParams::defaults(1);
    return s;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("extrapolation formulas") {
    // F = 2 + 3 eps is recovered exactly by the first-order rule.
    CHECK(richardson(0.1, 2.3, 0.05, 2.15) == doctest::Approx(2.0).epsilon(1e-14));
    // F = 1 - eps + 4 eps^2 by the second-order rule.
    auto F = [](double e) { return 1.0 - e + 4.0 * e * e; };
    CHECK(richardson_quadratic(F(0.2), F(0.1), F(0.05)) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(richardson(0.1, 1.0, 0.1, 2.0), ParameterError);
}

TEST_CASE("sweep validation") {
    SweepSpec s = bar_sweep(AnalyticField::constant({}));
    CHECK_NOTHROW(s.validate());
    s.eps_list = {0.02};
    CHECK_THROWS_AS(s.validate(), ParameterError);
    s.eps_list = {0.02, 0.04};
    CHECK_THROWS_AS(s.validate(), ParameterError);
    s.eps_list = {0.04, 0.02};
    s.h_factor = 3;
    CHECK_THROWS_AS(s.validate(), ParameterError);
    s.h_factor = 8;
    s.p = 2.0;
    CHECK_THROWS_AS(s.validate(), ParameterError);
    s.strategy = BallStrategy::dyadic(0);
    CHECK_NOTHROW(s.validate());
    s.p = 0.5;
    CHECK_THROWS_AS(run_sweep(s), ParameterError);
}

TEST_CASE("constant field sweep") {
    const ExtrapolationResult r = run_sweep(bar_sweep(AnalyticField::constant(Vec3{2.0})));
    CHECK(r.points.size() == 4);
    for (const auto& p : r.points) CHECK(p.value == 0.0);
    CHECK(r.extrapolated == 0.0);
    CHECK(r.target == 0.0);
    CHECK(r.relative_error == 0.0);
}

TEST_CASE("affine and jump sweeps approach the limit energy") {
    const ExtrapolationResult a = run_sweep(bar_sweep(AnalyticField::affine(scalar_matrix(1.0))));
    CHECK(a.target == doctest::Approx(0.75 * std::sqrt(std::numbers::pi)).epsilon(1e-10));
    CHECK(a.relative_error <= 0.02);
    CHECK(std::abs(a.raw_smallest - a.target) > std::abs(a.extrapolated - a.target));
    CHECK(a.points.back().h == doctest::Approx(0.01 / 8.0));
    const ExtrapolationResult j = run_sweep(bar_sweep(AnalyticField::plane_jump(Vec3{1.0}, 0.5, Vec3{}, Vec3{10.0})));
    CHECK(j.target == doctest::Approx(0.5 * std::numbers::pi).epsilon(1e-10));
    CHECK(j.relative_error <= 0.02);
}

TEST_CASE("sweep CSV") {
    SweepSpec s = bar_sweep(AnalyticField::affine(scalar_matrix(0.5)));
    s.eps_list = {0.08, 0.04};
    s.target = 0.3;
    s.output = "sweep_test_output.csv";
    const ExtrapolationResult r = run_sweep(s);
    CHECK(r.target == 0.3);
    const auto rows = lines(r.csv);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "kind,eps,h,value,target,relative_error");
    CHECK(rows[1].rfind("sample,0.080000000000000002,0.01,", 0) == 0);
    CHECK(rows[3].rfind("extrapolated,", 0) == 0);
    CHECK(rows[4].rfind("raw_smallest,", 0) == 0);
    CHECK(read_text_file(s.output) == r.csv);
    CHECK(run_sweep(s).csv == r.csv);
    std::remove(s.output.c_str());
    CHECK(std::abs(r.relative_error - std::abs(r.extrapolated - 0.3) / 1.3) <= 1e-15);
}

TEST_CASE("ball supremum sweep") {
    SweepSpec s = bar_sweep(AnalyticField::affine(scalar_matrix(1.0)));
    s.eps_list = {0.04, 0.02};
    s.p = 2.0;
    s.strategy = BallStrategy::dyadic(1);
    const ExtrapolationResult r = run_sweep(s);
    CHECK(r.points.back().n_balls >= 1);
    CHECK(r.extrapolated > 0.0);
    CHECK(r.target > 0.0);
}

TEST_CASE("double formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("random piecewise fields are seeded") {
    const auto a = random_piecewise_fields(4, 9);
    const auto b = random_piecewise_fields(4, 9);
    REQUIRE(a.size() == 4);
    for (std::size_t k = 0; k < a.size(); ++k) {
        const FlatField fa = a[k].flatten(), fb = b[k].flatten();
        CHECK(fa.A == fb.A);
        CHECK(fa.jumps.size() == fb.jumps.size());
        CHECK((fa.jumps.size() == 1 || fa.jumps.size() == 2));
    }
    CHECK_FALSE(random_piecewise_fields(1, 10)[0].flatten().A == a[0].flatten().A);
}

TEST_CASE("inequality audit") {
    AuditParams p;
    p.slices = 3;
    p.mstep_m = {2, 3};
    const auto fields = random_piecewise_fields(2, 5);
    const AuditReport r = audit_inequalities(fields, p);
    CHECK(r.all_pass);
    std::set<std::string> checks;
    for (const auto& it : r.items) {
        checks.insert(it.check);
        CHECK(it.pass == (it.margin >= 0.0));
        CHECK(it.field < fields.size());
    }
    CHECK(checks == std::set<std::string>{"lower_bound", "m_step", "translation", "upper_bound"});
    CHECK(lines(r.csv)[0] == "check,field,detail,lhs,rhs,margin,tolerance,pass");
    CHECK(lines(r.csv).size() == r.items.size() + 1);
}

TEST_CASE("audit on affine fields") {
    AuditParams p;
    p.slices = 2;
    p.mstep_m = {3};
    Mat3 A;
    A(0, 0) = 0.7;
    A(1, 1) = -0.4;
    A(0, 1) = 0.2;
    const AuditReport r = audit_inequalities({AnalyticField::affine(A)}, p);
    CHECK(r.all_pass);
    for (const auto& it : r.items)
        if (it.check == "m_step") CHECK(it.margin > 0.0);
}
