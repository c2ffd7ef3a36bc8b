#include <doctest.h>

#include "nlg/config.hpp"
#include "nlg/errors.hpp"

using namespace nlg;

TEST_CASE("problem configuration") {
    const ProblemConfig c = parse_problem_config(R"({
        "domain": {"lower": [0, 0], "upper": [2, 1],
                   "precrack": [{"axis": 0, "offset": 1.0, "lower": [1.0, 0.2], "upper": [1.0, 0.6]}]},
        "field": {"kind": "sum", "terms": [
            {"kind": "affine", "A": [[1, 2], [0, 1]], "b": [0.5, 0]},
            {"kind": "plane_jump", "normal": [1, 0], "offset": 0.5, "value_minus": [0, 0], "value_plus": [3, 0]}]},
        "quad": {"radial_order": 16, "angular_order": 32}
    })");
    CHECK(c.domain.dim() == 2);
    CHECK(c.domain.upper()[0] == 2.0);
    CHECK(c.domain.precrack().size() == 1);
    CHECK_FALSE(c.domain.contains(Vec3{1.0, 0.4}));
    CHECK(c.field.eval(Vec3{1.0, 0.5})[0] == doctest::Approx(5.5));
    CHECK(c.quad.radial_order == 16);
    CHECK(c.quad.angular_order == 32);
    CHECK(c.quad.r_max == 6.0);

    const ProblemConfig d = parse_problem_config(
        R"({"domain": {"lower": [0], "upper": [1]}, "field": {"kind": "affine", "A": [[2]]}})");
    CHECK(d.quad.radial_order == QuadParams::defaults(1).radial_order);
    CHECK(d.field.eval(Vec3{0.25})[0] == 0.5);
}

TEST_CASE("configuration errors") {
    CHECK_THROWS_AS(parse_problem_config("{not json"), ParameterError);
    CHECK_THROWS_AS(parse_problem_config(R"({"field": {"kind": "affine", "A": [[1]]}})"), ParameterError);
    CHECK_THROWS_AS(parse_problem_config(R"({"domain": {"lower": [0], "upper": [1]}, "field": {"kind": "twist"}})"),
                    ParameterError);
    CHECK_THROWS_AS(
        parse_problem_config(R"({"domain": {"lower": [0, 0], "upper": [1, 1]}, "field": {"kind": "affine", "A": [[1]]}})"),
        ParameterError);
    CHECK_THROWS_AS(
        parse_problem_config(R"({"domain": {"lower": [0], "upper": [1]}, "field": {"kind": "affine", "A": "x"}})"),
        ParameterError);
    CHECK_THROWS_AS(
        parse_problem_config(R"({"domain": {"lower": ["a"], "upper": [1]}, "field": {"kind": "affine", "A": [[1]]}})"),
        ParameterError);
    CHECK_THROWS_AS(load_problem_config("/nonexistent/field.json"), ParameterError);
}

TEST_CASE("sweep specification") {
    const std::string base = R"("domain": {"lower": [0], "upper": [1]}, "field": {"kind": "affine", "A": [[1]]})";
    const SweepSpec s = parse_sweep_spec("{" + base +
                                         R"(, "eps": [0.04, 0.02], "h_factor": 6, "p": 2, "strategy": "greedy:3",
                                            "variant": "per_ball", "convention": "verbatim", "target": 1.5,
                                            "output": "x.csv"})");
    CHECK(s.eps_list.size() == 2);
    CHECK(s.h_factor == 6);
    CHECK(s.p == 2.0);
    REQUIRE(s.strategy);
    CHECK(s.strategy->kind == BallStrategy::Kind::Greedy);
    CHECK(s.variant == SupportVariant::PerBall);
    CHECK(s.convention == Convention::Verbatim);
    CHECK(*s.target == 1.5);
    CHECK(s.output == "x.csv");

    const SweepSpec d = parse_sweep_spec("{" + base + R"(, "eps": [0.04, 0.02]})");
    CHECK_FALSE(d.strategy);
    CHECK(d.convention == Convention::Calibrated);
    CHECK(d.output.empty());

    CHECK_THROWS_AS(parse_sweep_spec("{" + base + R"(, "eps": [0.02, 0.04]})"), ParameterError);
    CHECK_THROWS_AS(parse_sweep_spec("{" + base + "}"), ParameterError);
    CHECK_THROWS_AS(parse_sweep_spec("{" + base + R"(, "eps": [0.04, 0.02], "variant": "ring"})"), ParameterError);
    CHECK_THROWS_AS(parse_sweep_spec("{" + base + R"(, "eps": [0.04, 0.02], "h_factor": 2})"), ParameterError);
    CHECK_THROWS_AS(parse_sweep_spec("{" + base + R"(, "eps": [0.04, 0.02], "strategy": "hex:2"})"), ParameterError);
    CHECK_THROWS_AS(parse_sweep_spec("{" + base + R"(, "eps": "small"})"), ParameterError);
}

TEST_CASE("audit specification") {
    const AuditSpec a = parse_audit_spec(R"({"fields": 3, "seed": 11, "slices": 2, "output": "a.csv"})");
    CHECK(a.fields.size() == 3);
    CHECK(a.params.seed == 11);
    CHECK(a.params.slices == 2);
    CHECK(a.params.output == "a.csv");
    const AuditSpec b = parse_audit_spec(R"({"field_list": [{"kind": "affine", "A": [[1, 0], [0, 1]]}]})");
    CHECK(b.fields.size() == 1);
    CHECK(parse_audit_spec("{}").fields.size() == 10);
    CHECK_THROWS_AS(parse_audit_spec(R"({"fields": "many"})"), ParameterError);
}
