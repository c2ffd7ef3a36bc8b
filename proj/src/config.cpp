#include "nlg/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "nlg/errors.hpp"

namespace nlg {

using nlohmann::json;

namespace {

Vec3 vec(const json& j, int dim, const char* key) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw ParameterError(std::string("'") + key + "' must be an array of " + std::to_string(dim) + " numbers");
    Vec3 v;
    for (int i = 0; i < dim; ++i) v[i] = j.at(static_cast<std::size_t>(i)).get<double>();
    return v;
}

const json& need(const json& j, const char* key) {
    if (!j.contains(key)) throw ParameterError(std::string("missing key '") + key + "'");
    return j.at(key);
}

BoxDomain parse_domain(const json& j) {
    const json& lo = need(j, "lower");
    const int dim = static_cast<int>(lo.size());
    if (dim < 1 || dim > 3) throw ParameterError("domain dimension must be 1, 2 or 3");
    std::vector<PlaneSegment> cracks;
    if (j.contains("precrack"))
        for (const auto& s : j.at("precrack")) {
            PlaneSegment seg;
            seg.axis = need(s, "axis").get<int>();
            seg.offset = need(s, "offset").get<double>();
            seg.lower = vec(need(s, "lower"), dim, "precrack.lower");
            seg.upper = vec(need(s, "upper"), dim, "precrack.upper");
            cracks.push_back(seg);
        }
    return BoxDomain(dim, vec(lo, dim, "lower"), vec(need(j, "upper"), dim, "upper"), std::move(cracks));
}

AnalyticField parse_field(const json& j, int dim) {
    const std::string kind = need(j, "kind").get<std::string>();
    if (kind == "affine") {
        Mat3 A;
        const json& rows = need(j, "A");
        if (!rows.is_array() || static_cast<int>(rows.size()) != dim) throw ParameterError("'A' must be n x n");
        for (int r = 0; r < dim; ++r) {
            const Vec3 row = vec(rows.at(static_cast<std::size_t>(r)), dim, "A row");
            for (int c = 0; c < dim; ++c) A(r, c) = row[c];
        }
        const Vec3 b = j.contains("b") ? vec(j.at("b"), dim, "b") : Vec3{};
        return AnalyticField::affine(A, b);
    }
    if (kind == "plane_jump") {
        return AnalyticField::plane_jump(vec(need(j, "normal"), dim, "normal"), need(j, "offset").get<double>(),
                                         vec(need(j, "value_minus"), dim, "value_minus"),
                                         vec(need(j, "value_plus"), dim, "value_plus"));
    }
    if (kind == "sum") {
        std::vector<AnalyticField> terms;
        for (const auto& t : need(j, "terms")) terms.push_back(parse_field(t, dim));
        return AnalyticField::sum(std::move(terms));
    }
    throw ParameterError("unknown field kind '" + kind + "'");
}

QuadParams parse_quad(const json& doc, int dim) {
    QuadParams q = QuadParams::defaults(dim);
    if (!doc.contains("quad")) return q;
    const json& j = doc.at("quad");
    q.radial_order = j.value("radial_order", q.radial_order);
    q.angular_order = j.value("angular_order", q.angular_order);
    q.r_max = j.value("r_max", q.r_max);
    return q;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParameterError(std::string("invalid JSON: ") + e.what());
    }
}

template <class F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ParameterError(std::string("malformed configuration: ") + e.what());
    }
}

ProblemConfig problem_from(const json& doc) {
    ProblemConfig cfg;
    cfg.domain = parse_domain(need(doc, "domain"));
    cfg.field = parse_field(need(doc, "field"), cfg.domain.dim());
    cfg.quad = parse_quad(doc, cfg.domain.dim());
    return cfg;
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParameterError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ProblemConfig parse_problem_config(const std::string& json_text) {
    return guarded([&] { return problem_from(parse_json(json_text)); });
}

ProblemConfig load_problem_config(const std::string& path) { return parse_problem_config(read_text_file(path)); }

SweepSpec parse_sweep_spec(const std::string& json_text) {
    return guarded([&] {
        const json doc = parse_json(json_text);
        const ProblemConfig cfg = problem_from(doc);
        SweepSpec s;
        s.field = cfg.field;
        s.domain = cfg.domain;
        s.quad = cfg.quad;
        s.eps_list = need(doc, "eps").get<std::vector<double>>();
        s.h_factor = doc.value("h_factor", 8);
        s.p = doc.value("p", 1.0);
        if (doc.contains("strategy")) s.strategy = BallStrategy::parse(doc.at("strategy").get<std::string>());
        const std::string variant = doc.value("variant", std::string("domain"));
        if (variant == "per_ball")
            s.variant = SupportVariant::PerBall;
        else if (variant != "domain")
            throw ParameterError("variant must be 'domain' or 'per_ball'");
        s.convention = parse_convention(doc.value("convention", std::string("calibrated")));
        if (doc.contains("target")) s.target = doc.at("target").get<double>();
        s.output = doc.value("output", std::string());
        s.validate();
        return s;
    });
}

SweepSpec load_sweep_spec(const std::string& path) { return parse_sweep_spec(read_text_file(path)); }

AuditSpec parse_audit_spec(const std::string& json_text) {
    return guarded([&] {
        const json doc = parse_json(json_text);
        AuditSpec a;
        a.params.n_fields = doc.value("fields", a.params.n_fields);
        a.params.seed = doc.value("seed", a.params.seed);
        a.params.slices = doc.value("slices", a.params.slices);
        a.params.output = doc.value("output", std::string());
        if (doc.contains("field_list")) {
            for (const auto& f : doc.at("field_list")) a.fields.push_back(parse_field(f, 2));
        } else {
            a.fields = random_piecewise_fields(a.params.n_fields, a.params.seed);
        }
        return a;
    });
}

AuditSpec load_audit_spec(const std::string& path) { return parse_audit_spec(read_text_file(path)); }

}  // namespace nlg
