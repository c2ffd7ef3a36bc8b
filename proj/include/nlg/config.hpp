#pragma once

// JSON configuration documents:
//   {"domain": {"lower": [...], "upper": [...],
//               "precrack": [{"axis": 0, "offset": 0.5, "lower": [...], "upper": [...]}]},
//    "field":  {"kind": "affine", "A": [[...]], "b": [...]}
//            | {"kind": "plane_jump", "normal": [...], "offset": c, "value_minus": [...], "value_plus": [...]}
//            | {"kind": "sum", "terms": [field, ...]},
//    "quad":   {"radial_order": 32, "angular_order": 64, "r_max": 6}}
// Sweep documents add "eps", "h_factor", "p", "strategy", "variant", "convention",
// "target" and "output"; audit documents hold "fields", "seed", "slices", "output"
// and optionally an explicit "field" list under "field_list".

#include <string>

#include "nlg/domain.hpp"
#include "nlg/harness.hpp"
#include "nlg/quad.hpp"

namespace nlg {

struct ProblemConfig {
    BoxDomain domain;
    AnalyticField field = AnalyticField::constant({});
    QuadParams quad;
};

/// Parses a JSON document; throws ParameterError with the offending key on malformed input.
ProblemConfig parse_problem_config(const std::string& json_text);
ProblemConfig load_problem_config(const std::string& path);

SweepSpec parse_sweep_spec(const std::string& json_text);
SweepSpec load_sweep_spec(const std::string& path);

struct AuditSpec {
    std::vector<AnalyticField> fields;
    AuditParams params;
};
AuditSpec parse_audit_spec(const std::string& json_text);
AuditSpec load_audit_spec(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace nlg
