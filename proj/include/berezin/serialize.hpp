#pragma once

#include <filesystem>
#include <json.hpp>

#include "berezin/checks.hpp"
#include "berezin/operators.hpp"

namespace berezin {

/// Operator wire format:
/// {space: {kind, dim, r_max}, entries: row-major [re, im] pairs, tags: [string]}
nlohmann::json operator_to_json(const OperatorMatrix& a);
OperatorMatrix operator_from_json(const nlohmann::json& j);

void save_operator(const OperatorMatrix& a, const std::filesystem::path& path);
OperatorMatrix load_operator(const std::filesystem::path& path);

/// Report wire format:
/// {check_id, seed, hypotheses: [{name, value, satisfied, certification}],
///  lhs, rhs, slack, tol, pass, vacuous, detail, warnings,
///  instance: {A, B}}
nlohmann::json report_to_json(const InequalityReport& rep);

}  // namespace berezin
