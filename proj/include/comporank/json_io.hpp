#pragma once

// JSON mapping of the domain types. Output uses insertion-ordered objects
// so every serialized document has a fixed field order.

#include <string>

#include <json.hpp>

#include "comporank/catalog.hpp"
#include "comporank/quality_model.hpp"

namespace comporank {

struct RankedReport;
struct SensitivityResult;
struct ScoreBreakdown;

using ordered_json = nlohmann::ordered_json;

/// Rounds to 12 significant digits so reports compare byte-for-byte.
double round_sig12(double x);

CriteriaConfig criteria_from_json(const nlohmann::json& j);
CriteriaConfig parse_criteria(const std::string& text);
CriteriaConfig load_criteria(const std::string& path);

Catalog catalog_from_json(const nlohmann::json& j, const CatalogLoadOptions& options = {});
ordered_json catalog_to_json(const Catalog& catalog);

ordered_json assessment_to_json(const QualityAssessment& qa);
ordered_json breakdown_to_json(const ScoreBreakdown& b);
ordered_json report_to_json(const RankedReport& report);
ordered_json sweep_to_json(const SensitivityResult& sweep);

/// Canonical text form shared by the CLI and the HTTP service.
std::string dump_document(const ordered_json& doc);

}  // namespace comporank
