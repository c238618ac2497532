#include "comporank/service.hpp"

#include <httplib.h>

#include "comporank/error.hpp"
#include "comporank/json_io.hpp"
#include "comporank/pipeline.hpp"

namespace comporank {
namespace {

using nlohmann::json;

// Request body is unusable as sent: maps to 400.
struct BadRequest {
  std::string message;
};

HttpResult error_result(int status, const std::string& code, const std::string& subject,
                        const std::string& message) {
  ordered_json body{{"error", code}, {"subject", subject}, {"message", message}};
  return {status, dump_document(body)};
}

json parse_body(const std::string& body) {
  try {
    json j = json::parse(body);
    if (!j.is_object()) throw BadRequest{"request body must be a JSON object"};
    return j;
  } catch (const json::parse_error& e) {
    throw BadRequest{e.what()};
  }
}

double number_field(const json& j, const char* key, double fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  if (!it->is_number()) throw BadRequest{std::string("'") + key + "' must be a number"};
  return it->get<double>();
}

std::optional<double> optional_number(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw BadRequest{std::string("'") + key + "' must be a number"};
  return it->get<double>();
}

CriteriaConfig criteria_field(const json& j) {
  auto it = j.find("criteria");
  if (it == j.end()) throw BadRequest{"missing field 'criteria'"};
  try {
    return criteria_from_json(*it);
  } catch (const Error& e) {
    throw BadRequest{e.what()};
  }
}

NeedsSpec needs_from_request(const json& j) {
  NeedsSpec needs;
  needs.criteria = criteria_field(j);
  needs.params.alpha = number_field(j, "alpha", kDefaultAlpha);
  needs.params.satisfaction_threshold = number_field(j, "threshold", 0.0);
  needs.params.cost_cap = optional_number(j, "cost_cap");
  needs.params.time_cap = optional_number(j, "time_cap");
  needs.cr_threshold = number_field(j, "cr_threshold", kDefaultCrThreshold);
  if (auto it = j.find("require"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw BadRequest{"'require' must be an array of service tags"};
    for (const auto& s : *it) {
      if (!s.is_string()) throw BadRequest{"'require' must be an array of service tags"};
      needs.required_services.insert(s.get<std::string>());
    }
  }
  if (!(needs.cr_threshold > 0.0)) throw BadRequest{"'cr_threshold' must be > 0"};
  try {
    ScoringParams probe = needs.params;
    probe.validate();
  } catch (const Error& e) {
    throw BadRequest{e.what()};
  }
  return needs;
}

// Inconsistency is reported with the full per-node breakdown so the client
// can revise the offending judgments.
std::optional<HttpResult> inconsistency_result(const QualityAssessment& qa) {
  if (qa.consistent()) return std::nullopt;
  std::string worst;
  for (const auto& n : qa.nodes) {
    if (n.verdict && !n.verdict->accepted) {
      worst = n.node_id;
      break;
    }
  }
  ordered_json body{{"error", std::string(to_string(ErrorCode::InconsistentMatrix))},
                    {"subject", worst},
                    {"message", "consistency ratio above threshold at node '" + worst + "'"}};
  body["consistency"] = assessment_to_json(qa)["consistency"];
  return HttpResult{422, dump_document(body)};
}

template <typename Fn>
HttpResult guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const BadRequest& e) {
    return error_result(400, "BadRequest", "", e.message);
  } catch (const Error& e) {
    return error_result(422, std::string(to_string(e.code())), e.subject(), e.what());
  }
}

}  // namespace

Service::Service(std::optional<Catalog> catalog, RandomIndex ri)
    : catalog_(std::move(catalog)), ri_(std::move(ri)) {}

HttpResult Service::post_weights(const std::string& body) const {
  return guarded([&]() -> HttpResult {
    json j = parse_body(body);
    double threshold = number_field(j, "cr_threshold", kDefaultCrThreshold);
    if (!(threshold > 0.0)) throw BadRequest{"'cr_threshold' must be > 0"};
    CriteriaConfig cfg;
    try {
      cfg = criteria_from_json(j);
    } catch (const Error& e) {
      throw BadRequest{e.what()};
    }
    QualityAssessment qa = assess_quality_model(cfg, threshold, ri_);
    if (auto bad = inconsistency_result(qa)) return *bad;
    return {200, dump_document(assessment_to_json(qa))};
  });
}

HttpResult Service::post_rank(const std::string& body) const {
  return guarded([&]() -> HttpResult {
    json j = parse_body(body);
    NeedsSpec needs = needs_from_request(j);
    std::optional<Catalog> inline_catalog;
    if (auto it = j.find("catalog"); it != j.end() && !it->is_null()) {
      inline_catalog = catalog_from_json(*it);
    }
    if (!inline_catalog && !catalog_) {
      return error_result(404, "NoCatalog", "catalog", "no catalog loaded and none supplied inline");
    }
    const Catalog& catalog = inline_catalog ? *inline_catalog : *catalog_;
    QualityAssessment qa = assess_quality_model(needs.criteria, needs.cr_threshold, ri_);
    if (auto bad = inconsistency_result(qa)) return *bad;
    RankedReport report = run_pipeline(catalog, needs, qa.leaves);
    return {200, dump_document(report_to_json(report))};
  });
}

HttpResult Service::post_sensitivity(const std::string& body) const {
  return guarded([&]() -> HttpResult {
    json j = parse_body(body);
    NeedsSpec needs = needs_from_request(j);
    auto it = j.find("alphas");
    if (it == j.end() || !it->is_array() || it->empty()) {
      throw BadRequest{"'alphas' must be a non-empty array of numbers in [0, 1]"};
    }
    std::vector<double> alphas;
    for (const auto& a : *it) {
      if (!a.is_number()) throw BadRequest{"'alphas' must contain numbers"};
      double v = a.get<double>();
      if (!(v >= 0.0 && v <= 1.0)) throw BadRequest{"every alpha must lie in [0, 1]"};
      alphas.push_back(v);
    }
    std::optional<Catalog> inline_catalog;
    if (auto c = j.find("catalog"); c != j.end() && !c->is_null()) {
      inline_catalog = catalog_from_json(*c);
    }
    if (!inline_catalog && !catalog_) {
      return error_result(404, "NoCatalog", "catalog", "no catalog loaded and none supplied inline");
    }
    const Catalog& catalog = inline_catalog ? *inline_catalog : *catalog_;
    QualityAssessment qa = assess_quality_model(needs.criteria, needs.cr_threshold, ri_);
    if (auto bad = inconsistency_result(qa)) return *bad;
    SensitivityResult sweep = sensitivity_sweep(catalog, needs, alphas, ri_);
    return {200, dump_document(sweep_to_json(sweep))};
  });
}

HttpResult Service::get_catalog() const {
  if (!catalog_) return error_result(404, "NoCatalog", "catalog", "no catalog loaded");
  return {200, dump_document(catalog_to_json(*catalog_))};
}

void Service::mount(httplib::Server& server) const {
  auto reply = [](httplib::Response& res, const HttpResult& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server.Post("/api/weights", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, post_weights(req.body));
  });
  server.Post("/api/rank", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, post_rank(req.body));
  });
  server.Post("/api/sensitivity", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, post_sensitivity(req.body));
  });
  server.Get("/api/catalog", [this, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, get_catalog());
  });
}

}  // namespace comporank
