#include "comporank/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "comporank/error.hpp"
#include "comporank/pipeline.hpp"

namespace comporank {
namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, where, where + ": " + what);
}

CriterionNode node_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) parse_fail(where, "expected a criterion object");
  CriterionNode n;
  auto id = j.find("id");
  if (id == j.end() || !id->is_string() || id->get<std::string>().empty()) {
    parse_fail(where + "/id", "criterion needs a non-empty string id");
  }
  n.id = id->get<std::string>();
  if (auto name = j.find("name"); name != j.end()) {
    if (!name->is_string()) parse_fail(where + "/name", "expected a string");
    n.name = name->get<std::string>();
  } else {
    n.name = n.id;
  }
  if (auto w = j.find("weight"); w != j.end()) {
    if (!w->is_number()) parse_fail(where + "/weight", "expected a number");
    n.local_weight = w->get<double>();
  }
  if (auto ch = j.find("children"); ch != j.end()) {
    if (!ch->is_array()) parse_fail(where + "/children", "expected an array");
    for (std::size_t k = 0; k < ch->size(); ++k) {
      n.children.push_back(node_from_json((*ch)[k], where + "/children/" + std::to_string(k)));
    }
  }
  return n;
}

std::vector<std::vector<double>> entries_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "expected an array of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& row = j[i];
    if (!row.is_array()) parse_fail(where + "/" + std::to_string(i), "expected an array of numbers");
    std::vector<double> r;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (!row[k].is_number()) {
        parse_fail(where + "/" + std::to_string(i) + "/" + std::to_string(k), "expected a number");
      }
      r.push_back(row[k].get<double>());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

ordered_json num(double x) { return round_sig12(x); }

ordered_json opt_num(const std::optional<double>& x) {
  return x ? ordered_json(round_sig12(*x)) : ordered_json(nullptr);
}

ordered_json opt_str(const std::optional<std::string>& s) {
  return s ? ordered_json(*s) : ordered_json(nullptr);
}

}  // namespace

double round_sig12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // drop negative zero
}

CriteriaConfig criteria_from_json(const json& j) {
  if (!j.is_object()) parse_fail("/", "criteria config must be a JSON object");
  auto tree = j.find("tree");
  if (tree == j.end()) parse_fail("/", "missing field 'tree'");
  CriteriaConfig cfg;
  cfg.tree = node_from_json(*tree, "/tree");
  if (auto ms = j.find("matrices"); ms != j.end()) {
    if (!ms->is_object()) parse_fail("/matrices", "expected an object keyed by node id");
    for (auto it = ms->begin(); it != ms->end(); ++it) {
      const std::string where = "/matrices/" + it.key();
      PairwiseMatrix m;
      m.node_id = it.key();
      if (it.value().is_object()) {
        auto items = it.value().find("items");
        if (items != it.value().end()) {
          if (!items->is_array()) parse_fail(where + "/items", "expected an array of child ids");
          for (const auto& s : *items) {
            if (!s.is_string()) parse_fail(where + "/items", "expected an array of child ids");
            m.item_ids.push_back(s.get<std::string>());
          }
        }
        auto entries = it.value().find("entries");
        if (entries == it.value().end()) parse_fail(where, "missing field 'entries'");
        m.entries = entries_from_json(*entries, where + "/entries");
      } else {
        m.entries = entries_from_json(it.value(), where);
      }
      cfg.matrices.emplace(m.node_id, std::move(m));
    }
  }
  return cfg;
}

CriteriaConfig parse_criteria(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "byte " + std::to_string(e.byte), e.what());
  }
  return criteria_from_json(j);
}

CriteriaConfig load_criteria(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path, "cannot open criteria file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_criteria(ss.str());
}

ordered_json catalog_to_json(const Catalog& catalog) {
  ordered_json comps = ordered_json::array();
  for (const auto& c : catalog.components) {
    ordered_json ratings = ordered_json::object();
    for (const auto& [leaf, r] : c.ratings) ratings[leaf] = r;
    comps.push_back(ordered_json{{"id", c.id},
                                 {"name", c.name},
                                 {"services", c.services},
                                 {"ratings", std::move(ratings)},
                                 {"cost", c.raw_cost},
                                 {"time", c.raw_time}});
  }
  return ordered_json{{"library", catalog.library_name},
                      {"scale_max", catalog.scale_max},
                      {"components", std::move(comps)}};
}

ordered_json assessment_to_json(const QualityAssessment& qa) {
  ordered_json leaves = ordered_json::object();
  for (const auto& l : qa.leaves) leaves[l.id] = num(l.weight);
  ordered_json consistency = ordered_json::object();
  for (const auto& node : qa.nodes) {
    if (!node.derived) continue;
    ordered_json local = ordered_json::object();
    for (std::size_t k = 0; k < node.child_ids.size(); ++k) {
      local[node.child_ids[k]] = num(node.local_weights[k]);
    }
    consistency[node.node_id] = ordered_json{{"lambda_max", num(node.derived->lambda_max)},
                                             {"ci", num(node.derived->consistency_index)},
                                             {"cr", num(node.derived->consistency_ratio)},
                                             {"accepted", node.verdict->accepted},
                                             {"weights", std::move(local)}};
  }
  return ordered_json{{"leaves", std::move(leaves)},
                      {"consistency", std::move(consistency)},
                      {"consistent", qa.consistent()}};
}

ordered_json breakdown_to_json(const ScoreBreakdown& b) {
  ordered_json q = ordered_json::object();
  for (const auto& [leaf, v] : b.q_normalized) q[leaf] = num(v);
  return ordered_json{{"id", b.component_id},
                      {"score", num(b.score)},
                      {"quality_term", num(b.quality_term)},
                      {"penalty_term", num(b.penalty_term)},
                      {"c", num(b.c_i)},
                      {"t", num(b.t_i)},
                      {"selected", b.selected},
                      {"q", std::move(q)}};
}

ordered_json report_to_json(const RankedReport& r) {
  ordered_json rankings = ordered_json::array();
  for (const auto& b : r.rankings) rankings.push_back(breakdown_to_json(b));
  ordered_json rejected = ordered_json::array();
  for (const auto& x : r.rejected) {
    rejected.push_back(ordered_json{{"id", x.component_id},
                                    {"stage", std::string(to_string(x.stage))},
                                    {"reason", x.reason}});
  }
  ordered_json weights = ordered_json::object();
  for (const auto& w : r.leaf_weights) weights[w.id] = num(w.weight);
  ordered_json params{{"library", r.library},
                      {"require", r.required_services},
                      {"alpha", num(r.params.alpha)},
                      {"threshold", num(r.params.satisfaction_threshold)},
                      {"scale_max", num(r.params.scale_max)},
                      {"cost_cap", opt_num(r.params.cost_cap)},
                      {"time_cap", opt_num(r.params.time_cap)},
                      {"cr_threshold", num(r.cr_threshold)},
                      {"leaf_weights", std::move(weights)}};
  return ordered_json{{"winner", opt_str(r.winner)},
                      {"rankings", std::move(rankings)},
                      {"rejected", std::move(rejected)},
                      {"stages", ordered_json{{"catalog", r.considered.catalog},
                                              {"functional", r.considered.functional},
                                              {"cap", r.considered.cap},
                                              {"satisfaction", r.considered.satisfaction}}},
                      {"advisory", opt_str(r.advisory)},
                      {"params", std::move(params)}};
}

ordered_json sweep_to_json(const SensitivityResult& sweep) {
  ordered_json runs = ordered_json::array();
  for (const auto& p : sweep.points) {
    ordered_json score = nullptr;
    if (!p.report.rankings.empty() && p.report.winner) score = num(p.report.rankings.front().score);
    runs.push_back(ordered_json{{"alpha", num(p.alpha)},
                                {"winner", opt_str(p.report.winner)},
                                {"score", score},
                                {"report", report_to_json(p.report)}});
  }
  ordered_json intervals = ordered_json::array();
  for (const auto& iv : sweep.intervals) {
    intervals.push_back(ordered_json{{"winner", opt_str(iv.winner)},
                                     {"from", num(iv.alpha_from)},
                                     {"to", num(iv.alpha_to)}});
  }
  ordered_json boundaries = ordered_json::array();
  for (const auto& b : sweep.boundaries) {
    boundaries.push_back(ordered_json{{"from_winner", opt_str(b.from_winner)},
                                      {"to_winner", opt_str(b.to_winner)},
                                      {"alpha_low", num(b.alpha_low)},
                                      {"alpha_high", num(b.alpha_high)},
                                      {"alpha_star", opt_num(b.alpha_star)}});
  }
  return ordered_json{{"runs", std::move(runs)},
                      {"intervals", std::move(intervals)},
                      {"boundaries", std::move(boundaries)}};
}

std::string dump_document(const ordered_json& doc) { return doc.dump(2) + "\n"; }

}  // namespace comporank
