#include "comporank/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <numeric>

#include "comporank/error.hpp"

namespace comporank {
namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string missing_services(const Component& c, const std::set<std::string>& required) {
  std::string out;
  for (const auto& s : required) {
    if (c.services.count(s)) continue;
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

const ScoreBreakdown* find_breakdown(const RankedReport& r, const std::string& id) {
  for (const auto& b : r.rankings) {
    if (b.component_id == id) return &b;
  }
  return nullptr;
}

// Score of a fixed candidate as a function of alpha: intercept - slope * alpha.
struct ScoreLine {
  double intercept;
  double slope;
};

ScoreLine line_of(const ScoreBreakdown& b) {
  return {b.quality_term - b.t_i, b.c_i - b.t_i};
}

std::optional<double> crossing(double value_gap, double slope_gap, double lo, double hi) {
  if (slope_gap == 0.0) return std::nullopt;
  double a = value_gap / slope_gap;
  if (a < lo || a > hi) return std::nullopt;
  return a;
}

}  // namespace

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Functional: return "functional";
    case Stage::Cap: return "cap";
    case Stage::Satisfaction: return "satisfaction";
  }
  return "unknown";
}

std::vector<ScoreBreakdown> rank(std::vector<ScoreBreakdown> breakdowns) {
  std::stable_sort(breakdowns.begin(), breakdowns.end(),
                   [](const ScoreBreakdown& a, const ScoreBreakdown& b) {
                     if (a.score != b.score) return a.score > b.score;
                     if (a.penalty_term != b.penalty_term) return a.penalty_term < b.penalty_term;
                     return a.component_id < b.component_id;
                   });
  return breakdowns;
}

RankedReport run_pipeline(const Catalog& catalog, const NeedsSpec& needs, const RandomIndex& ri) {
  LeafWeights weights = build_quality_weights(needs.criteria.tree, needs.criteria.matrices,
                                              needs.cr_threshold, ri);
  return run_pipeline(catalog, needs, weights);
}

RankedReport run_pipeline(const Catalog& catalog, const NeedsSpec& needs, const LeafWeights& weights) {
  ScoringParams params = needs.params;
  params.scale_max = catalog.scale_max;
  params.validate();

  std::vector<std::string> leaves;
  leaves.reserve(weights.size());
  for (const auto& w : weights) leaves.push_back(w.id);
  validate_against_leaves(catalog, leaves);

  RankedReport report;
  report.library = catalog.library_name;
  report.required_services = needs.required_services;
  report.params = params;
  report.cr_threshold = needs.cr_threshold;
  report.leaf_weights = weights;
  report.considered.catalog = catalog.components.size();

  std::vector<Component> functional;
  for (const auto& c : catalog.components) {
    if (std::includes(c.services.begin(), c.services.end(), needs.required_services.begin(),
                      needs.required_services.end())) {
      functional.push_back(c);
    } else {
      report.rejected.push_back(
          {c.id, Stage::Functional, "missing services: " + missing_services(c, needs.required_services)});
    }
  }
  report.considered.functional = functional.size();

  std::vector<Component> capped;
  for (auto& c : functional) {
    if (params.cost_cap && c.raw_cost > *params.cost_cap) {
      report.rejected.push_back({c.id, Stage::Cap,
                                 "cost " + num(c.raw_cost) + " exceeds cap " + num(*params.cost_cap)});
    } else if (params.time_cap && c.raw_time > *params.time_cap) {
      report.rejected.push_back({c.id, Stage::Cap,
                                 "time " + num(c.raw_time) + " exceeds cap " + num(*params.time_cap)});
    } else {
      capped.push_back(std::move(c));
    }
  }
  report.considered.cap = capped.size();

  if (capped.empty()) {
    report.advisory = "no component satisfies the functional and cost/time requirements; "
                      "widen the search or revise the needs";
    return report;
  }

  std::vector<ScoreBreakdown> kept;
  for (auto& b : evaluate_all(capped, weights, params)) {
    if (b.score >= params.satisfaction_threshold) {
      kept.push_back(std::move(b));
    } else {
      report.rejected.push_back({b.component_id, Stage::Satisfaction,
                                 "score " + num(b.score) + " below threshold " +
                                     num(params.satisfaction_threshold)});
    }
  }
  report.considered.satisfaction = kept.size();
  report.rankings = rank(std::move(kept));

  if (report.rankings.empty()) {
    report.advisory = "no component reaches the satisfaction threshold; "
                      "widen the search or revise the needs";
  } else {
    report.winner = report.rankings.front().component_id;
  }
  return report;
}

std::vector<double> alpha_grid(std::size_t steps) {
  if (steps == 0) {
    throw Error(ErrorCode::InvalidValue, "alpha_steps", "alpha_steps must be at least 1");
  }
  if (steps == 1) return {0.5};
  std::vector<double> out(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    out[k] = static_cast<double>(k) / static_cast<double>(steps - 1);
  }
  return out;
}

SensitivityResult sensitivity_sweep(const Catalog& catalog, const NeedsSpec& needs,
                                    const std::vector<double>& alphas, const RandomIndex& ri) {
  if (alphas.empty()) {
    throw Error(ErrorCode::InvalidValue, "alphas", "sensitivity sweep needs at least one alpha");
  }
  for (double a : alphas) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw Error(ErrorCode::InvalidValue, "alpha", "alpha must lie in [0, 1], got " + num(a));
    }
  }
  const LeafWeights weights =
      build_quality_weights(needs.criteria.tree, needs.criteria.matrices, needs.cr_threshold, ri);

  SensitivityResult out;
  out.points.resize(alphas.size());
  std::vector<std::exception_ptr> failures(alphas.size());
  const auto n = static_cast<std::ptrdiff_t>(alphas.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      NeedsSpec local = needs;
      local.params.alpha = alphas[k];
      out.points[k] = {alphas[k], run_pipeline(catalog, local, weights)};
    } catch (...) {
      failures[k] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::vector<std::size_t> order(alphas.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return alphas[a] < alphas[b]; });

  for (std::size_t k = 0; k < order.size(); ++k) {
    const SweepPoint& p = out.points[order[k]];
    if (!out.intervals.empty() && out.intervals.back().winner == p.report.winner) {
      out.intervals.back().alpha_to = p.alpha;
      continue;
    }
    if (!out.intervals.empty()) {
      const SweepPoint& prev = out.points[order[k - 1]];
      WinnerBoundary wb;
      wb.from_winner = prev.report.winner;
      wb.to_winner = p.report.winner;
      wb.alpha_low = prev.alpha;
      wb.alpha_high = p.alpha;
      const double theta = needs.params.satisfaction_threshold;
      if (wb.from_winner && wb.to_winner) {
        const ScoreBreakdown* a = find_breakdown(prev.report, *wb.from_winner);
        const ScoreBreakdown* b = find_breakdown(p.report, *wb.to_winner);
        ScoreLine la = line_of(*a);
        ScoreLine lb = line_of(*b);
        wb.alpha_star = crossing(la.intercept - lb.intercept, la.slope - lb.slope, wb.alpha_low, wb.alpha_high);
      } else if (wb.from_winner) {
        ScoreLine la = line_of(*find_breakdown(prev.report, *wb.from_winner));
        wb.alpha_star = crossing(la.intercept - theta, la.slope, wb.alpha_low, wb.alpha_high);
      } else if (wb.to_winner) {
        ScoreLine lb = line_of(*find_breakdown(p.report, *wb.to_winner));
        wb.alpha_star = crossing(lb.intercept - theta, lb.slope, wb.alpha_low, wb.alpha_high);
      }
      out.boundaries.push_back(std::move(wb));
    }
    out.intervals.push_back({p.report.winner, p.alpha, p.alpha});
  }
  return out;
}

}  // namespace comporank
