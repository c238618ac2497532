#include "comporank/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "comporank/error.hpp"
#include "scoring_detail.hpp"

namespace comporank {
namespace {

constexpr double kWeightSumTol = 1e-9;

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

void ScoringParams::validate() const {
  if (!in_unit(alpha)) {
    throw Error(ErrorCode::InvalidValue, "alpha", "alpha must lie in [0, 1], got " + num(alpha));
  }
  if (!(scale_max > 0.0) || !std::isfinite(scale_max)) {
    throw Error(ErrorCode::InvalidValue, "scale_max", "scale_max must be a finite value > 0");
  }
  if (cost_cap && !(*cost_cap > 0.0)) {
    throw Error(ErrorCode::InvalidValue, "cost_cap", "cost cap must be > 0");
  }
  if (time_cap && !(*time_cap > 0.0)) {
    throw Error(ErrorCode::InvalidValue, "time_cap", "time cap must be > 0");
  }
  if (!std::isfinite(satisfaction_threshold)) {
    throw Error(ErrorCode::InvalidValue, "threshold", "satisfaction threshold must be finite");
  }
}

Normalization normalize_candidates(std::span<const Component> candidates) {
  if (candidates.empty()) {
    throw Error(ErrorCode::EmptyCandidateSet, "candidates", "no candidate components to normalize");
  }
  Normalization out;
  for (const auto& c : candidates) {
    out.context.c_max = std::max(out.context.c_max, c.raw_cost);
    out.context.t_max = std::max(out.context.t_max, c.raw_time);
  }
  out.values.reserve(candidates.size());
  for (const auto& c : candidates) {
    NormalizedCostTime v;
    v.cost = out.context.c_max > 0.0 ? c.raw_cost / out.context.c_max : 0.0;
    v.time = out.context.t_max > 0.0 ? c.raw_time / out.context.t_max : 0.0;
    out.values.push_back(v);
  }
  return out;
}

double penalty(double c, double t, double alpha) {
  if (!in_unit(c) || !in_unit(t) || !in_unit(alpha)) {
    throw Error(ErrorCode::DomainError, "penalty",
                "penalty arguments must lie in [0, 1]: c=" + num(c) + " t=" + num(t) + " alpha=" + num(alpha));
  }
  return std::min(1.0, alpha * c + (1.0 - alpha) * t);
}

double quality_term(const LeafWeights& weights, const std::map<std::string, double>& q_normalized,
                    bool selected) {
  if (q_normalized.size() != weights.size()) {
    for (const auto& [leaf, q] : q_normalized) {
      auto it = std::find_if(weights.begin(), weights.end(), [&](const LeafWeight& w) { return w.id == leaf; });
      if (it == weights.end()) {
        throw Error(ErrorCode::MissingLeaf, leaf, "rating for '" + leaf + "' has no weight");
      }
    }
  }
  double sum = 0.0;
  for (const auto& w : weights) {
    auto it = q_normalized.find(w.id);
    if (it == q_normalized.end()) {
      throw Error(ErrorCode::MissingLeaf, w.id, "weight for '" + w.id + "' has no rating");
    }
    sum += w.weight * it->second;
  }
  if (!selected) return 0.0;
  return std::clamp(sum, 0.0, 1.0);
}

double component_score(double quality, double penalty_value, bool selected) {
  return selected ? quality - penalty_value : 0.0;
}

namespace detail {

Normalization prepare_evaluation(std::span<const Component> candidates, const LeafWeights& weights,
                                 const ScoringParams& params) {
  params.validate();
  if (candidates.empty()) {
    throw Error(ErrorCode::EmptyCandidateSet, "candidates", "no candidate components to evaluate");
  }
  double wsum = 0.0;
  for (const auto& w : weights) {
    if (!in_unit(w.weight)) {
      throw Error(ErrorCode::DomainError, w.id, "leaf weight of '" + w.id + "' is outside [0, 1]");
    }
    wsum += w.weight;
  }
  if (std::abs(wsum - 1.0) > kWeightSumTol) {
    throw Error(ErrorCode::DomainError, "weights", "leaf weights sum to " + num(wsum) + ", not 1");
  }
  for (const auto& c : candidates) {
    if (params.cost_cap && c.raw_cost > *params.cost_cap) {
      throw Error(ErrorCode::CapExceeded, c.id,
                  "cost of '" + c.id + "' (" + num(c.raw_cost) + ") exceeds cap " + num(*params.cost_cap));
    }
    if (params.time_cap && c.raw_time > *params.time_cap) {
      throw Error(ErrorCode::CapExceeded, c.id,
                  "time of '" + c.id + "' (" + num(c.raw_time) + ") exceeds cap " + num(*params.time_cap));
    }
    if (c.ratings.size() != weights.size()) {
      for (const auto& [leaf, r] : c.ratings) {
        auto it = std::find_if(weights.begin(), weights.end(), [&](const LeafWeight& w) { return w.id == leaf; });
        if (it == weights.end()) {
          throw Error(ErrorCode::MissingLeaf, c.id + "." + leaf,
                      "component '" + c.id + "' rates '" + leaf + "', which has no weight");
        }
      }
    }
    for (const auto& w : weights) {
      auto it = c.ratings.find(w.id);
      if (it == c.ratings.end()) {
        throw Error(ErrorCode::MissingLeaf, c.id + "." + w.id,
                    "component '" + c.id + "' has no rating for '" + w.id + "'");
      }
      if (!(it->second > 0.0 && it->second <= params.scale_max)) {
        throw Error(ErrorCode::RatingOutOfRange, c.id + "." + w.id,
                    "rating of '" + c.id + "' on '" + w.id + "' is outside (0, " + num(params.scale_max) + "]");
      }
    }
  }
  return normalize_candidates(candidates);
}

ScoreBreakdown score_one(const Component& c, const NormalizedCostTime& ct,
                         const LeafWeights& weights, const ScoringParams& params) {
  ScoreBreakdown b;
  b.component_id = c.id;
  b.selected = true;
  b.c_i = ct.cost;
  b.t_i = ct.time;
  b.q_normalized.reserve(weights.size());
  double sum = 0.0;
  for (const auto& w : weights) {
    double q = c.ratings.at(w.id) / params.scale_max;
    b.q_normalized.emplace_back(w.id, q);
    sum += w.weight * q;
  }
  b.quality_term = std::clamp(sum, 0.0, 1.0);
  b.penalty_term = std::min(1.0, params.alpha * ct.cost + (1.0 - params.alpha) * ct.time);
  b.score = component_score(b.quality_term, b.penalty_term, b.selected);
  return b;
}

}  // namespace detail
}  // namespace comporank
