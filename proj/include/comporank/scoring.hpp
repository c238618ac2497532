#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "comporank/catalog.hpp"
#include "comporank/quality_model.hpp"

namespace comporank {

inline constexpr double kDefaultAlpha = 0.5;

struct ScoringParams {
  double alpha = kDefaultAlpha;  // cost weight in the penalty; time gets 1 - alpha
  double scale_max = kDefaultScaleMax;
  std::optional<double> cost_cap;
  std::optional<double> time_cap;
  double satisfaction_threshold = 0.0;

  /// Throws Error(InvalidValue) when alpha is outside [0,1], scale_max <= 0,
  /// or a cap is not positive.
  void validate() const;
};

/// Candidate-set maxima used as cost and time denominators.
struct NormalizationContext {
  double c_max = 0.0;
  double t_max = 0.0;
};

struct NormalizedCostTime {
  double cost = 0.0;  // c_i
  double time = 0.0;  // t_i
};

struct Normalization {
  NormalizationContext context;
  std::vector<NormalizedCostTime> values;  // parallel to the candidate list
};

struct ScoreBreakdown {
  std::string component_id;
  std::vector<std::pair<std::string, double>> q_normalized;  // leaf order of the weights
  double c_i = 0.0;
  double t_i = 0.0;
  double quality_term = 0.0;  // Q_i
  double penalty_term = 0.0;  // m_i
  double score = 0.0;         // S_i
  bool selected = true;       // x_i
};

/// Throws Error(EmptyCandidateSet) for an empty list. A zero maximum maps
/// every normalized value to 0.
Normalization normalize_candidates(std::span<const Component> candidates);

/// alpha * c + (1 - alpha) * t. Throws Error(DomainError) unless all three
/// arguments lie in [0,1].
double penalty(double c, double t, double alpha);

/// Weighted quality sum, or 0 when not selected. Throws Error(MissingLeaf)
/// when the weight and rating key sets differ.
double quality_term(const LeafWeights& weights, const std::map<std::string, double>& q_normalized,
                    bool selected);

double component_score(double quality, double penalty_value, bool selected);

/// Scores every candidate against one shared normalization context.
/// Results follow input order. Candidates are processed in parallel.
std::vector<ScoreBreakdown> evaluate_all(std::span<const Component> candidates,
                                         const LeafWeights& weights, const ScoringParams& params);

/// Single-threaded reference for evaluate_all; same contract, same output.
std::vector<ScoreBreakdown> evaluate_all_serial(std::span<const Component> candidates,
                                                const LeafWeights& weights,
                                                const ScoringParams& params);

}  // namespace comporank
