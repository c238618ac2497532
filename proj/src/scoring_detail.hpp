#pragma once

#include <span>

#include "comporank/scoring.hpp"

namespace comporank::detail {

/// Checks everything evaluate_all may reject so the scoring loop itself
/// never throws. Returns the shared normalization.
Normalization prepare_evaluation(std::span<const Component> candidates, const LeafWeights& weights,
                                 const ScoringParams& params);

ScoreBreakdown score_one(const Component& c, const NormalizedCostTime& ct,
                         const LeafWeights& weights, const ScoringParams& params);

}  // namespace comporank::detail
