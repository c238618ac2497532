#include <cstddef>

#include "comporank/scoring.hpp"
#include "scoring_detail.hpp"

namespace comporank {

std::vector<ScoreBreakdown> evaluate_all(std::span<const Component> candidates,
                                         const LeafWeights& weights, const ScoringParams& params) {
  const Normalization norm = detail::prepare_evaluation(candidates, weights, params);
  const auto n = static_cast<std::ptrdiff_t>(candidates.size());
  std::vector<ScoreBreakdown> out(candidates.size());
#pragma omp parallel for schedule(static) if (n > 256)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = detail::score_one(candidates[i], norm.values[i], weights, params);
  }
  return out;
}

std::vector<ScoreBreakdown> evaluate_all_serial(std::span<const Component> candidates,
                                                const LeafWeights& weights,
                                                const ScoringParams& params) {
  const Normalization norm = detail::prepare_evaluation(candidates, weights, params);
  std::vector<ScoreBreakdown> out;
  out.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    out.push_back(detail::score_one(candidates[i], norm.values[i], weights, params));
  }
  return out;
}

}  // namespace comporank
