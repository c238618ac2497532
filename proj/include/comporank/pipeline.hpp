#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "comporank/catalog.hpp"
#include "comporank/quality_model.hpp"
#include "comporank/scoring.hpp"

namespace comporank {

struct NeedsSpec {
  std::set<std::string> required_services;
  CriteriaConfig criteria;
  ScoringParams params;
  double cr_threshold = kDefaultCrThreshold;
};

enum class Stage { Functional, Cap, Satisfaction };

std::string_view to_string(Stage stage);

struct Rejection {
  std::string component_id;
  Stage stage = Stage::Functional;
  std::string reason;
};

/// Number of candidates still alive after each gate.
struct StageCounts {
  std::size_t catalog = 0;
  std::size_t functional = 0;
  std::size_t cap = 0;
  std::size_t satisfaction = 0;
};

struct RankedReport {
  std::optional<std::string> winner;
  std::optional<std::string> advisory;  // set when the library must be searched again
  std::vector<ScoreBreakdown> rankings;
  std::vector<Rejection> rejected;
  StageCounts considered;

  // Echo of the inputs that shaped the run.
  std::string library;
  std::set<std::string> required_services;
  ScoringParams params;
  double cr_threshold = kDefaultCrThreshold;
  LeafWeights leaf_weights;
};

/// Stable descending sort by score; ties go to the lower penalty, then to
/// the lexicographically smaller id.
std::vector<ScoreBreakdown> rank(std::vector<ScoreBreakdown> breakdowns);

/// One pass of the selection process: functional filter, cap gate,
/// evaluation, satisfaction gate and ranking. Inconsistent matrices throw
/// Error(InconsistentMatrix); an empty candidate set yields a report with
/// no winner.
RankedReport run_pipeline(const Catalog& catalog, const NeedsSpec& needs,
                          const RandomIndex& ri = RandomIndex::standard());

/// Same as above with leaf weights already derived from `needs.criteria`.
RankedReport run_pipeline(const Catalog& catalog, const NeedsSpec& needs, const LeafWeights& weights);

/// Consecutive run of alphas sharing the same winner.
struct StabilityInterval {
  std::optional<std::string> winner;
  double alpha_from = 0.0;
  double alpha_to = 0.0;
};

/// Winner change between two adjacent sampled alphas. `alpha_star` is where
/// the two winners' scores cross, when that crossing lies between the
/// samples.
struct WinnerBoundary {
  std::optional<std::string> from_winner;
  std::optional<std::string> to_winner;
  double alpha_low = 0.0;
  double alpha_high = 0.0;
  std::optional<double> alpha_star;
};

struct SweepPoint {
  double alpha = 0.0;
  RankedReport report;
};

struct SensitivityResult {
  std::vector<SweepPoint> points;  // input alpha order
  std::vector<StabilityInterval> intervals;
  std::vector<WinnerBoundary> boundaries;
};

/// Runs the pipeline once per alpha (in parallel). Intervals and boundaries
/// are computed over the alphas sorted ascending. Throws Error(InvalidValue)
/// for an empty list or an alpha outside [0,1].
SensitivityResult sensitivity_sweep(const Catalog& catalog, const NeedsSpec& needs,
                                    const std::vector<double>& alphas,
                                    const RandomIndex& ri = RandomIndex::standard());

/// `steps` evenly spaced points over [0,1]; a single step is the midpoint 0.5.
std::vector<double> alpha_grid(std::size_t steps);

}  // namespace comporank
