#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "comporank/random_index.hpp"

namespace comporank {

inline constexpr double kDefaultCrThreshold = 0.10;
inline constexpr double kSaatyMin = 1.0 / 9.0;
inline constexpr double kSaatyMax = 9.0;

/// Node of the quality hierarchy. Leaves carry component ratings; inner
/// nodes get their children's local weights either from a pairwise matrix
/// or from `local_weight` values supplied on each child.
struct CriterionNode {
  std::string id;
  std::string name;
  std::vector<CriterionNode> children;
  std::optional<double> local_weight;

  bool is_leaf() const noexcept { return children.empty(); }
};

/// Positive reciprocal judgment matrix comparing the children of `node_id`.
/// `item_ids` fixes which child each row refers to; when empty the rows
/// follow the children's declaration order.
struct PairwiseMatrix {
  std::string node_id;
  std::vector<std::string> item_ids;
  std::vector<std::vector<double>> entries;

  std::size_t order() const noexcept { return entries.size(); }
};

struct WeightVector {
  std::vector<double> weights;
  double lambda_max = 0.0;
  double consistency_index = 0.0;
  double consistency_ratio = 0.0;
  int iterations = 0;
};

struct ConsistencyVerdict {
  bool accepted = false;
  double consistency_ratio = 0.0;
  double threshold = kDefaultCrThreshold;
};

struct CriteriaConfig {
  CriterionNode tree;
  std::map<std::string, PairwiseMatrix> matrices;
};

struct LeafWeight {
  std::string id;
  double weight = 0.0;
};

/// Global leaf weights in depth-first declaration order.
using LeafWeights = std::vector<LeafWeight>;

/// Local weighting of one inner node.
struct NodeWeighting {
  std::string node_id;
  std::vector<std::string> child_ids;
  std::vector<double> local_weights;
  std::optional<WeightVector> derived;  // set when a matrix was used
  std::optional<ConsistencyVerdict> verdict;
};

struct QualityAssessment {
  LeafWeights leaves;
  std::vector<NodeWeighting> nodes;

  bool consistent() const;
};

/// Throws Error(DimensionMismatch | OutOfScaleEntry | NonReciprocalMatrix)
/// naming the offending cell as "<node>[i][j]".
void validate_matrix(const PairwiseMatrix& matrix, const RandomIndex& ri = RandomIndex::standard());

/// Principal-eigenvector weights by power iteration from the uniform
/// vector (tolerance 1e-12, at most 1000 steps), with lambda_max, CI and CR.
WeightVector derive_weights(const PairwiseMatrix& matrix, const RandomIndex& ri = RandomIndex::standard());

/// Accepts iff CR <= threshold.
ConsistencyVerdict check_consistency(const WeightVector& wv, double threshold = kDefaultCrThreshold);

/// Weights every node of the tree without failing on inconsistency, so
/// callers can report each node's consistency. Structural problems (bad
/// matrices, missing weights, duplicate ids) still throw.
QualityAssessment assess_quality_model(const CriteriaConfig& config,
                                       double threshold = kDefaultCrThreshold,
                                       const RandomIndex& ri = RandomIndex::standard());

/// Global leaf weights as the product of local weights along each root
/// path. Throws Error(InconsistentMatrix) naming the first node whose CR
/// exceeds `threshold`.
LeafWeights build_quality_weights(const CriterionNode& tree,
                                  const std::map<std::string, PairwiseMatrix>& matrices,
                                  double threshold = kDefaultCrThreshold,
                                  const RandomIndex& ri = RandomIndex::standard());

std::vector<std::string> leaf_ids(const CriterionNode& tree);

}  // namespace comporank
