#include "comporank/quality_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "comporank/error.hpp"

namespace comporank {
namespace {

constexpr double kReciprocityTol = 1e-9;
constexpr double kScaleTol = 1e-12;
constexpr double kPowerTol = 1e-12;
constexpr int kPowerMaxIter = 1000;
constexpr double kSumTol = 1e-9;

std::string cell(const PairwiseMatrix& m, std::size_t i, std::size_t j) {
  return m.node_id + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

void collect_ids(const CriterionNode& node, std::set<std::string>& seen) {
  if (!seen.insert(node.id).second) {
    throw Error(ErrorCode::DuplicateId, node.id, "criterion id '" + node.id + "' appears more than once");
  }
  for (const auto& child : node.children) collect_ids(child, seen);
}

// Local weights of `node`'s children in declaration order.
NodeWeighting weigh_node(const CriterionNode& node,
                         const std::map<std::string, PairwiseMatrix>& matrices,
                         double threshold, const RandomIndex& ri) {
  NodeWeighting out;
  out.node_id = node.id;
  for (const auto& c : node.children) out.child_ids.push_back(c.id);
  const std::size_t n = node.children.size();

  if (auto it = matrices.find(node.id); it != matrices.end()) {
    const PairwiseMatrix& m = it->second;
    if (m.order() != n) {
      throw Error(ErrorCode::DimensionMismatch, node.id,
                  "matrix for '" + node.id + "' is " + std::to_string(m.order()) + "x" +
                      std::to_string(m.order()) + " but the node has " + std::to_string(n) +
                      " children");
    }
    WeightVector wv = derive_weights(m, ri);
    out.local_weights.assign(n, 0.0);
    if (m.item_ids.empty()) {
      out.local_weights = wv.weights;
    } else {
      if (m.item_ids.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, node.id,
                    "matrix for '" + node.id + "' lists " + std::to_string(m.item_ids.size()) +
                        " items but has order " + std::to_string(n));
      }
      std::vector<bool> used(n, false);
      for (std::size_t r = 0; r < n; ++r) {
        auto pos = std::find(out.child_ids.begin(), out.child_ids.end(), m.item_ids[r]);
        if (pos == out.child_ids.end() || used[pos - out.child_ids.begin()]) {
          throw Error(ErrorCode::DimensionMismatch, node.id,
                      "matrix item '" + m.item_ids[r] + "' is not a distinct child of '" + node.id + "'");
        }
        used[pos - out.child_ids.begin()] = true;
        out.local_weights[pos - out.child_ids.begin()] = wv.weights[r];
      }
    }
    out.verdict = check_consistency(wv, threshold);
    out.derived = std::move(wv);
    return out;
  }

  if (n == 1 && !node.children[0].local_weight) {
    out.local_weights = {1.0};
    return out;
  }

  double sum = 0.0;
  for (const auto& c : node.children) {
    if (!c.local_weight) {
      throw Error(ErrorCode::MissingWeights, node.id,
                  "node '" + node.id + "' has no matrix and child '" + c.id + "' has no weight");
    }
    double w = *c.local_weight;
    if (!(w >= 0.0 && w <= 1.0)) {
      throw Error(ErrorCode::InvalidValue, c.id, "weight of '" + c.id + "' must lie in [0, 1]");
    }
    out.local_weights.push_back(w);
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSumTol) {
    throw Error(ErrorCode::MissingWeights, node.id,
                "child weights of '" + node.id + "' sum to " + std::to_string(sum) + ", not 1");
  }
  return out;
}

void walk(const CriterionNode& node, double global,
          const std::map<std::string, PairwiseMatrix>& matrices, double threshold,
          const RandomIndex& ri, QualityAssessment& out) {
  if (node.is_leaf()) {
    out.leaves.push_back({node.id, global});
    return;
  }
  NodeWeighting nw = weigh_node(node, matrices, threshold, ri);
  std::vector<double> local = nw.local_weights;
  out.nodes.push_back(std::move(nw));
  for (std::size_t k = 0; k < node.children.size(); ++k) {
    walk(node.children[k], global * local[k], matrices, threshold, ri, out);
  }
}

void collect_leaves(const CriterionNode& node, std::vector<std::string>& out) {
  if (node.is_leaf()) {
    out.push_back(node.id);
    return;
  }
  for (const auto& c : node.children) collect_leaves(c, out);
}

}  // namespace

void validate_matrix(const PairwiseMatrix& m, const RandomIndex& ri) {
  const std::size_t n = m.order();
  if (n < 2) {
    throw Error(ErrorCode::DimensionMismatch, m.node_id,
                "matrix for '" + m.node_id + "' must be at least 2x2");
  }
  if (n > ri.max_order()) {
    throw Error(ErrorCode::DimensionMismatch, m.node_id,
                "matrix for '" + m.node_id + "' has order " + std::to_string(n) +
                    ", above the largest supported order " + std::to_string(ri.max_order()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (m.entries[i].size() != n) {
      throw Error(ErrorCode::DimensionMismatch, m.node_id + "[" + std::to_string(i) + "]",
                  "row " + std::to_string(i) + " of '" + m.node_id + "' has " +
                      std::to_string(m.entries[i].size()) + " entries, expected " + std::to_string(n));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (m.entries[i][i] != 1.0) {
      throw Error(ErrorCode::NonReciprocalMatrix, cell(m, i, i), "diagonal entry " + cell(m, i, i) + " must be 1");
    }
    for (std::size_t j = 0; j < n; ++j) {
      double a = m.entries[i][j];
      if (!std::isfinite(a) || a < kSaatyMin - kScaleTol || a > kSaatyMax + kScaleTol) {
        throw Error(ErrorCode::OutOfScaleEntry, cell(m, i, j),
                    "entry " + cell(m, i, j) + " = " + std::to_string(a) + " is outside [1/9, 9]");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(m.entries[j][i] - 1.0 / m.entries[i][j]) > kReciprocityTol) {
        throw Error(ErrorCode::NonReciprocalMatrix, cell(m, j, i),
                    "entry " + cell(m, j, i) + " is not the reciprocal of " + cell(m, i, j));
      }
    }
  }
}

WeightVector derive_weights(const PairwiseMatrix& m, const RandomIndex& ri) {
  validate_matrix(m, ri);
  const std::size_t n = m.order();

  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  WeightVector out;
  for (int iter = 1; iter <= kPowerMaxIter; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = std::inner_product(m.entries[i].begin(), m.entries[i].end(), w.begin(), 0.0);
    }
    double s = std::accumulate(next.begin(), next.end(), 0.0);
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= s;
      delta = std::max(delta, std::abs(next[i] - w[i]));
    }
    w.swap(next);
    out.iterations = iter;
    if (delta < kPowerTol) break;
  }

  // With w summing to 1, sum(A w) is the Rayleigh-style estimate of lambda_max.
  double lambda = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    lambda += std::inner_product(m.entries[i].begin(), m.entries[i].end(), w.begin(), 0.0);
  }
  const double dn = static_cast<double>(n);
  out.weights = std::move(w);
  out.lambda_max = lambda;
  out.consistency_index = std::max(0.0, (lambda - dn) / (dn - 1.0));
  const double r = ri.at(n);
  out.consistency_ratio = r > 0.0 ? out.consistency_index / r : 0.0;
  return out;
}

ConsistencyVerdict check_consistency(const WeightVector& wv, double threshold) {
  return {wv.consistency_ratio <= threshold, wv.consistency_ratio, threshold};
}

bool QualityAssessment::consistent() const {
  return std::all_of(nodes.begin(), nodes.end(),
                     [](const NodeWeighting& n) { return !n.verdict || n.verdict->accepted; });
}

QualityAssessment assess_quality_model(const CriteriaConfig& config, double threshold,
                                       const RandomIndex& ri) {
  if (!(threshold > 0.0)) {
    throw Error(ErrorCode::InvalidValue, "cr_threshold", "consistency threshold must be positive");
  }
  std::set<std::string> ids;
  collect_ids(config.tree, ids);
  for (const auto& [node_id, m] : config.matrices) {
    if (!ids.count(node_id)) {
      throw Error(ErrorCode::UnknownCriterion, node_id, "matrix given for unknown node '" + node_id + "'");
    }
  }
  QualityAssessment out;
  if (config.tree.is_leaf()) {
    out.leaves.push_back({config.tree.id, 1.0});
    return out;
  }
  walk(config.tree, 1.0, config.matrices, threshold, ri, out);
  return out;
}

LeafWeights build_quality_weights(const CriterionNode& tree,
                                  const std::map<std::string, PairwiseMatrix>& matrices,
                                  double threshold, const RandomIndex& ri) {
  CriteriaConfig cfg{tree, matrices};
  QualityAssessment qa = assess_quality_model(cfg, threshold, ri);
  for (const auto& node : qa.nodes) {
    if (node.verdict && !node.verdict->accepted) {
      throw Error(ErrorCode::InconsistentMatrix, node.node_id,
                  "matrix for '" + node.node_id + "' has consistency ratio " +
                      std::to_string(node.verdict->consistency_ratio) + " above " +
                      std::to_string(threshold));
    }
  }
  return std::move(qa.leaves);
}

std::vector<std::string> leaf_ids(const CriterionNode& tree) {
  std::vector<std::string> out;
  collect_leaves(tree, out);
  return out;
}

}  // namespace comporank
