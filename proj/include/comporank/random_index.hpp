#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace comporank {

/// Random Index lookup used to turn a consistency index into a ratio.
/// Entry k holds RI for matrices of order k + 1.
class RandomIndex {
 public:
  /// Saaty's published table for orders 1..10.
  static const RandomIndex& standard();

  /// Comma-separated values for orders 1..k, e.g. "0,0,0.58,0.9".
  /// Throws Error(InvalidValue) on malformed or negative entries.
  static RandomIndex parse(std::string_view csv);

  /// Reads COMPORANK_RI_TABLE when set, otherwise returns the standard table.
  static RandomIndex from_environment();

  explicit RandomIndex(std::vector<double> values);

  std::size_t max_order() const noexcept { return values_.size(); }
  double at(std::size_t order) const;

 private:
  std::vector<double> values_;
};

}  // namespace comporank
