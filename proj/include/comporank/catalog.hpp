#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace comporank {

inline constexpr std::size_t kDefaultMaxComponents = 10000;
inline constexpr double kDefaultScaleMax = 10.0;

struct Component {
  std::string id;
  std::string name;
  std::set<std::string> services;
  std::map<std::string, double> ratings;  // leaf id -> raw rating in (0, scale_max]
  double raw_cost = 0.0;
  double raw_time = 0.0;

  bool operator==(const Component&) const = default;
};

struct Catalog {
  std::string library_name;
  double scale_max = kDefaultScaleMax;
  std::vector<Component> components;

  bool operator==(const Catalog&) const = default;
};

struct CatalogLoadOptions {
  std::size_t max_components = kDefaultMaxComponents;
  /// When set, ratings must cover exactly these leaves.
  std::optional<std::vector<std::string>> leaves;
};

Catalog load_catalog(std::istream& in, const CatalogLoadOptions& options = {});
Catalog load_catalog(const std::filesystem::path& path, const CatalogLoadOptions& options = {});

/// Throws UnknownCriterion for a rating on a leaf outside `leaves` and
/// MissingRating for a leaf with no rating.
void validate_against_leaves(const Catalog& catalog, std::span<const std::string> leaves);

/// Components whose services contain every tag in `required`, in catalog order.
std::vector<Component> filter_functional(std::span<const Component> components,
                                         const std::set<std::string>& required);

}  // namespace comporank
