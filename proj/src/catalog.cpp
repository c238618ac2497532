#include "comporank/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "comporank/error.hpp"
#include "comporank/json_io.hpp"

namespace comporank {
namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, where, where + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) parse_fail(where, "expected a string");
  return v.get<std::string>();
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) parse_fail(where, "expected a number");
  return v.get<double>();
}

Component component_from_json(const json& j, const std::string& where, double scale_max) {
  if (!j.is_object()) parse_fail(where, "expected an object");
  Component c;
  c.id = as_string(require(j, "id", where), where + "/id");
  if (c.id.empty()) parse_fail(where + "/id", "component id must not be empty");
  c.name = j.contains("name") ? as_string(j["name"], where + "/name") : c.id;

  if (j.contains("services")) {
    const json& s = j["services"];
    if (!s.is_array()) parse_fail(where + "/services", "expected an array of strings");
    for (std::size_t k = 0; k < s.size(); ++k) {
      c.services.insert(as_string(s[k], where + "/services/" + std::to_string(k)));
    }
  }

  const json& r = require(j, "ratings", where);
  if (!r.is_object()) parse_fail(where + "/ratings", "expected an object of leaf ratings");
  for (auto it = r.begin(); it != r.end(); ++it) {
    double v = as_number(it.value(), where + "/ratings/" + it.key());
    if (!(v > 0.0 && v <= scale_max)) {
      throw Error(ErrorCode::RatingOutOfRange, c.id + "." + it.key(),
                  "rating of '" + c.id + "' on '" + it.key() + "' is " + std::to_string(v) +
                      ", outside (0, " + std::to_string(scale_max) + "]");
    }
    c.ratings.emplace(it.key(), v);
  }

  c.raw_cost = as_number(require(j, "cost", where), where + "/cost");
  c.raw_time = as_number(require(j, "time", where), where + "/time");
  if (!(c.raw_cost >= 0.0) || !std::isfinite(c.raw_cost)) {
    throw Error(ErrorCode::InvalidValue, c.id, "cost of '" + c.id + "' must be a finite value >= 0");
  }
  if (!(c.raw_time >= 0.0) || !std::isfinite(c.raw_time)) {
    throw Error(ErrorCode::InvalidValue, c.id, "time of '" + c.id + "' must be a finite value >= 0");
  }
  return c;
}

}  // namespace

Catalog catalog_from_json(const json& j, const CatalogLoadOptions& options) {
  if (!j.is_object()) parse_fail("/", "catalog must be a JSON object");
  Catalog cat;
  cat.library_name = j.contains("library") ? as_string(j["library"], "/library") : std::string{};
  if (j.contains("scale_max")) {
    cat.scale_max = as_number(j["scale_max"], "/scale_max");
    if (!(cat.scale_max > 0.0) || !std::isfinite(cat.scale_max)) {
      throw Error(ErrorCode::InvalidValue, "scale_max", "scale_max must be a finite value > 0");
    }
  }
  const json& comps = require(j, "components", "/");
  if (!comps.is_array()) parse_fail("/components", "expected an array");
  if (comps.size() > options.max_components) {
    throw Error(ErrorCode::TooManyComponents, cat.library_name,
                "catalog has " + std::to_string(comps.size()) + " components, limit is " +
                    std::to_string(options.max_components));
  }
  cat.components.reserve(comps.size());
  std::set<std::string> ids;
  for (std::size_t k = 0; k < comps.size(); ++k) {
    Component c = component_from_json(comps[k], "/components/" + std::to_string(k), cat.scale_max);
    if (!ids.insert(c.id).second) {
      throw Error(ErrorCode::DuplicateId, c.id, "component id '" + c.id + "' appears more than once");
    }
    cat.components.push_back(std::move(c));
  }
  if (options.leaves) validate_against_leaves(cat, *options.leaves);
  return cat;
}

Catalog load_catalog(std::istream& in, const CatalogLoadOptions& options) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "byte " + std::to_string(e.byte), e.what());
  }
  return catalog_from_json(j, options);
}

Catalog load_catalog(const std::filesystem::path& path, const CatalogLoadOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::ParseError, path.string(), "cannot open catalog file '" + path.string() + "'");
  }
  return load_catalog(in, options);
}

void validate_against_leaves(const Catalog& catalog, std::span<const std::string> leaves) {
  std::set<std::string> known(leaves.begin(), leaves.end());
  for (const auto& c : catalog.components) {
    for (const auto& [leaf, rating] : c.ratings) {
      if (!known.count(leaf)) {
        throw Error(ErrorCode::UnknownCriterion, c.id + "." + leaf,
                    "component '" + c.id + "' rates unknown criterion '" + leaf + "'");
      }
    }
    for (const auto& leaf : leaves) {
      if (!c.ratings.count(leaf)) {
        throw Error(ErrorCode::MissingRating, c.id + "." + leaf,
                    "component '" + c.id + "' has no rating for criterion '" + leaf + "'");
      }
    }
  }
}

std::vector<Component> filter_functional(std::span<const Component> components,
                                         const std::set<std::string>& required) {
  std::vector<Component> out;
  for (const auto& c : components) {
    if (std::includes(c.services.begin(), c.services.end(), required.begin(), required.end())) {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace comporank
