#include <doctest.h>

#include <random>
#include <sstream>

#include "comporank/catalog.hpp"
#include "comporank/error.hpp"
#include "comporank/json_io.hpp"
#include "oracles.hpp"

using namespace comporank;

namespace {

Catalog parse(const std::string& text, const CatalogLoadOptions& opts = {}) {
  std::istringstream in(text);
  return load_catalog(in, opts);
}

ErrorCode load_error(const std::string& text, const CatalogLoadOptions& opts = {}) {
  try {
    parse(text, opts);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::ParseError;
}

Component comp(const std::string& id, std::set<std::string> services) {
  Component c;
  c.id = id;
  c.services = std::move(services);
  return c;
}

std::vector<std::string> ids(const std::vector<Component>& cs) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(c.id);
  return out;
}

}  // namespace

TEST_CASE("well-formed fixture loads all components") {
  auto cat = load_catalog(std::filesystem::path(oracle::fixture("catalog_five.json")));
  CHECK(cat.library_name == "demo-library");
  CHECK(cat.scale_max == 10.0);
  REQUIRE(cat.components.size() == 5);
  CHECK(cat.components[0].id == "authkit");
  CHECK(cat.components[2].raw_cost == 900.0);
  CHECK(cat.components[0].services.count("ui") == 1);
}

TEST_CASE("three-component catalog") {
  auto cat = parse(R"({"library": "x", "components": [
    {"id": "a", "ratings": {"q": 1}, "cost": 1, "time": 1},
    {"id": "b", "ratings": {"q": 2}, "cost": 2, "time": 0},
    {"id": "c", "ratings": {"q": 10}, "cost": 0, "time": 3}]})");
  CHECK(cat.components.size() == 3);
  CHECK(cat.scale_max == kDefaultScaleMax);
  CHECK(cat.components[0].name == "a");
}

TEST_CASE("ratings must lie in (0, scale_max]") {
  CHECK(load_error(R"({"components": [{"id": "a", "ratings": {"q": 0}, "cost": 1, "time": 1}]})") ==
        ErrorCode::RatingOutOfRange);
  CHECK(load_error(R"({"scale_max": 5, "components": [{"id": "a", "ratings": {"q": 5.5}, "cost": 1, "time": 1}]})") ==
        ErrorCode::RatingOutOfRange);
  CHECK_NOTHROW(parse(R"({"scale_max": 5, "components": [{"id": "a", "ratings": {"q": 5}, "cost": 1, "time": 1}]})"));
}

TEST_CASE("load errors") {
  CHECK(load_error(R"({"components": [{"id": "a", "ratings": {}, "cost": 1, "time": 1},
                                      {"id": "a", "ratings": {}, "cost": 1, "time": 1}]})") == ErrorCode::DuplicateId);
  CHECK(load_error("{\"components\": [") == ErrorCode::ParseError);
  CHECK(load_error(R"({"components": [{"id": "a", "ratings": {}, "cost": "cheap", "time": 1}]})") ==
        ErrorCode::ParseError);
  CHECK(load_error(R"({"components": [{"id": "a", "ratings": {}, "cost": -1, "time": 1}]})") ==
        ErrorCode::InvalidValue);
  CHECK(load_error(R"({"components": [{"id": "a", "ratings": {}, "time": 1}]})") == ErrorCode::ParseError);
  CHECK(load_error(R"({"scale_max": 0, "components": []})") == ErrorCode::InvalidValue);

  CatalogLoadOptions small;
  small.max_components = 1;
  CHECK(load_error(R"({"components": [{"id": "a", "ratings": {}, "cost": 1, "time": 1},
                                      {"id": "b", "ratings": {}, "cost": 1, "time": 1}]})",
                   small) == ErrorCode::TooManyComponents);
}

TEST_CASE("parse errors carry a location") {
  try {
    parse(R"({"components": [{"id": "a", "ratings": {"q": "high"}, "cost": 1, "time": 1}]})");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.subject() == "/components/0/ratings/q");
  }
}

TEST_CASE("ratings must cover the active leaves exactly") {
  const std::string text = R"({"components": [{"id": "a", "ratings": {"q1": 1, "q2": 2}, "cost": 1, "time": 1}]})";
  CatalogLoadOptions opts;
  opts.leaves = std::vector<std::string>{"q1", "q2"};
  CHECK_NOTHROW(parse(text, opts));
  opts.leaves = std::vector<std::string>{"q1"};
  CHECK(load_error(text, opts) == ErrorCode::UnknownCriterion);
  opts.leaves = std::vector<std::string>{"q1", "q2", "q3"};
  CHECK(load_error(text, opts) == ErrorCode::MissingRating);
}

TEST_CASE("functional filter keeps supersets in order") {
  std::vector<Component> cs{comp("A", {"auth", "log", "ui"}), comp("B", {"auth"}), comp("C", {"log", "auth"})};
  CHECK(ids(filter_functional(cs, {"auth", "log"})) == std::vector<std::string>{"A", "C"});
  CHECK(ids(filter_functional(cs, {})) == std::vector<std::string>{"A", "B", "C"});
  CHECK(filter_functional(cs, {"gpu"}).empty());
  // Matching is case sensitive.
  CHECK(filter_functional(cs, {"Auth"}).empty());
}

TEST_CASE("property: filter is idempotent and composes over tag unions") {
  std::mt19937_64 rng(3);
  const std::vector<std::string> tags{"a", "b", "c", "d", "e"};
  std::bernoulli_distribution coin(0.6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Component> cs;
    for (int i = 0; i < 8; ++i) {
      std::set<std::string> s;
      for (const auto& t : tags)
        if (coin(rng)) s.insert(t);
      cs.push_back(comp("c" + std::to_string(i), s));
    }
    std::set<std::string> s1, s2;
    for (const auto& t : tags) {
      if (coin(rng) && coin(rng)) s1.insert(t);
      if (coin(rng) && coin(rng)) s2.insert(t);
    }
    auto once = filter_functional(cs, s1);
    CHECK(ids(filter_functional(once, s1)) == ids(once));

    std::set<std::string> both = s1;
    both.insert(s2.begin(), s2.end());
    auto direct = ids(filter_functional(cs, both));
    CHECK(ids(filter_functional(filter_functional(cs, s1), s2)) == direct);
    CHECK(ids(filter_functional(filter_functional(cs, s2), s1)) == direct);
  }
}

TEST_CASE("property: load, serialize, load round-trips") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Catalog cat;
    cat.library_name = "lib" + std::to_string(trial);
    cat.scale_max = 7.5;
    cat.components = oracle::random_components(1 + trial % 6, {"x", "y", "z"}, cat.scale_max, rng);
    cat.components[0].services = {"svc", "other"};
    auto text = dump_document(catalog_to_json(cat));
    Catalog back = parse(text);
    CHECK(back == cat);
    CHECK(dump_document(catalog_to_json(back)) == text);
  }
  auto fixture = load_catalog(std::filesystem::path(oracle::fixture("catalog_five.json")));
  CHECK(parse(dump_document(catalog_to_json(fixture))) == fixture);
}
