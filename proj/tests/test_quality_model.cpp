#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "comporank/error.hpp"
#include "comporank/json_io.hpp"
#include "comporank/quality_model.hpp"
#include "oracles.hpp"

using namespace comporank;

namespace {

PairwiseMatrix matrix(std::vector<std::vector<double>> e, std::string node = "root") {
  return PairwiseMatrix{std::move(node), {}, std::move(e)};
}

CriterionNode leaf(const std::string& id) { return CriterionNode{id, id, {}, std::nullopt}; }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("all-ones matrix gives uniform weights") {
  auto wv = derive_weights(matrix({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}));
  for (double w : wv.weights) CHECK(w == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(wv.lambda_max == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(wv.consistency_ratio == 0.0);
}

TEST_CASE("2x2 reciprocal matrix is exactly consistent") {
  auto wv = derive_weights(matrix({{1, 3}, {1.0 / 3, 1}}));
  CHECK(wv.weights[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(wv.weights[1] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(wv.lambda_max == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(wv.consistency_ratio == 0.0);
  // A w = 2 w
  CHECK(1 * wv.weights[0] + 3 * wv.weights[1] == doctest::Approx(2 * wv.weights[0]));
}

TEST_CASE("consistent 3x3 matrix recovers 4/7, 2/7, 1/7") {
  auto wv = derive_weights(matrix({{1, 2, 4}, {0.5, 1, 2}, {0.25, 0.5, 1}}));
  CHECK(wv.weights[0] == doctest::Approx(4.0 / 7).epsilon(1e-12));
  CHECK(wv.weights[1] == doctest::Approx(2.0 / 7).epsilon(1e-12));
  CHECK(wv.weights[2] == doctest::Approx(1.0 / 7).epsilon(1e-12));
  CHECK(wv.lambda_max == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(wv.consistency_ratio < 1e-9);
}

TEST_CASE("inconsistent 3x3 matrix matches the frozen eigen oracle") {
  // numpy.linalg.eig: lambda_max 4.00231280839334, CR 0.864062765856329,
  // weights (0.289428485106664, 0.379258605791104, 0.331312909102233).
  const oracle::Matrix a{{1, 2, 1.0 / 3}, {0.5, 1, 3}, {3, 1.0 / 3, 1}};
  auto wv = derive_weights(matrix(a));
  CHECK(wv.lambda_max == doctest::Approx(4.00231280839334).epsilon(1e-12));
  CHECK(wv.consistency_ratio == doctest::Approx(0.864062765856329).epsilon(1e-11));
  CHECK(wv.weights[0] == doctest::Approx(0.289428485106664).epsilon(1e-10));
  CHECK(wv.weights[1] == doctest::Approx(0.379258605791104).epsilon(1e-10));
  CHECK(wv.weights[2] == doctest::Approx(0.331312909102233).epsilon(1e-10));
  CHECK(std::abs(oracle::cubic_lambda_max(a) - wv.lambda_max) < 1e-9);
  CHECK_FALSE(check_consistency(wv).accepted);
}

TEST_CASE("check_consistency boundary is inclusive") {
  WeightVector wv;
  wv.consistency_ratio = 0.0;
  CHECK(check_consistency(wv, 0.10).accepted);
  wv.consistency_ratio = 0.25;
  CHECK_FALSE(check_consistency(wv, 0.10).accepted);
  CHECK(check_consistency(wv, 0.10).consistency_ratio == 0.25);
  wv.consistency_ratio = 0.10;
  CHECK(check_consistency(wv, 0.10).accepted);
}

TEST_CASE("matrix validation names the offending cell") {
  SUBCASE("non reciprocal") {
    try {
      derive_weights(matrix({{1, 3, 1}, {0.5, 1, 1}, {1, 1, 1}}, "usability"));
      FAIL("expected NonReciprocalMatrix");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonReciprocalMatrix);
      CHECK(e.subject() == "usability[1][0]");
    }
  }
  SUBCASE("out of scale") {
    try {
      derive_weights(matrix({{1, 12}, {1.0 / 12, 1}}, "n"));
      FAIL("expected OutOfScaleEntry");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OutOfScaleEntry);
      CHECK(e.subject() == "n[0][1]");
    }
  }
  SUBCASE("diagonal") {
    CHECK(code_of([] { derive_weights(matrix({{2, 1}, {1, 1}})); }) == ErrorCode::NonReciprocalMatrix);
  }
  SUBCASE("ragged") {
    CHECK(code_of([] { derive_weights(matrix({{1, 1}, {1}})); }) == ErrorCode::DimensionMismatch);
  }
  SUBCASE("too small") { CHECK(code_of([] { derive_weights(matrix({{1}})); }) == ErrorCode::DimensionMismatch); }
  SUBCASE("order above the RI table") {
    oracle::Matrix big(11, std::vector<double>(11, 1.0));
    CHECK(code_of([&] { derive_weights(matrix(big)); }) == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("random index table can be replaced") {
  auto ri = RandomIndex::parse("0,0,1.16");
  auto wv = derive_weights(matrix({{1, 2, 1.0 / 3}, {0.5, 1, 3}, {3, 1.0 / 3, 1}}), ri);
  CHECK(wv.consistency_ratio == doctest::Approx(0.864062765856329 * 0.58 / 1.16).epsilon(1e-10));
  CHECK_THROWS_AS(RandomIndex::parse("0,,1"), Error);
  CHECK_THROWS_AS(RandomIndex::parse("0,-1"), Error);
  oracle::Matrix four(4, std::vector<double>(4, 1.0));
  CHECK(code_of([&] { derive_weights(matrix(four), ri); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("product rule over a two-level tree") {
  CriterionNode root{"root", "root", {}, std::nullopt};
  CriterionNode a{"a", "a", {leaf("a1"), leaf("a2")}, std::nullopt};
  root.children = {a, leaf("b")};
  std::map<std::string, PairwiseMatrix> ms;
  ms["root"] = matrix({{1, 3}, {1.0 / 3, 1}}, "root");
  ms["a"] = matrix({{1, 1}, {1, 1}}, "a");
  auto lw = build_quality_weights(root, ms);
  REQUIRE(lw.size() == 3);
  CHECK(lw[0].id == "a1");
  CHECK(lw[0].weight == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(lw[1].weight == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(lw[2].id == "b");
  CHECK(lw[2].weight == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("flat tree of five leaves with all-ones matrix") {
  CriterionNode root{"root", "root", {}, std::nullopt};
  for (int k = 0; k < 5; ++k) root.children.push_back(leaf("l" + std::to_string(k)));
  std::map<std::string, PairwiseMatrix> ms;
  ms["root"] = matrix(oracle::Matrix(5, std::vector<double>(5, 1.0)));
  for (const auto& l : build_quality_weights(root, ms)) CHECK(l.weight == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("directly supplied weights and single children") {
  CriterionNode root{"root", "root", {}, std::nullopt};
  CriterionNode a{"a", "a", {leaf("a1")}, 0.6};
  CriterionNode b = leaf("b");
  b.local_weight = 0.4;
  root.children = {a, b};
  auto lw = build_quality_weights(root, {});
  CHECK(lw[0].weight == doctest::Approx(0.6));
  CHECK(lw[1].weight == doctest::Approx(0.4));

  root.children[1].local_weight = 0.3;
  CHECK(code_of([&] { build_quality_weights(root, {}); }) == ErrorCode::MissingWeights);
  root.children[1].local_weight.reset();
  CHECK(code_of([&] { build_quality_weights(root, {}); }) == ErrorCode::MissingWeights);
}

TEST_CASE("tree structure errors") {
  CriterionNode root{"root", "root", {leaf("x"), leaf("x")}, std::nullopt};
  std::map<std::string, PairwiseMatrix> ms;
  ms["root"] = matrix({{1, 1}, {1, 1}});
  CHECK(code_of([&] { build_quality_weights(root, ms); }) == ErrorCode::DuplicateId);

  root.children = {leaf("x"), leaf("y"), leaf("z")};
  CHECK(code_of([&] { build_quality_weights(root, ms); }) == ErrorCode::DimensionMismatch);

  ms["ghost"] = matrix({{1, 1}, {1, 1}}, "ghost");
  CHECK(code_of([&] { build_quality_weights(root, ms); }) == ErrorCode::UnknownCriterion);
}

TEST_CASE("inconsistent node is reported by id") {
  CriterionNode root{"root", "root", {leaf("a"), leaf("b"), leaf("c")}, std::nullopt};
  std::map<std::string, PairwiseMatrix> ms;
  ms["root"] = matrix({{1, 2, 1.0 / 3}, {0.5, 1, 3}, {3, 1.0 / 3, 1}});
  try {
    build_quality_weights(root, ms);
    FAIL("expected InconsistentMatrix");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InconsistentMatrix);
    CHECK(e.subject() == "root");
  }
  // A loose enough threshold accepts it.
  CHECK(build_quality_weights(root, ms, 0.9).size() == 3);
}

TEST_CASE("default criteria tree matches hand-multiplied oracle weights") {
  // Products of numpy eigenvector weights along each root path.
  const std::map<std::string, double> expected{
      {"suitability", 0.226319598382869},    {"accuracy", 0.0801668201985075},
      {"interoperability", 0.0425949792240328}, {"maturity", 0.054735246160846},
      {"fault_tolerance", 0.0994605429526096}, {"recoverability", 0.0301219667955754},
      {"understandability", 0.0244913336168744}, {"learnability", 0.0244913336168744},
      {"operability", 0.0489826672337489},   {"confidentiality", 0.122878503939354},
      {"integrity", 0.061439251969677},      {"analyzability", 0.0301219667955754},
      {"changeability", 0.0994605429526097}, {"testability", 0.054735246160846}};
  auto cfg = load_criteria(oracle::data_file("criteria_default.json"));
  auto qa = assess_quality_model(cfg);
  CHECK(qa.consistent());
  REQUIRE(qa.leaves.size() == expected.size());
  double sum = 0.0;
  for (const auto& l : qa.leaves) {
    CHECK(l.weight == doctest::Approx(expected.at(l.id)).epsilon(1e-10));
    sum += l.weight;
  }
  CHECK(std::abs(sum - 1.0) < 1e-9);
}

TEST_CASE("property: consistent matrices are recovered exactly") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 9;
    auto w = oracle::random_weights(n, rng);
    auto wv = derive_weights(matrix(oracle::consistent_matrix(w)));
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(wv.weights[i] - w[i]) < 1e-9);
    CHECK(wv.consistency_ratio < 1e-9);
  }
}

TEST_CASE("property: lambda_max is at least n and weights are a distribution") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 9;
    auto wv = derive_weights(matrix(oracle::random_reciprocal(n, rng)));
    CHECK(wv.lambda_max >= static_cast<double>(n) - 1e-6);
    CHECK(std::abs(std::accumulate(wv.weights.begin(), wv.weights.end(), 0.0) - 1.0) < 1e-9);
    CHECK(*std::min_element(wv.weights.begin(), wv.weights.end()) > 0.0);
  }
}

TEST_CASE("property: permuting the matrix permutes the weights") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + trial % 6;
    auto a = oracle::random_reciprocal(n, rng);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    oracle::Matrix b(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b[i][j] = a[perm[i]][perm[j]];
    auto wa = derive_weights(matrix(a));
    auto wb = derive_weights(matrix(b));
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(wb.weights[i] - wa.weights[perm[i]]) < 1e-9);
  }
}

TEST_CASE("property: sibling order does not change leaf weights") {
  auto cfg = load_criteria(oracle::data_file("criteria_default.json"));
  auto base = assess_quality_model(cfg).leaves;

  // Reverse the characteristics and pin the root matrix to ids in the
  // original order.
  CriteriaConfig shuffled = cfg;
  std::vector<std::string> original_ids;
  for (const auto& c : cfg.tree.children) original_ids.push_back(c.id);
  std::reverse(shuffled.tree.children.begin(), shuffled.tree.children.end());
  shuffled.matrices["quality"].item_ids = original_ids;

  auto moved = assess_quality_model(shuffled).leaves;
  std::map<std::string, double> a, b;
  for (const auto& l : base) a[l.id] = l.weight;
  for (const auto& l : moved) b[l.id] = l.weight;
  REQUIRE(a.size() == b.size());
  for (const auto& [id, w] : a) CHECK(std::abs(b.at(id) - w) < 1e-12);
}

TEST_CASE("criteria JSON accepts the object matrix form") {
  auto cfg = parse_criteria(R"({
    "tree": {"id": "q", "children": [{"id": "a"}, {"id": "b"}]},
    "matrices": {"q": {"items": ["b", "a"], "entries": [[1, 3], [0.333333333333333333, 1]]}}
  })");
  auto lw = build_quality_weights(cfg.tree, cfg.matrices);
  CHECK(lw[0].id == "a");
  CHECK(lw[0].weight == doctest::Approx(0.25));
  CHECK(lw[1].weight == doctest::Approx(0.75));
  CHECK_THROWS_AS(parse_criteria("{\"tree\": 3}"), Error);
  CHECK_THROWS_AS(parse_criteria("{not json"), Error);
}
