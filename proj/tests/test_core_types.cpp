#include <doctest.h>

#include <stdexcept>

#include "distlearn/core_types.hpp"

using namespace distlearn;

namespace {

LabeledPoint pt(double x, double y, int label) {
  LabeledPoint p;
  p.coords = {x, y};
  p.label = label;
  return p;
}

LinearClassifier clf(double wx, double wy, double b) {
  LinearClassifier c;
  c.normal = {wx, wy};
  c.offset = b;
  return c;
}

}  // namespace

TEST_SUITE("core_types") {

TEST_CASE("classify maps the boundary to +1") {
  const LinearClassifier c = clf(1.0, 0.0, 0.0);
  CHECK(classify(c, pt(0.0, 5.0, 1)) == 1);
  CHECK(classify(c, pt(0.3, -1.0, 1)) == 1);
  CHECK(classify(c, pt(-0.3, 2.0, 1)) == -1);
}

TEST_CASE("ensemble majority with exact ties predicting -1") {
  MajorityEnsemble e;
  e.members.push_back(clf(1.0, 0.0, 0.0));
  e.members.push_back(clf(-1.0, 0.0, -1.0));
  // At (2, 0): votes +1 and -1, a tie.
  CHECK(ensemble_classify(e, pt(2.0, 0.0, 1)) == -1);
  e.members.push_back(clf(1.0, 0.0, 0.0));
  CHECK(ensemble_classify(e, pt(2.0, 0.0, 1)) == 1);
}

TEST_CASE("empty ensemble refuses to vote") {
  const MajorityEnsemble e;
  CHECK_THROWS_AS(ensemble_classify(e, pt(0.0, 0.0, 1)), std::invalid_argument);
}

TEST_CASE("weighted error sums exactly the weights of the wrong points") {
  WeightedDataset ds;
  ds.dimension = 2;
  ds.push_back(pt(1.0, 0.0, 1), 1.0);    // right
  ds.push_back(pt(-1.0, 0.0, 1), 2.0);   // wrong
  ds.push_back(pt(-2.0, 0.0, -1), 3.0);  // right
  ds.push_back(pt(3.0, 0.0, -1), 2.0);   // wrong
  const LinearClassifier c = clf(1.0, 0.0, 0.0);
  CHECK(weighted_error(c, ds) == 0.5);  // (2+2)/8, exact in binary
}

TEST_CASE("weighted error needs positive total weight") {
  WeightedDataset ds;
  ds.dimension = 2;
  ds.push_back(pt(1.0, 0.0, 1), 0.0);
  CHECK_THROWS_AS(weighted_error(clf(1.0, 0.0, 0.0), ds), std::invalid_argument);
}

TEST_CASE("ensemble accuracy counts unweighted points") {
  WeightedDataset ds;
  ds.dimension = 2;
  ds.push_back(pt(1.0, 0.0, 1), 9.0);
  ds.push_back(pt(-1.0, 0.0, -1), 1.0);
  ds.push_back(pt(-2.0, 0.0, 1), 5.0);  // misclassified
  ds.push_back(pt(2.0, 0.0, 1), 5.0);
  MajorityEnsemble e;
  e.members.push_back(clf(1.0, 0.0, 0.0));
  CHECK(ensemble_accuracy(e, ds) == 0.75);
}

TEST_CASE("renormalize scales the mean weight back to one once past the threshold") {
  WeightedDataset ds;
  ds.dimension = 2;
  ds.push_back(pt(0.0, 0.0, 1), 2.0);
  ds.push_back(pt(0.0, 1.0, 1), 4.0);
  ds.push_back(pt(1.0, 0.0, 1), 6.0);
  const double scale = renormalize_to_mean_one(ds, 10.0);
  CHECK(scale == 0.25);
  CHECK(ds.weights[0] == 0.5);
  CHECK(ds.weights[1] == 1.0);
  CHECK(ds.weights[2] == 1.5);
  CHECK(ds.total_weight() == 3.0);
}

TEST_CASE("renormalize leaves small totals alone") {
  WeightedDataset ds;
  ds.dimension = 1;
  LabeledPoint p;
  p.coords = {1.0};
  p.label = 1;
  ds.push_back(p, 5.0);
  CHECK(renormalize_to_mean_one(ds, 1e300) == 1.0);
  CHECK(ds.weights[0] == 5.0);
}

TEST_CASE("validation rejects malformed datasets") {
  WeightedDataset ds;
  ds.dimension = 2;
  ds.push_back(pt(1.0, 0.0, 1), 1.0);

  SUBCASE("coordinate count must match the dimension") {
    LabeledPoint p;
    p.coords = {1.0, 2.0, 3.0};
    p.label = 1;
    ds.points.push_back(p);
    ds.weights.push_back(1.0);
    CHECK_THROWS_AS(ds.validate(), std::invalid_argument);
  }
  SUBCASE("labels are plus or minus one") {
    ds.points[0].label = 0;
    CHECK_THROWS_AS(ds.validate(), std::invalid_argument);
  }
  SUBCASE("weights are nonnegative") {
    ds.weights[0] = -0.5;
    CHECK_THROWS_AS(ds.validate(), std::invalid_argument);
  }
  SUBCASE("weights align with points") {
    ds.weights.push_back(1.0);
    CHECK_THROWS_AS(ds.validate(), std::invalid_argument);
  }
  SUBCASE("well formed data passes") { CHECK_NOTHROW(ds.validate()); }
}

TEST_CASE("make_dataset starts every weight at one") {
  const auto ds = make_dataset({pt(1.0, 2.0, 1), pt(3.0, 4.0, -1)}, 2);
  REQUIRE(ds.size() == 2);
  CHECK(ds.weights[0] == 1.0);
  CHECK(ds.weights[1] == 1.0);
  CHECK(ds.dimension == 2);
}

TEST_CASE("dot product") {
  CHECK(dot({1.0, 2.0, 3.0}, {4.0, -5.0, 6.0}) == 4.0 - 10.0 + 18.0);
}

}  // TEST_SUITE
