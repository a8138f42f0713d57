#include <random>
#include <set>

#include "doctest.h"
#include "seasonlv/classify.hpp"
#include "seasonlv/sampling.hpp"
#include "testing.hpp"

using namespace seasonlv;

TEST_CASE("enumeration yields 33 classes") {
  CHECK(enumerate_class_count() == 33);
  std::set<SignPattern> seen;
  for (const auto& e : class_table()) {
    CHECK(canonical_form(e.canonical).first == e.canonical);
    CHECK(realize(e.canonical).has_value());
    seen.insert(e.canonical);
  }
  CHECK(seen.size() == 33);
}

TEST_CASE("table ranges follow the interior kind") {
  for (const auto& e : class_table()) {
    if (e.id <= 18) CHECK(e.interior == InteriorKind::None);
    else if (e.id <= 25) CHECK(e.interior == InteriorKind::NegativeDet);
    else CHECK(e.interior == InteriorKind::PositiveDet);
  }
}

TEST_CASE("examples land in their classes") {
  CHECK(classify(testing::example("class26")).id == 26);
  CHECK(classify(testing::example("class27")).id == 27);
  CHECK(classify(testing::example("class29")).id == 29);
  CHECK(classify(testing::example("class31")).id == 31);
}

TEST_CASE("class-27 boundary: three axial saddles and no planar points") {
  const auto sr = signature(testing::example("class27"));
  REQUIRE(sr.signature);
  for (int i = 0; i < 3; ++i) {
    CHECK(sr.signature->axial_type(i) == Stability::Saddle);
    CHECK_FALSE(sr.signature->planar_exists(i));
  }
}

TEST_CASE("classification is invariant under relabeling") {
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const ModelParams p = sample_admissible(rng);
    const auto sr = signature(p);
    if (!sr.signature) continue;
    const int id = classify(p).id;
    for (const auto& perm : kPermutations) {
      const ModelParams q = testing::permute(p, perm);
      CHECK(classify(q).id == id);
      CHECK(signature(q).signature->pattern == sr.signature->pattern.permuted(perm));
    }
    ++checked;
  }
  CHECK(checked > 250);
}

TEST_CASE("canonical permutation maps the instance onto the table entry") {
  const ModelParams p = testing::example("class31");
  const ClassId c = classify(p);
  const auto sr = signature(p);
  CHECK(sr.signature->pattern.permuted(c.permutation) == class_table()[c.id - 1].canonical);
}

TEST_CASE("unrealizable patterns are rejected") {
  SignPattern s;
  s.gamma = {1, 1, 1, 1, 1, 1};
  s.transverse = {0, 0, 0};
  CHECK_FALSE(realize(s));
  BoundarySignature sig{s};
  CHECK_THROWS_AS(canonical_class(sig, 1), UnknownSignature);
}

TEST_CASE("degenerate and inadmissible instances") {
  ModelParams p = testing::example("class26");
  // a_22 r_1 - a_12 r_2 = 0 when a_22 = a_12 and r_1 = r_2
  p.a[1][1] = p.a[0][1];
  const auto sr = signature(p);
  CHECK_FALSE(sr.signature);
  CHECK(sr.degenerate_flags.size() >= 1);
  CHECK_THROWS_AS(classify(p), Degenerate);
  CHECK_THROWS_AS(classify(testing::example("inadmissible")), Inadmissible);
}

TEST_CASE("positive expectation by class range") {
  CHECK(expected_positive_fp(1) == PositiveExpectation::None);
  CHECK(expected_positive_fp(18) == PositiveExpectation::None);
  CHECK(expected_positive_fp(19) == PositiveExpectation::AtLeastOne);
  CHECK(expected_positive_fp(33) == PositiveExpectation::AtLeastOne);
  CHECK_THROWS_AS(expected_positive_fp(34), std::out_of_range);
}

TEST_CASE("heteroclinic theta") {
  const ModelParams p = testing::example("class27");
  CHECK(std::abs(heteroclinic_theta_value(p)) < 1e-12);
  ModelParams q = p;
  q.a[1][0] = 0.15;
  // w_ij = r_j - a_ji r_i / a_ii with r = 0.2 and a_ii = 0.2
  const double r = 0.2;
  auto w = [&](int i, int j) { return r - q.a[j][i] * r / q.a[i][i]; };
  const double want = w(0, 1) * w(1, 2) * w(2, 0) + w(1, 0) * w(0, 2) * w(2, 1);
  CHECK(heteroclinic_theta_value(q) == doctest::Approx(want).epsilon(1e-12));
  const ThetaReport rep = heteroclinic_theta(q);
  CHECK(rep.theta < 0.0);
  CHECK(rep.verdict == ThetaVerdict::Attracts);
  CHECK_THROWS_AS(heteroclinic_theta(testing::example("class26")), WrongClass);
}

TEST_CASE("det A sign constraint on sampled instances") {
  std::mt19937_64 rng(17);
  std::set<int> seen;
  for (int trial = 0; trial < 3000; ++trial) {
    const ModelParams p = sample_admissible(rng);
    const auto sr = signature(p);
    if (!sr.signature) continue;
    const ClassId c = classify(p);
    seen.insert(c.id);
    if (c.id >= 19 && c.id <= 25) CHECK(c.det_a_sign < 0);
    if (c.id >= 26) CHECK(c.det_a_sign > 0);
  }
  CHECK(seen.size() >= 25);
}
