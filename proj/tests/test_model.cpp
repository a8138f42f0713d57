#include <cmath>

#include "doctest.h"
#include "seasonlv/model.hpp"
#include "testing.hpp"

using namespace seasonlv;

TEST_CASE("net growth and decay factors") {
  const ModelParams p = testing::example("class27");
  const Vec3 r = p.net_growth();
  for (int i = 0; i < 3; ++i) {
    CHECK(r[i] == doctest::Approx(0.3 * 3.0 - 0.1 * 7.0).epsilon(1e-14));
    CHECK(p.decay_factor(i) == doctest::Approx(std::exp(-0.7)).epsilon(1e-14));
  }
}

TEST_CASE("validate reports every bad constant") {
  ModelParams p = testing::example("class26");
  CHECK(validate(p).empty());
  p.a[1][2] = -0.1;
  p.phi = 1.2;
  p.mu[0] = std::nan("");
  const auto v = validate(p);
  REQUIRE(v.size() == 3);
  CHECK_THROWS_AS(derive(p), InvalidParams);
}

TEST_CASE("derived quantities of the class-26 example") {
  const DerivedParams d = derive(testing::example("class26"));
  CHECK(d.admissible);
  CHECK(d.boundary_stable);
  // r = 1 for every species, so gamma_ij = a_ii - a_ji
  CHECK(d.gamma[0][1] == doctest::Approx(0.3 - 0.1));
  CHECK(d.gamma[1][0] == doctest::Approx(0.2 - 0.6));
  CHECK(d.gamma[2][1] == doctest::Approx(0.25 - 0.3));
  CHECK(d.det_a == doctest::Approx(0.0075));
  // beta_ij = (a_jj r_i - a_ij r_j) / (a_ii a_jj - a_ij a_ji) for the (1,3) pair
  REQUIRE(d.beta[0][2]);
  CHECK(*d.beta[0][2] == doctest::Approx((0.25 - 0.15) / (0.3 * 0.25 - 0.15 * 0.2)));
  CHECK_FALSE(d.beta[0][1]);
  CHECK(d.transverse_sign(0) == 1);
  CHECK(d.transverse_sign(1) == -1);
  CHECK(d.transverse_sign(2) == 0);
}

TEST_CASE("derive is deterministic") {
  const ModelParams p = testing::example("class31");
  const DerivedParams a = derive(p), b = derive(p);
  CHECK(a.det_a == b.det_a);
  CHECK(a.gamma == b.gamma);
}

TEST_CASE("margin sign") {
  CHECK(margin_sign(1.0, 1.0) == 1);
  CHECK(margin_sign(-1.0, 1.0) == -1);
  CHECK(margin_sign(1e-12, 1.0) == 0);
  CHECK(margin_sign(1e-12, 1e-6) == 1);
}

TEST_CASE("StateVec rejects negative or non-finite entries") {
  CHECK_NOTHROW(StateVec(0.0, 1.0, 2.0));
  CHECK_THROWS_AS(StateVec(-1e-3, 1.0, 2.0), InvalidState);
  CHECK_THROWS_AS(StateVec(INFINITY, 1.0, 2.0), InvalidState);
}
