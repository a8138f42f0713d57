#include <cmath>

#include "doctest.h"
#include "seasonlv/fixedpoints.hpp"
#include "testing.hpp"

using namespace seasonlv;

namespace {

IntegratorConfig tight() {
  IntegratorConfig c;
  c.rel_tol = 1e-13;
  c.abs_tol = 1e-13;
  return c;
}

}  // namespace

TEST_CASE("axial point of the class-27 example") {
  const ModelParams p = testing::example("class27");
  // b (e^r - 1) / (a c (e^{b phi omega} - 1)) evaluated in 30-digit arithmetic
  const double want = 0.458190038386261661497702103786;
  for (int i = 0; i < 3; ++i) {
    CHECK(testing::rel_err(axial_closed_form(p, i), want) < 1e-14);
    CHECK(testing::rel_err(axial_fixed_point_newton(p, i, tight()), want) < 1e-10);
  }
}

TEST_CASE("axial point is a fixed point of the map") {
  const ModelParams p = testing::example("class31");
  for (int i = 0; i < 3; ++i) {
    const FixedPointRecord q = axial_fixed_point(p, i, tight());
    CHECK(q.residual <= 1e-10 * (1.0 + q.coords[i]));
    CHECK(testing::rel_err(q.hat[i], p.net_growth()[i] / p.a[i][i]) < 1e-9);
  }
}

TEST_CASE("axial point needs positive growth") {
  ModelParams p = testing::example("class27");
  p.mu[0] = 1.0;
  CHECK_THROWS_AS(axial_closed_form(p, 0), Inadmissible);
}

TEST_CASE("planar points carry beta as their hat integral") {
  const ModelParams p = testing::example("class26");
  const DerivedParams d = derive(p);
  for (int k = 0; k < 3; ++k) {
    const auto v = planar_fixed_point(p, k, tight());
    const auto [i, j] = others(k);
    CHECK(v.has_value() == d.beta[i][j].has_value());
    if (!v) continue;
    CHECK(v->coords[k] == 0.0);
    CHECK(v->coords[i] > 0.0);
    CHECK(v->coords[j] > 0.0);
    CHECK(testing::rel_err(v->hat[i], *d.beta[i][j]) < 1e-8);
    CHECK(testing::rel_err(v->hat[j], *d.beta[j][i]) < 1e-8);
  }
}

TEST_CASE("transverse eigenvalue equals the Jacobian diagonal on faces") {
  const ModelParams p = testing::example("class29");
  const FixedPointInventory inv = fixed_point_inventory(p, tight());
  for (const auto& fp : inv.all()) {
    if (fp.kind == FixedPointKind::Positive) continue;
    for (int k = 0; k < 3; ++k) {
      if (fp.support[k]) continue;
      CHECK(testing::rel_err(fp.jacobian[k][k], transverse_eigenvalue(p, fp.hat, k)) < 1e-6);
    }
  }
}

TEST_CASE("positive point solves A hat = r with interior spectral bounds") {
  const ModelParams p = testing::example("class29");
  const PositiveSearchResult res = positive_fixed_points(p, {});
  REQUIRE(!res.roots.empty());
  const auto hat = solve3(p.a, p.net_growth());
  REQUIRE(hat);
  for (const auto& fp : res.roots) {
    for (int i = 0; i < 3; ++i) CHECK(testing::rel_err(fp.hat[i], (*hat)[i]) < 1e-7);
    const FixedPointRecord s = stability_and_index(p, fp);
    CHECK(s.det_jacobian > 0.0);
    CHECK(s.det_jacobian < 1.0);
    CHECK(std::abs(s.eigenvalues[0].imag()) == 0.0);
    CHECK(s.eigenvalues[0].real() > 0.0);
    CHECK(s.eigenvalues[0].real() < 1.0);
  }
}

TEST_CASE("class-27 inventory: three axial saddles, no planar points") {
  const FixedPointInventory inv = fixed_point_inventory(testing::example("class27"), {});
  for (const auto& q : inv.axial) {
    CHECK(q.stability == Stability::Saddle);
    REQUIRE(q.index);
    CHECK(*q.index == -1);
  }
  for (const auto& v : inv.planar) CHECK_FALSE(v);
  CHECK(inv.positive.roots.size() >= 1);
  CHECK(inv.trivial.stability == Stability::Repeller);
}

TEST_CASE("class-26 inventory: v1 and v2 present, v3 absent") {
  const FixedPointInventory inv = fixed_point_inventory(testing::example("class26"), {});
  CHECK(inv.planar[0]);
  CHECK(inv.planar[1]);
  CHECK_FALSE(inv.planar[2]);
}

TEST_CASE("index formula on the hyperbolic examples") {
  for (const char* name : {"class29", "class31"}) {
    const IndexReport rep = verify_index_formula(testing::example(name), {});
    CHECK(rep.lhs == 1);
    CHECK(rep.holds);
  }
}

TEST_CASE("non-hyperbolic interior points are reported as degenerate") {
  CHECK_THROWS_AS(verify_index_formula(testing::example("class26"), {}), Degenerate);
}

TEST_CASE("relabeling species permutes the fixed points") {
  const ModelParams p = testing::example("class29");
  const std::array<int, 3> perm{2, 0, 1};
  const FixedPointInventory a = fixed_point_inventory(p, {});
  const FixedPointInventory b = fixed_point_inventory(testing::permute(p, perm), {});
  REQUIRE(a.positive.roots.size() == b.positive.roots.size());
  const Vec3 want = testing::permute(a.positive.roots[0].coords, perm);
  for (int i = 0; i < 3; ++i) CHECK(testing::rel_err(b.positive.roots[0].coords[i], want[i]) < 1e-8);
  for (int i = 0; i < 3; ++i) CHECK(a.axial[i].stability == b.axial[perm[i]].stability);
}

TEST_CASE("inventory of an inadmissible instance throws") {
  CHECK_THROWS_AS(fixed_point_inventory(testing::example("inadmissible"), {}), Inadmissible);
}
