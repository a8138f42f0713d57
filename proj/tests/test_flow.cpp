#include <cmath>
#include <random>

#include "doctest.h"
#include "seasonlv/fixedpoints.hpp"
#include "seasonlv/flow.hpp"
#include "testing.hpp"

using namespace seasonlv;

namespace {

IntegratorConfig tight() {
  IntegratorConfig c;
  c.rel_tol = 1e-12;
  c.abs_tol = 1e-12;
  return c;
}

Mat3 central_jacobian(const ModelParams& p, const Vec3& x, const IntegratorConfig& c) {
  Mat3 j{};
  for (int col = 0; col < 3; ++col) {
    const double h = 1e-6 * (1.0 + std::abs(x[col]));
    Vec3 up = x, dn = x;
    up[col] += h;
    dn[col] -= h;
    const Vec3 fu = poincare_point(p, up, c), fd = poincare_point(p, dn, c);
    for (int row = 0; row < 3; ++row) j[row][col] = (fu[row] - fd[row]) / (2.0 * h);
  }
  return j;
}

}  // namespace

TEST_CASE("single species follows the logistic closed form") {
  ModelParams p = testing::example("class27");
  // x' = x (0.3 - 0.2 x), x(0) = 0.1, t = 3
  const FlowResult f = lv_flow(p, Vec3{0.1, 0.0, 0.0}, 3.0, tight(), true);
  CHECK(testing::rel_err(f.end_state[0], 0.224149066160325861524670051045) < 1e-10);
  CHECK(f.end_state[1] == 0.0);
  CHECK(f.end_state[2] == 0.0);
  REQUIRE(f.hat);
  // integral of the logistic solution: log(1 + x0 a (e^{bt} - 1) / b) / a
  CHECK(testing::rel_err((*f.hat)[0], 0.464294407663069249790674811932) < 1e-9);
}

TEST_CASE("exact zeros stay zero") {
  const ModelParams p = testing::example("class31");
  const Vec3 y = poincare_point(p, Vec3{0.0, 0.4, 0.9}, {});
  CHECK(y[0] == 0.0);
  CHECK(y[1] > 0.0);
  CHECK(y[2] > 0.0);
}

TEST_CASE("bad season is a pure decay") {
  const ModelParams p = testing::example("class31");
  const Vec3 y = linear_phase(p, Vec3{1.0, 2.0, 3.0});
  for (int i = 0; i < 3; ++i)
    CHECK(y[i] == doctest::Approx((i + 1.0) * std::exp(-p.mu[i] * (1.0 - p.phi) * p.omega)));
}

TEST_CASE("variational Jacobian matches central differences") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  const IntegratorConfig c = tight();
  for (const char* name : {"class26", "class27", "class29", "class31"}) {
    const ModelParams p = testing::example(name);
    for (int trial = 0; trial < 4; ++trial) {
      const Vec3 x{u(rng), u(rng), u(rng)};
      const FlowResult f = poincare(p, x, c, false, true);
      REQUIRE(f.jacobian);
      const Mat3 fd = central_jacobian(p, x, c);
      const double scale = max_abs(fd);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(std::abs((*f.jacobian)[i][j] - fd[i][j]) <= 1e-5 * scale);
    }
  }
}

TEST_CASE("Liouville determinant matches det of the Jacobian") {
  const ModelParams p = testing::example("class29");
  const FlowResult f = poincare(p, Vec3{0.5, 0.4, 2.0}, tight(), true, true);
  CHECK(testing::rel_err(liouville_det(p, *f.hat), det3(*f.jacobian)) < 1e-7);
}

TEST_CASE("integrator configuration is validated") {
  IntegratorConfig c;
  c.rel_tol = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidParams);
  c.rel_tol = 1e-8;
  c.max_steps = 10;
  CHECK_THROWS_AS(c.validate(), InvalidParams);
}

TEST_CASE("step budget is enforced") {
  IntegratorConfig c;
  c.rel_tol = c.abs_tol = 1e-13;
  c.max_steps = 1000;
  ModelParams p = testing::example("class26");
  p.omega = 1000.0;
  CHECK_THROWS_AS(poincare_point(p, Vec3{1, 1, 1}, c), StepBudgetExceeded);
}
