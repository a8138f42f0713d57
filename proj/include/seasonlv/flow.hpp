#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "seasonlv/linalg.hpp"
#include "seasonlv/model.hpp"

namespace seasonlv {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  std::size_t max_steps = 200000;
  /// Record (t, x) at every accepted step.
  bool dense_output = false;

  /// Throws InvalidParams unless both tolerances lie in (0, 1e-2] and
  /// max_steps >= 1000.
  void validate() const;
};

struct TrajectorySample {
  double t = 0.0;
  Vec3 x{};
};

struct FlowResult {
  Vec3 end_state{};
  /// Integral of the trajectory over the integration window.
  std::optional<Vec3> hat;
  /// D_x of the end state.
  std::optional<Mat3> jacobian;
  std::size_t steps_taken = 0;
  std::size_t steps_rejected = 0;
  /// Sum over accepted steps of the embedded local error estimate of the
  /// state components (max norm, absolute units).
  double error_estimate = 0.0;
  std::vector<TrajectorySample> trajectory;
};

/// The bad-season map: x_i -> e^{-mu_i (1-phi) omega} x_i.
Vec3 linear_phase(const ModelParams& params, const Vec3& x);

/// Lotka-Volterra flow over [0, t]. The hat integral and the variational
/// matrix ride along in one augmented system so they share the step
/// sequence of the trajectory. Components that start at 0 stay exactly 0.
FlowResult lv_flow(const ModelParams& params, const Vec3& x, double t, const IntegratorConfig& config,
                   bool want_hat = false, bool want_jac = false);

/// One period of the seasonal system: the bad-season decay followed by
/// Lotka-Volterra growth for phi*omega. The Jacobian is W(phi omega, Lx) DL.
FlowResult poincare(const ModelParams& params, const Vec3& x, const IntegratorConfig& config,
                    bool want_hat = false, bool want_jac = false);

/// poincare(...).end_state
Vec3 poincare_point(const ModelParams& params, const Vec3& x, const IntegratorConfig& config);

}  // namespace seasonlv
