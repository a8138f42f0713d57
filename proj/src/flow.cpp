#include "seasonlv/flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace seasonlv {
namespace {

constexpr int kMaxDim = 15;
using State = std::array<double, kMaxDim>;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

// PI controller constants (Hairer, Norsett & Wanner).
constexpr double kSafety = 0.9;
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - kBeta * 0.75;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 10.0;

class AugmentedSystem {
 public:
  AugmentedSystem(const ModelParams& p, const Vec3& x0, bool hat, bool jac)
      : a_(p.a), b_(p.b), hat_(hat), jac_(jac), dim_(3 + (hat ? 3 : 0) + (jac ? 9 : 0)) {
    for (int i = 0; i < 3; ++i) pinned_[i] = x0[i] == 0.0;
  }

  bool pinned(int i) const { return pinned_[i]; }

  /// W from the stored components; pinned diagonal entries are kept as logs.
  Mat3 unpack_w(const State& y) const {
    const int off = jac_offset();
    Mat3 w{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) w[i][j] = y[off + 3 * i + j];
    for (int k = 0; k < 3; ++k)
      if (pinned_[k]) w[k][k] = std::exp(w[k][k]);
    return w;
  }

  int dim() const { return dim_; }

  void operator()(const State& y, State& dy) const {
    Vec3 g{};
    for (int i = 0; i < 3; ++i)
      g[i] = b_[i] - (a_[i][0] * y[0] + a_[i][1] * y[1] + a_[i][2] * y[2]);
    for (int i = 0; i < 3; ++i) dy[i] = y[i] * g[i];
    int off = 3;
    if (hat_) {
      for (int i = 0; i < 3; ++i) dy[off + i] = y[i];
      off += 3;
    }
    if (jac_) {
      // U = Df(x): U_ij = -x_i a_ij, U_ii = g_i - x_i a_ii
      Mat3 u{};
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) u[i][j] = -y[i] * a_[i][j];
        u[i][i] += g[i];
      }
      const Mat3 w = unpack_w(y);
      for (int i = 0; i < 3; ++i) {
        if (pinned_[i]) {
          // Row i of W is diag-only on the face x_i = 0; its diagonal decays or
          // grows exponentially, so it is carried as a logarithm.
          for (int j = 0; j < 3; ++j) dy[off + 3 * i + j] = 0.0;
          dy[off + 4 * i] = g[i];
          continue;
        }
        for (int j = 0; j < 3; ++j)
          dy[off + 3 * i + j] = u[i][0] * w[0][j] + u[i][1] * w[1][j] + u[i][2] * w[2][j];
      }
    }
  }

  int jac_offset() const { return hat_ ? 6 : 3; }

 private:
  Mat3 a_;
  Vec3 b_;
  bool hat_;
  bool jac_;
  int dim_;
  std::array<bool, 3> pinned_{};
};

double scaled_rms(const State& v, const State& y, const IntegratorConfig& cfg, int n) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y[i]);
    acc += (v[i] / sc) * (v[i] / sc);
  }
  return std::sqrt(acc / n);
}

double initial_step(const AugmentedSystem& sys, const State& y0, const State& f0, double t_end,
                    const IntegratorConfig& cfg) {
  const int n = sys.dim();
  const double d0 = scaled_rms(y0, y0, cfg, n);
  const double d1 = scaled_rms(f0, y0, cfg, n);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, t_end);
  State y1{}, f1{};
  for (int i = 0; i < n; ++i) y1[i] = y0[i] + h0 * f0[i];
  sys(y1, f1);
  State df{};
  for (int i = 0; i < n; ++i) df[i] = f1[i] - f0[i];
  const double d2 = scaled_rms(df, y0, cfg, n) / h0;
  const double dmax = std::max(d1, d2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
  return std::min({100.0 * h0, h1, t_end});
}

void check_input(const Vec3& x) {
  for (double v : x) {
    if (!std::isfinite(v)) throw InvalidState("initial state has a non-finite component");
    if (v < 0.0) throw InvalidState("initial state has a negative component");
  }
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) throw InvalidParams("rel_tol must lie in (0, 1e-2]");
  if (!(abs_tol > 0.0 && abs_tol <= 1e-2)) throw InvalidParams("abs_tol must lie in (0, 1e-2]");
  if (max_steps < 1000) throw InvalidParams("max_steps must be at least 1000");
}

Vec3 linear_phase(const ModelParams& params, const Vec3& x) {
  return {params.decay_factor(0) * x[0], params.decay_factor(1) * x[1], params.decay_factor(2) * x[2]};
}

FlowResult lv_flow(const ModelParams& params, const Vec3& x, double t, const IntegratorConfig& config,
                   bool want_hat, bool want_jac) {
  check_input(x);
  config.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidParams("integration time must be finite and >= 0");

  const AugmentedSystem sys(params, x, want_hat, want_jac);
  const int n = sys.dim();
  State y{};
  for (int i = 0; i < 3; ++i) y[i] = x[i];
  if (want_jac) {
    const int off = sys.jac_offset();
    for (int i = 0; i < 3; ++i) y[off + 4 * i] = sys.pinned(i) ? 0.0 : 1.0;
  }

  FlowResult res;
  if (config.dense_output) res.trajectory.push_back({0.0, x});

  if (t > 0.0) {
    State k1{}, k2{}, k3{}, k4{}, k5{}, k6{}, k7{}, ys{}, ynew{}, err{};
    sys(y, k1);
    double h = initial_step(sys, y, k1, t, config);
    double time = 0.0;
    double facold = 1e-4;
    bool last_rejected = false;

    while (time < t) {
      if (res.steps_taken + res.steps_rejected >= config.max_steps)
        throw StepBudgetExceeded("step budget of " + std::to_string(config.max_steps) + " exhausted at t=" +
                                 std::to_string(time));
      bool final_step = false;
      if (time + 1.01 * h >= t) {
        h = t - time;
        final_step = true;
      }

      for (int i = 0; i < n; ++i) ys[i] = y[i] + h * a21 * k1[i];
      sys(ys, k2);
      for (int i = 0; i < n; ++i) ys[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
      sys(ys, k3);
      for (int i = 0; i < n; ++i) ys[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      sys(ys, k4);
      for (int i = 0; i < n; ++i)
        ys[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
      sys(ys, k5);
      for (int i = 0; i < n; ++i)
        ys[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
      sys(ys, k6);
      for (int i = 0; i < n; ++i)
        ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
      sys(ynew, k7);
      for (int i = 0; i < n; ++i)
        err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);

      if (!std::all_of(ynew.begin(), ynew.begin() + n, [](double v) { return std::isfinite(v); })) {
        if (h <= 1e-12 * t) throw NonFiniteState("trajectory left the finite range at t=" + std::to_string(time));
        h *= 0.25;
        ++res.steps_rejected;
        last_rejected = true;
        continue;
      }

      {
        // A positive density may not cross zero; shrink instead of clamping.
        bool crossed = false;
        for (int i = 0; i < 3; ++i)
          if (ynew[i] < 0.0) crossed = true;

        double en = 0.0;
        for (int i = 0; i < n; ++i) {
          const double sc = config.abs_tol + config.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
          en += (err[i] / sc) * (err[i] / sc);
        }
        en = std::sqrt(en / n);

        const double fac11 = std::pow(std::max(en, 1e-300), kExpo);
        if (en <= 1.0 && !crossed) {
          double fac = fac11 / std::pow(facold, kBeta);
          fac = std::clamp(fac / kSafety, 1.0 / kFacMax, 1.0 / kFacMin);
          double hnew = h / fac;
          facold = std::max(en, 1e-4);
          if (last_rejected) hnew = std::min(hnew, h);
          last_rejected = false;

          res.error_estimate += std::max({std::abs(err[0]), std::abs(err[1]), std::abs(err[2])});
          time = final_step ? t : time + h;
          y = ynew;
          k1 = k7;
          ++res.steps_taken;
          if (config.dense_output) res.trajectory.push_back({time, Vec3{y[0], y[1], y[2]}});
          h = hnew;
        } else {
          const double shrink = crossed ? 0.5 : 1.0 / std::min(1.0 / kFacMin, fac11 / kSafety);
          h *= std::min(shrink, 0.9);
          ++res.steps_rejected;
          last_rejected = true;
          if (h <= 1e-14 * std::max(1.0, t))
            throw NonFiniteState("step size underflow at t=" + std::to_string(time));
        }
      }
    }
  }

  res.end_state = {y[0], y[1], y[2]};
  if (want_hat) res.hat = Vec3{y[3], y[4], y[5]};
  if (want_jac) {
    res.jacobian = sys.unpack_w(y);
  }
  return res;
}

FlowResult poincare(const ModelParams& params, const Vec3& x, const IntegratorConfig& config, bool want_hat,
                    bool want_jac) {
  check_input(x);
  const Vec3 decay = params.decay_factors();
  FlowResult res = lv_flow(params, linear_phase(params, x), params.growth_time(), config, want_hat, want_jac);
  if (res.jacobian) {
    Mat3& j = *res.jacobian;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) j[r][c] *= decay[c];
  }
  return res;
}

Vec3 poincare_point(const ModelParams& params, const Vec3& x, const IntegratorConfig& config) {
  return poincare(params, x, config).end_state;
}

}  // namespace seasonlv
