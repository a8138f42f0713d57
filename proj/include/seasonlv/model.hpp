#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "seasonlv/errors.hpp"
#include "seasonlv/linalg.hpp"

namespace seasonlv {

/// Relative margin for every sign decision (gamma, transversality, det A).
inline constexpr double kSignMargin = 1e-9;

/// -1, 0 or +1; values within kSignMargin * scale of zero give 0.
int margin_sign(double value, double scale);

/// The 17 constants of one seasonal-succession system: period omega,
/// good-season fraction phi, die-off rates mu, growth rates b, and the
/// competition matrix a.
struct ModelParams {
  double omega = 0.0;
  double phi = 0.0;
  Vec3 mu{};
  Vec3 b{};
  Mat3 a{};

  /// e^{-mu_i (1-phi) omega}: the bad-season survival factor.
  double decay_factor(int i) const;
  Vec3 decay_factors() const;
  double growth_time() const { return phi * omega; }
  /// r_i = b_i phi omega - mu_i (1-phi) omega.
  Vec3 net_growth() const;
};

enum class ViolationKind { NonpositiveEntry, PhiOutOfRange, NonFinite };

struct Violation {
  ViolationKind kind;
  std::string field;
  int row = -1;
  int col = -1;

  std::string to_string() const;
  bool operator==(const Violation&) const = default;
};

/// Empty iff every constant is finite, strictly positive and phi <= 1.
std::vector<Violation> validate(const ModelParams& params);

struct DerivedParams {
  Vec3 r{};
  /// gamma[i][j] = a_ii r_j - a_ji r_i for i != j; the diagonal is unused.
  Mat3 gamma{};
  Mat3 gamma_scale{};
  /// beta[i][j] = (a_jj r_i - a_ij r_j) / (a_ii a_jj - a_ij a_ji), present
  /// exactly where gamma_ij * gamma_ji > 0.
  std::array<std::array<std::optional<double>, 3>, 3> beta{};
  double det_a = 0.0;
  double det_a_scale = 0.0;
  bool admissible = false;
  bool boundary_stable = false;

  /// a_ki beta_ij + a_kj beta_ji - r_k for the planar point opposite k,
  /// present with beta; positive means it attracts transversally.
  std::array<std::optional<double>, 3> transverse{};
  Vec3 transverse_scale{};

  int gamma_sign(int i, int j) const { return margin_sign(gamma[i][j], gamma_scale[i][j]); }
  int det_a_sign() const { return margin_sign(det_a, det_a_scale); }
  /// 0 when absent or inside the margin.
  int transverse_sign(int k) const;
};

/// Throws InvalidParams when validate() reports anything.
DerivedParams derive(const ModelParams& params);

/// The two indices other than k, ascending.
constexpr std::array<int, 2> others(int k) {
  return k == 0 ? std::array<int, 2>{1, 2} : (k == 1 ? std::array<int, 2>{0, 2} : std::array<int, 2>{0, 1});
}

/// Nonnegative, finite species densities.
class StateVec {
 public:
  StateVec() = default;
  explicit StateVec(const Vec3& x);
  StateVec(double x1, double x2, double x3) : StateVec(Vec3{x1, x2, x3}) {}

  const Vec3& values() const { return x_; }
  double operator[](int i) const { return x_[i]; }
  bool operator==(const StateVec&) const = default;

 private:
  Vec3 x_{};
};

}  // namespace seasonlv
