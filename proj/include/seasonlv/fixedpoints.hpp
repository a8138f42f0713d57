#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seasonlv/flow.hpp"
#include "seasonlv/linalg.hpp"
#include "seasonlv/model.hpp"

namespace seasonlv {

enum class FixedPointKind { Trivial, Axial, Planar, Positive };
enum class Stability { Unknown, Repeller, Attractor, Saddle, NonHyperbolic };

const char* to_string(FixedPointKind kind);
const char* to_string(Stability stability);

/// Eigenvalues within this distance of the unit circle are non-hyperbolic.
inline constexpr double kHyperbolicMargin = 1e-7;

struct FixedPointRecord {
  FixedPointKind kind = FixedPointKind::Trivial;
  /// Species index i of q_i, or the missing species k of v_k; -1 otherwise.
  int slot = -1;
  std::array<bool, 3> support{};
  Vec3 coords{};
  /// Integral of the growth-season trajectory started at L(coords).
  Vec3 hat{};
  Mat3 jacobian{};
  /// det DP from the trace integral (Liouville), accurate even when one
  /// eigenvalue is far below the entry scale of the Jacobian.
  double det_jacobian = 0.0;
  /// Ascending modulus.
  std::array<Complex, 3> eigenvalues{};
  /// |P(coords) - coords|_inf
  double residual = 0.0;
  Stability stability = Stability::Unknown;
  std::optional<int> index;

  /// "0", "q1", "v3", "p"
  std::string name() const;
};

/// Evaluates P, DP and the hat integral at `x` and fills every numeric
/// field of the record except stability and index.
FixedPointRecord evaluate_fixed_point(const ModelParams& params, const Vec3& x, FixedPointKind kind, int slot,
                                      const IntegratorConfig& config);

/// exp(sum r - sum (A hat) - sum a_ii hat_i): Liouville's formula for det DP.
double liouville_det(const ModelParams& params, const Vec3& hat);

/// exp(r_i - (A hat)_i): eigenvalue of DP transverse to a face with x_i = 0.
double transverse_eigenvalue(const ModelParams& params, const Vec3& hat, int i);

FixedPointRecord trivial_fixed_point(const ModelParams& params, const IntegratorConfig& config);

/// Closed-form coordinate of q_i on its axis. Throws Inadmissible if r_i <= 0.
double axial_closed_form(const ModelParams& params, int i);

/// q_i from the closed form, hat = (r_i / a_ii) e_i, eigenvalues from the
/// numerical Jacobian. Throws Inadmissible if r_i <= 0.
FixedPointRecord axial_fixed_point(const ModelParams& params, int i, const IntegratorConfig& config);

/// q_i located by scalar Newton on the numerical map restricted to axis i,
/// started from the logistic carrying capacity b_i / a_ii.
double axial_fixed_point_newton(const ModelParams& params, int i, const IntegratorConfig& config);

/// Planar fixed point v_k in the open plane x_k = 0. Absent iff
/// gamma_ij gamma_ji <= 0. Throws NewtonDivergence when a root must exist
/// but no seed converges.
std::optional<FixedPointRecord> planar_fixed_point(const ModelParams& params, int k, const IntegratorConfig& config,
                                                   std::uint64_t seed = 0);

struct PositiveSearchOptions {
  /// Subdivisions of the triangle q1 q2 q3 used to place Newton seeds.
  int mesh = 15;
  /// Applications of P to each seed before Newton. Off by default: strong
  /// attractors pull the seeds away from interior saddles.
  int pre_iterations = 0;
  std::uint64_t seed = 0;
};

struct PositiveSearchResult {
  std::vector<FixedPointRecord> roots;
  int mesh = 0;
  std::size_t seeds = 0;
  std::size_t failures = 0;
  /// Newton runs that drifted onto a coordinate plane.
  std::size_t boundary_hits = 0;
  /// Converged points rejected by the A hat = r check.
  std::size_t hat_rejections = 0;
};

/// Multi-start Newton for interior fixed points. Roots are deduplicated;
/// the list may be empty or hold several points. Throws Inadmissible.
PositiveSearchResult positive_fixed_points(const ModelParams& params, const IntegratorConfig& config,
                                           const PositiveSearchOptions& options = {});

/// Index (-1)^(#eigenvalues outside the unit circle) and a stability label.
/// Boundary labels come from the gamma / transversality signs, interior
/// labels from the two eigenvalues other than the smallest. Throws
/// NonHyperbolic if an eigenvalue modulus is within kHyperbolicMargin of 1.
FixedPointRecord stability_and_index(const ModelParams& params, FixedPointRecord fp);

struct FixedPointInventory {
  FixedPointRecord trivial;
  std::array<FixedPointRecord, 3> axial;
  std::array<std::optional<FixedPointRecord>, 3> planar;
  PositiveSearchResult positive;
  /// Some fixed point is non-hyperbolic; indices of those are unset.
  bool degenerate = false;
  std::vector<std::string> notes;

  std::vector<FixedPointRecord> all() const;
};

/// Every fixed point with stability and index. Throws Inadmissible.
FixedPointInventory fixed_point_inventory(const ModelParams& params, const IntegratorConfig& config,
                                          const PositiveSearchOptions& options = {});

struct IndexReport {
  int lhs = 0;
  bool holds = false;
  /// The positive search was rerun on the refined mesh.
  bool refined = false;
  int axial_sum = 0;
  int planar_sum = 0;
  int positive_sum = 0;
  FixedPointInventory inventory;
};

inline constexpr int kRefinedMesh = 31;

/// sum_axial ind + 2 sum_planar ind + 4 sum_positive ind, which must be 1.
/// A miss triggers one rerun of the interior search on kRefinedMesh.
/// Throws Degenerate if the instance is not boundary-stable or any fixed
/// point is non-hyperbolic.
IndexReport verify_index_formula(const ModelParams& params, const IntegratorConfig& config,
                                 const PositiveSearchOptions& options = {});

}  // namespace seasonlv
