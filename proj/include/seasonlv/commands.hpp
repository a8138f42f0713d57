#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "seasonlv/attractor.hpp"
#include "seasonlv/io.hpp"

namespace seasonlv {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitDegenerate = 2;

/// A machine-readable report and the exit status it maps to.
struct CommandOutput {
  Json report;
  int status = kExitOk;
};

/// Class id, permutation, boundary signature, gammas, betas, det A, r, theta
/// for class 27 and degenerate flags. Status 2 when the instance is
/// inadmissible or a sign lies inside the margin.
CommandOutput classify_report(const ModelParams& params, bool with_oracle);

/// Full inventory with stabilities and indices plus the index-formula
/// outcome. Status 2 for inadmissible instances.
CommandOutput fixed_points_report(const ModelParams& params, const IntegratorConfig& config, std::uint64_t seed);

/// Status 2 when the formula cannot be evaluated (inadmissible, not
/// boundary-stable, or a non-hyperbolic fixed point).
CommandOutput verify_index_report(const ModelParams& params, const IntegratorConfig& config, std::uint64_t seed);

/// Fixed points an orbit may settle on: the full inventory when the
/// instance is admissible, else the trivial point and the axial points of
/// species with r_i > 0.
std::vector<FixedPointRecord> known_fixed_points(const ModelParams& params, const IntegratorConfig& config,
                                                 std::uint64_t seed);

struct OrbitOutput {
  OrbitTrace trace;
  LimitSetReport limit;
  Json report;
};

OrbitOutput orbit_report(const ModelParams& params, const Vec3& x0, std::size_t n, std::size_t transient,
                         const IntegratorConfig& config, std::uint64_t seed);

struct SimplexOutput {
  std::vector<MeshPoint> mesh;
  Json report;
};

/// Mesh cloud plus its ordered-pair count. Throws Inadmissible.
SimplexOutput simplex_report(const ModelParams& params, int resolution, int iterations,
                             const IntegratorConfig& config, unsigned jobs);

struct SweepSpec {
  SampleBox box;
  std::size_t samples = 100;
};

/// Optional "samples" plus the box keys of parse_sample_box.
SweepSpec parse_sweep_spec(const Json& doc);

struct SweepOutput {
  Json summary;
  /// One entry per sample.
  Json samples;
};

/// Draws admissible samples from one seed, classifies each and checks the
/// index formula, the positive-fixed-point expectation and the det A sign.
SweepOutput sweep_report(const SweepSpec& spec, const IntegratorConfig& config, std::uint64_t seed, unsigned jobs);

}  // namespace seasonlv
