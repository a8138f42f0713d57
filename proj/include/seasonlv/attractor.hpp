#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "seasonlv/fixedpoints.hpp"
#include "seasonlv/flow.hpp"
#include "seasonlv/model.hpp"

namespace seasonlv {

struct OrbitTrace {
  Vec3 initial{};
  /// P^{transient+1}(x0), ..., P^{transient+n}(x0)
  std::vector<Vec3> points;
  std::size_t transient_len = 0;
  std::size_t total_len = 0;
};

inline constexpr std::size_t kDefaultTransient = 2000;
inline constexpr std::size_t kDefaultWindow = 4000;

/// Throws InvalidState for a bad x0, InvalidParams for n == 0, and
/// integrator errors.
OrbitTrace iterate(const ModelParams& params, const Vec3& x0, std::size_t n,
                   std::size_t transient = kDefaultTransient, const IntegratorConfig& config = {});

enum class Verdict { FixedPoint, ClosedCurve, BoundaryCycle, Inconclusive };
const char* to_string(Verdict v);

struct CurveStats {
  double diameter = 0.0;
  /// Degrees.
  double max_angular_gap = 0.0;
  double rotation_number = 0.0;
  /// Largest (max - min radius) / mean radius over the angular bins, in
  /// the normalized plane coordinates.
  double max_radial_spread = 0.0;
  double mean_radius = 0.0;
  Vec3 centroid{};
  Vec3 normal{};
};

struct LimitEvidence {
  /// max |x_{k+1} - x_k|_inf over the last 100 points.
  double tail_step = 0.0;
  /// Distance from the last point to the nearest known fixed point.
  std::optional<double> fixed_point_distance;
  /// Smallest coordinate over the first and last quarter of the window.
  double min_coord_first = 0.0;
  double min_coord_last = 0.0;
  /// Changes of the dominant species in the window, and how many species
  /// were dominant at some point.
  std::size_t dominance_changes = 0;
  int dominant_count = 0;
  double scale = 1.0;
};

struct LimitSetReport {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Vec3> target;
  std::optional<std::string> target_name;
  std::optional<CurveStats> curve;
  LimitEvidence evidence;
  std::string note;
};

struct AnalysisOptions {
  std::size_t min_points = 2000;
  double fixed_point_step = 1e-9;
  double fixed_point_distance = 1e-6;
  int bins = 180;
  double max_radial_spread = 0.05;
  double max_gap_degrees = 10.0;
  double min_diameter = 1e-3;
  /// Boundary approach: smallest coordinate must fall by this factor between
  /// the first and last quarter and end below boundary_level * scale.
  double boundary_decay = 1e-3;
  double boundary_level = 1e-6;
};

/// Curve geometry of a point set: best-fit plane through the centroid,
/// in-plane principal axes scaled to unit variance, then polar angles and
/// radial spread per angular bin in those coordinates. The diameter is in
/// state units.
CurveStats curve_stats(const std::vector<Vec3>& points, int bins = 180);

/// Throws InvalidParams when the trace holds fewer than options.min_points.
LimitSetReport analyze_limit_set(const OrbitTrace& trace, const std::vector<FixedPointRecord>& known_fps,
                                 const AnalysisOptions& options = {});

struct MeshPoint {
  Vec3 seed{};  ///< barycentric coordinates of the ray
  Vec3 x{};
};

/// Rays through the barycentric grid of resolution `resolution` start
/// beyond the carrying simplex and are pushed onto it by `iterations`
/// applications of P. Throws Inadmissible.
std::vector<MeshPoint> simplex_mesh(const ModelParams& params, int resolution, int iterations = 200,
                                    const IntegratorConfig& config = {}, unsigned jobs = 1);

/// Pairs x != z with x <= z componentwise: z_i - x_i >= -eta for all i and
/// max_i (z_i - x_i) > delta. Points closer than delta count as equal.
std::size_t count_ordered_pairs(const std::vector<Vec3>& cloud, double eta, double delta);

void write_orbit_csv(std::ostream& os, const OrbitTrace& trace);
void write_mesh_csv(std::ostream& os, const std::vector<MeshPoint>& mesh);

}  // namespace seasonlv
