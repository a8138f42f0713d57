#include "seasonlv/attractor.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "seasonlv/parallel.hpp"

namespace seasonlv {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::FixedPoint: return "fixed_point";
    case Verdict::ClosedCurve: return "closed_curve";
    case Verdict::BoundaryCycle: return "boundary_cycle";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

OrbitTrace iterate(const ModelParams& params, const Vec3& x0, std::size_t n, std::size_t transient,
                   const IntegratorConfig& config) {
  if (n == 0) throw InvalidParams("orbit length must be at least 1");
  const StateVec checked(x0);
  OrbitTrace trace;
  trace.initial = checked.values();
  trace.transient_len = transient;
  trace.total_len = transient + n;
  trace.points.reserve(n);
  Vec3 x = trace.initial;
  for (std::size_t k = 0; k < transient; ++k) x = poincare_point(params, x, config);
  for (std::size_t k = 0; k < n; ++k) {
    x = poincare_point(params, x, config);
    trace.points.push_back(x);
  }
  return trace;
}

CurveStats curve_stats(const std::vector<Vec3>& points, int bins) {
  CurveStats st;
  const std::size_t n = points.size();
  if (n < 3) return st;
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (const auto& p : points) c += Eigen::Vector3d(p[0], p[1], p[2]);
  c /= static_cast<double>(n);
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : points) {
    const Eigen::Vector3d d = Eigen::Vector3d(p[0], p[1], p[2]) - c;
    cov += d * d.transpose();
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
  // ascending eigenvalues: column 0 is the plane normal
  const Eigen::Vector3d e1 = es.eigenvectors().col(2);
  const Eigen::Vector3d e2 = es.eigenvectors().col(1);
  const Eigen::Vector3d nrm = es.eigenvectors().col(0);
  st.centroid = {c(0), c(1), c(2)};
  st.normal = {nrm(0), nrm(1), nrm(2)};

  // unit variance along both in-plane axes, so elongated curves are binned
  // as evenly as round ones
  const double s1 = std::sqrt(std::max(es.eigenvalues()(2), 0.0) / static_cast<double>(n));
  const double s2 = std::sqrt(std::max(es.eigenvalues()(1), 0.0) / static_cast<double>(n));
  if (!(s1 > 0.0 && s2 > 0.0)) return st;

  std::vector<double> angle(n), radius(n);
  double rsum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Eigen::Vector3d d = Eigen::Vector3d(points[k][0], points[k][1], points[k][2]) - c;
    const double u = d.dot(e1) / s1, v = d.dot(e2) / s2;
    angle[k] = std::atan2(v, u);
    radius[k] = std::hypot(u, v);
    rsum += radius[k];
  }
  st.mean_radius = rsum / static_cast<double>(n);

  std::vector<double> lo(bins, std::numeric_limits<double>::infinity());
  std::vector<double> hi(bins, -std::numeric_limits<double>::infinity());
  std::vector<int> count(bins, 0);
  for (std::size_t k = 0; k < n; ++k) {
    int b = static_cast<int>((angle[k] + std::numbers::pi) / (2.0 * std::numbers::pi) * bins);
    b = std::clamp(b, 0, bins - 1);
    lo[b] = std::min(lo[b], radius[k]);
    hi[b] = std::max(hi[b], radius[k]);
    ++count[b];
  }
  for (int b = 0; b < bins; ++b)
    if (count[b] >= 2 && st.mean_radius > 0.0)
      st.max_radial_spread = std::max(st.max_radial_spread, (hi[b] - lo[b]) / st.mean_radius);

  std::vector<double> sorted = angle;
  std::sort(sorted.begin(), sorted.end());
  double gap = sorted.front() + 2.0 * std::numbers::pi - sorted.back();
  for (std::size_t k = 1; k < n; ++k) gap = std::max(gap, sorted[k] - sorted[k - 1]);
  st.max_angular_gap = gap * 180.0 / std::numbers::pi;

  double advance = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    double d = angle[k] - angle[k - 1];
    if (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
    if (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
    advance += d;
  }
  st.rotation_number = advance / static_cast<double>(n - 1) / (2.0 * std::numbers::pi);

  double diam2 = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const Vec3 d = points[a] - points[b];
      diam2 = std::max(diam2, dot(d, d));
    }
  st.diameter = std::sqrt(diam2);
  return st;
}

LimitSetReport analyze_limit_set(const OrbitTrace& trace, const std::vector<FixedPointRecord>& known_fps,
                                 const AnalysisOptions& options) {
  const auto& pts = trace.points;
  if (pts.size() < options.min_points)
    throw InvalidParams("limit-set analysis needs at least " + std::to_string(options.min_points) + " points");
  LimitSetReport rep;
  LimitEvidence& ev = rep.evidence;
  const std::size_t n = pts.size();

  double top = 0.0;
  for (const auto& p : pts) top = std::max(top, norm_inf(p));
  ev.scale = 1.0 + top;

  for (std::size_t k = n - 100; k + 1 < n; ++k) ev.tail_step = std::max(ev.tail_step, norm_inf(pts[k + 1] - pts[k]));
  const Vec3& last = pts.back();
  const FixedPointRecord* nearest = nullptr;
  for (const auto& fp : known_fps) {
    const double d = norm_inf(fp.coords - last);
    if (!ev.fixed_point_distance || d < *ev.fixed_point_distance) {
      ev.fixed_point_distance = d;
      nearest = &fp;
    }
  }

  const std::size_t quarter = n / 4;
  auto min_coord = [](const Vec3& p) { return std::min({p[0], p[1], p[2]}); };
  ev.min_coord_first = ev.min_coord_last = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < quarter; ++k) ev.min_coord_first = std::min(ev.min_coord_first, min_coord(pts[k]));
  for (std::size_t k = n - quarter; k < n; ++k) ev.min_coord_last = std::min(ev.min_coord_last, min_coord(pts[k]));
  std::array<bool, 3> seen{};
  int dom = -1;
  for (const auto& p : pts) {
    const int d = static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
    if (dom >= 0 && d != dom) ++ev.dominance_changes;
    dom = d;
    seen[d] = true;
  }
  ev.dominant_count = seen[0] + seen[1] + seen[2];

  if (ev.min_coord_last <= options.boundary_decay * ev.min_coord_first &&
      ev.min_coord_last < options.boundary_level * ev.scale && ev.dominant_count == 3 && ev.dominance_changes >= 3) {
    rep.verdict = Verdict::BoundaryCycle;
    return rep;
  }

  if (ev.tail_step <= options.fixed_point_step * ev.scale) {
    if (nearest && *ev.fixed_point_distance < options.fixed_point_distance * ev.scale) {
      rep.verdict = Verdict::FixedPoint;
      rep.target = nearest->coords;
      rep.target_name = nearest->name();
    } else {
      rep.note = "orbit settled on a point that matches no known fixed point";
    }
    return rep;
  }

  const CurveStats st = curve_stats(pts, options.bins);
  rep.curve = st;
  const bool thin = st.max_radial_spread < options.max_radial_spread;
  const bool covered = st.max_angular_gap < options.max_gap_degrees;
  const bool wide = st.diameter > options.min_diameter * ev.scale;
  if (thin && covered && wide) {
    rep.verdict = Verdict::ClosedCurve;
  } else {
    rep.note = std::string("curve test failed:") + (thin ? "" : " radial spread") + (covered ? "" : " angular gap") +
               (wide ? "" : " diameter");
  }
  return rep;
}

std::vector<MeshPoint> simplex_mesh(const ModelParams& params, int resolution, int iterations,
                                    const IntegratorConfig& config, unsigned jobs) {
  const DerivedParams d = derive(params);
  if (!d.admissible) throw Inadmissible("simplex mesh needs r_i > 0 for all i");
  if (resolution < 1) throw InvalidParams("mesh resolution must be at least 1");
  // A point beyond every axial fixed point lies outside the carrying simplex.
  double reach = 0.0;
  for (int i = 0; i < 3; ++i) reach += axial_fixed_point(params, i, config).coords[i];
  reach *= 1.1;

  std::vector<MeshPoint> mesh;
  for (int a = 0; a <= resolution; ++a)
    for (int b = 0; a + b <= resolution; ++b) {
      const int c = resolution - a - b;
      const double n = resolution;
      mesh.push_back({Vec3{a / n, b / n, c / n}, {}});
    }
  parallel_for(mesh.size(), jobs, [&](std::size_t i) {
    Vec3 x = reach * mesh[i].seed;
    for (int k = 0; k < iterations; ++k) x = poincare_point(params, x, config);
    mesh[i].x = x;
  });
  return mesh;
}

std::size_t count_ordered_pairs(const std::vector<Vec3>& cloud, double eta, double delta) {
  std::size_t count = 0;
  for (std::size_t a = 0; a < cloud.size(); ++a)
    for (std::size_t b = 0; b < cloud.size(); ++b) {
      if (a == b) continue;
      const Vec3 d = cloud[b] - cloud[a];
      if (d[0] >= -eta && d[1] >= -eta && d[2] >= -eta && std::max({d[0], d[1], d[2]}) > delta) ++count;
    }
  return count;
}

namespace {

void put(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

}  // namespace

void write_orbit_csv(std::ostream& os, const OrbitTrace& trace) {
  os << "k,x1,x2,x3\n";
  for (std::size_t i = 0; i < trace.points.size(); ++i) {
    os << trace.transient_len + i + 1;
    for (double v : trace.points[i]) {
      os << ',';
      put(os, v);
    }
    os << '\n';
  }
}

void write_mesh_csv(std::ostream& os, const std::vector<MeshPoint>& mesh) {
  os << "seed_b1,seed_b2,seed_b3,x1,x2,x3\n";
  for (const auto& m : mesh) {
    for (int i = 0; i < 3; ++i) {
      put(os, m.seed[i]);
      os << ',';
    }
    for (int i = 0; i < 3; ++i) {
      put(os, m.x[i]);
      os << (i < 2 ? ',' : '\n');
    }
  }
}

}  // namespace seasonlv
