#include "seasonlv/fixedpoints.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <span>

namespace seasonlv {
namespace {

struct NewtonOutcome {
  bool converged = false;
  Vec3 x{};
  double residual = 0.0;
};

// Damped Newton on log(P_i(x) / x_i) = 0 in the coordinates u_i = log x_i
// listed in `free`; the other coordinates stay at zero. Working in logs keeps
// the iteration positive and well scaled when the map contracts strongly.
NewtonOutcome damped_newton(const ModelParams& params, Vec3 x, std::span<const int> free,
                            const IntegratorConfig& config, int max_iter = 50) {
  NewtonOutcome out;
  double best = std::numeric_limits<double>::infinity();
  Vec3 best_x = x;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    FlowResult f;
    try {
      f = poincare(params, x, config, false, true);
    } catch (const Error&) {
      break;
    }
    double res = 0.0;
    for (int i : free) res = std::max(res, std::abs(f.end_state[i] - x[i]));
    const double scale = 1.0 + norm_inf(x);
    if (res < best) {
      best = res;
      best_x = x;
    }
    if (res <= 1e-15 * scale) break;
    // noise floor of the integrator: no further progress possible
    if (res <= 1e-10 * scale && res > 0.5 * prev) break;
    prev = res;

    Mat3 jm = identity3();
    Vec3 rhs{};
    bool ok = true;
    for (std::size_t a = 0; a < free.size(); ++a) {
      const int ia = free[a];
      const double pa = f.end_state[ia];
      if (!(pa > 0.0)) ok = false;
      for (std::size_t b = 0; b < free.size(); ++b)
        jm[a][b] = (*f.jacobian)[ia][free[b]] * x[free[b]] / pa - (a == b ? 1.0 : 0.0);
      rhs[a] = -std::log(pa / x[ia]);
    }
    if (!ok) break;
    const auto step = solve3(jm, rhs);
    if (!step) break;
    double longest = 0.0;
    for (std::size_t a = 0; a < free.size(); ++a) longest = std::max(longest, std::abs((*step)[a]));
    const double alpha = longest > 2.0 ? 2.0 / longest : 1.0;
    for (std::size_t a = 0; a < free.size(); ++a) x[free[a]] *= std::exp(alpha * (*step)[a]);
    if (!std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); })) break;
  }
  out.x = best_x;
  out.residual = best;
  out.converged = best <= 1e-10 * (1.0 + norm_inf(best_x));
  return out;
}

double scale_of(const Vec3& x) { return 1.0 + norm_inf(x); }

// Rows of DP outside the support vanish off the diagonal, so the spectrum
// splits into those diagonal entries and the spectrum of the support block.
std::array<Complex, 3> block_eigenvalues(const Mat3& j, const std::array<bool, 3>& support, double det) {
  std::vector<int> in, out;
  for (int i = 0; i < 3; ++i) (support[i] ? in : out).push_back(i);
  if (in.size() == 3) return eigenvalues3(j, det);
  std::vector<Complex> ev;
  double block_det = det;
  for (int k : out) {
    ev.emplace_back(j[k][k], 0.0);
    block_det /= j[k][k];
  }
  if (in.size() == 1) {
    ev.emplace_back(block_det, 0.0);
  } else if (in.size() == 2) {
    const auto pair = eigenvalues2(j[in[0]][in[0]], j[in[0]][in[1]], j[in[1]][in[0]], j[in[1]][in[1]], block_det);
    ev.insert(ev.end(), pair.begin(), pair.end());
  }
  std::sort(ev.begin(), ev.end(), [](const Complex& a, const Complex& b) { return std::abs(a) < std::abs(b); });
  return {ev[0], ev[1], ev[2]};
}

}  // namespace

const char* to_string(FixedPointKind kind) {
  switch (kind) {
    case FixedPointKind::Trivial: return "trivial";
    case FixedPointKind::Axial: return "axial";
    case FixedPointKind::Planar: return "planar";
    case FixedPointKind::Positive: return "positive";
  }
  return "?";
}

const char* to_string(Stability stability) {
  switch (stability) {
    case Stability::Unknown: return "unknown";
    case Stability::Repeller: return "repeller";
    case Stability::Attractor: return "attractor";
    case Stability::Saddle: return "saddle";
    case Stability::NonHyperbolic: return "nonhyperbolic";
  }
  return "?";
}

std::string FixedPointRecord::name() const {
  switch (kind) {
    case FixedPointKind::Trivial: return "0";
    case FixedPointKind::Axial: return "q" + std::to_string(slot + 1);
    case FixedPointKind::Planar: return "v" + std::to_string(slot + 1);
    case FixedPointKind::Positive: return "p";
  }
  return "?";
}

double liouville_det(const ModelParams& params, const Vec3& hat) {
  const Vec3 r = params.net_growth();
  const Vec3 ah = params.a * hat;
  double expo = 0.0;
  for (int i = 0; i < 3; ++i) expo += r[i] - ah[i] - params.a[i][i] * hat[i];
  return std::exp(expo);
}

double transverse_eigenvalue(const ModelParams& params, const Vec3& hat, int i) {
  return std::exp(params.net_growth()[i] - dot(params.a[i], hat));
}

FixedPointRecord evaluate_fixed_point(const ModelParams& params, const Vec3& x, FixedPointKind kind, int slot,
                                      const IntegratorConfig& config) {
  const FlowResult f = poincare(params, x, config, true, true);
  FixedPointRecord rec;
  rec.kind = kind;
  rec.slot = slot;
  rec.coords = x;
  for (int i = 0; i < 3; ++i) rec.support[i] = x[i] > 0.0;
  rec.hat = *f.hat;
  rec.jacobian = *f.jacobian;
  rec.residual = norm_inf(f.end_state - x);
  rec.det_jacobian = liouville_det(params, rec.hat);
  rec.eigenvalues = block_eigenvalues(rec.jacobian, rec.support, rec.det_jacobian);
  return rec;
}

FixedPointRecord trivial_fixed_point(const ModelParams& params, const IntegratorConfig& config) {
  return evaluate_fixed_point(params, Vec3{}, FixedPointKind::Trivial, -1, config);
}

double axial_closed_form(const ModelParams& params, int i) {
  const double r = params.net_growth()[i];
  if (!(r > 0.0)) throw Inadmissible("r_" + std::to_string(i + 1) + " <= 0: no axial fixed point");
  const double c = params.decay_factor(i);
  const double bt = params.b[i] * params.growth_time();
  return params.b[i] * std::expm1(r) / (params.a[i][i] * c * std::expm1(bt));
}

FixedPointRecord axial_fixed_point(const ModelParams& params, int i, const IntegratorConfig& config) {
  Vec3 x{};
  x[i] = axial_closed_form(params, i);
  FixedPointRecord rec = evaluate_fixed_point(params, x, FixedPointKind::Axial, i, config);
  Vec3 hat{};
  hat[i] = params.net_growth()[i] / params.a[i][i];
  rec.hat = hat;
  return rec;
}

double axial_fixed_point_newton(const ModelParams& params, int i, const IntegratorConfig& config) {
  if (!(params.net_growth()[i] > 0.0)) throw Inadmissible("r_" + std::to_string(i + 1) + " <= 0: no axial fixed point");
  Vec3 x{};
  x[i] = params.b[i] / params.a[i][i];
  const std::array<int, 1> free{i};
  const NewtonOutcome out = damped_newton(params, x, free, config);
  if (!out.converged || !(out.x[i] > 0.0))
    throw NewtonDivergence("axial Newton failed for species " + std::to_string(i + 1));
  return out.x[i];
}

std::optional<FixedPointRecord> planar_fixed_point(const ModelParams& params, int k, const IntegratorConfig& config,
                                                   std::uint64_t seed) {
  const DerivedParams d = derive(params);
  const auto [i, j] = others(k);
  if (!(d.gamma[i][j] * d.gamma[j][i] > 0.0)) return std::nullopt;

  // Seed: scale the two-species hat solution (beta_ij, beta_ji) by the
  // axial ratio q_i / hat(q_i).
  const double qi = axial_closed_form(params, i);
  const double qj = axial_closed_form(params, j);
  Vec3 base{};
  base[i] = std::max(*d.beta[i][j] * qi * params.a[i][i] / d.r[i], 1e-3 * qi);
  base[j] = std::max(*d.beta[j][i] * qj * params.a[j][j] / d.r[j], 1e-3 * qj);

  std::vector<Vec3> seeds{base};
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 1000003ULL * (k + 1));
  std::uniform_real_distribution<double> logu(std::log(0.4), std::log(2.5));
  for (int s = 0; s < 8; ++s) {
    Vec3 x{};
    x[i] = base[i] * std::exp(logu(rng));
    x[j] = base[j] * std::exp(logu(rng));
    seeds.push_back(x);
  }
  // points on the segment q_i q_j as a last resort
  for (double t : {0.5, 0.25, 0.75}) {
    Vec3 x{};
    x[i] = t * qi;
    x[j] = (1.0 - t) * qj;
    seeds.push_back(x);
  }

  const std::array<int, 2> free{i, j};
  for (const Vec3& s : seeds) {
    const NewtonOutcome out = damped_newton(params, s, free, config);
    if (!out.converged) continue;
    const double sc = norm_inf(out.x);
    if (!(out.x[i] > 1e-8 * sc && out.x[j] > 1e-8 * sc)) continue;
    return evaluate_fixed_point(params, out.x, FixedPointKind::Planar, k, config);
  }
  throw NewtonDivergence("planar fixed point v" + std::to_string(k + 1) + " must exist but Newton failed from " +
                         std::to_string(seeds.size()) + " seeds");
}

PositiveSearchResult positive_fixed_points(const ModelParams& params, const IntegratorConfig& config,
                                           const PositiveSearchOptions& options) {
  const DerivedParams d = derive(params);
  if (!d.admissible) throw Inadmissible("positive fixed point search needs r_i > 0 for all i");
  const Vec3 q{axial_closed_form(params, 0), axial_closed_form(params, 1), axial_closed_form(params, 2)};
  const int n = std::max(options.mesh, 3);

  PositiveSearchResult result;
  result.mesh = n;
  std::mt19937_64 rng(options.seed * 0x9E3779B97F4A7C15ULL + 77ULL);
  std::uniform_real_distribution<double> jitter(-0.25, 0.25);
  const std::array<int, 3> all{0, 1, 2};
  const double rnorm = norm_inf(d.r);

  std::vector<Vec3> seeds;
  // A positive fixed point has hat = A^{-1} r; rescaling that vector the way
  // the axial points are rescaled gives a seed close to it.
  if (d.det_a_sign() != 0) {
    if (const auto h = solve3(params.a, d.r); h && std::min({(*h)[0], (*h)[1], (*h)[2]}) > 0.0) {
      Vec3 x{};
      for (int s = 0; s < 3; ++s) x[s] = (*h)[s] * q[s] * params.a[s][s] / d.r[s];
      seeds.push_back(x);
    }
  }
  for (int a = 1; a < n; ++a) {
    for (int b = 1; a + b < n; ++b) {
      const int c = n - a - b;
      Vec3 lam{a + jitter(rng), b + jitter(rng), c + jitter(rng)};
      const double tot = sum(lam);
      Vec3 x{};
      for (int s = 0; s < 3; ++s) x[s] = q[s] * lam[s] / tot;
      seeds.push_back(x);
    }
  }

  for (Vec3 x : seeds) {
    ++result.seeds;
    try {
      for (int p = 0; p < options.pre_iterations; ++p) x = poincare_point(params, x, config);
    } catch (const Error&) {
      ++result.failures;
      continue;
    }
    const NewtonOutcome out = damped_newton(params, x, all, config);
    const double sc = norm_inf(out.x);
    if (!(std::min({out.x[0], out.x[1], out.x[2]}) > 1e-7 * sc)) {
      ++result.boundary_hits;
      continue;
    }
    if (!out.converged) {
      ++result.failures;
      continue;
    }
    const bool dup = std::any_of(result.roots.begin(), result.roots.end(), [&](const FixedPointRecord& r) {
      return norm_inf(r.coords - out.x) <= 1e-7 * scale_of(out.x);
    });
    if (dup) continue;
    FixedPointRecord rec = evaluate_fixed_point(params, out.x, FixedPointKind::Positive, -1, config);
    if (norm_inf(params.a * rec.hat - d.r) > 1e-8 * rnorm) {
      ++result.hat_rejections;
      continue;
    }
    result.roots.push_back(rec);
  }
  std::sort(result.roots.begin(), result.roots.end(),
            [](const FixedPointRecord& l, const FixedPointRecord& r) { return l.coords < r.coords; });
  return result;
}

FixedPointRecord stability_and_index(const ModelParams& params, FixedPointRecord fp) {
  int outside = 0;
  for (const Complex& l : fp.eigenvalues) {
    const double m = std::abs(l);
    if (std::abs(m - 1.0) < kHyperbolicMargin) {
      fp.stability = Stability::NonHyperbolic;
      fp.index.reset();
      throw NonHyperbolic("fixed point " + fp.name() + " has an eigenvalue of modulus " + std::to_string(m));
    }
    if (m > 1.0) ++outside;
  }
  fp.index = (outside % 2 == 0) ? 1 : -1;

  const DerivedParams d = derive(params);
  auto label = [](int s1, int s2) {
    if (s1 > 0 && s2 > 0) return Stability::Repeller;
    if (s1 < 0 && s2 < 0) return Stability::Attractor;
    if (s1 == 0 || s2 == 0) return Stability::NonHyperbolic;
    return Stability::Saddle;
  };
  switch (fp.kind) {
    case FixedPointKind::Trivial:
      fp.stability = Stability::Repeller;
      break;
    case FixedPointKind::Axial: {
      const auto [j, k] = others(fp.slot);
      fp.stability = label(d.gamma_sign(fp.slot, j), d.gamma_sign(fp.slot, k));
      break;
    }
    case FixedPointKind::Planar: {
      const auto [i, j] = others(fp.slot);
      // along the edge: gamma > 0 attracts; transversally: positive attracts
      const int edge = d.gamma_sign(i, j);
      fp.stability = label(-edge, -d.transverse_sign(fp.slot));
      break;
    }
    case FixedPointKind::Positive: {
      const double m1 = std::abs(fp.eigenvalues[1]);
      const double m2 = std::abs(fp.eigenvalues[2]);
      fp.stability = label(m1 > 1.0 ? 1 : -1, m2 > 1.0 ? 1 : -1);
      break;
    }
  }
  return fp;
}

std::vector<FixedPointRecord> FixedPointInventory::all() const {
  std::vector<FixedPointRecord> out{trivial};
  out.insert(out.end(), axial.begin(), axial.end());
  for (const auto& p : planar)
    if (p) out.push_back(*p);
  out.insert(out.end(), positive.roots.begin(), positive.roots.end());
  return out;
}

FixedPointInventory fixed_point_inventory(const ModelParams& params, const IntegratorConfig& config,
                                          const PositiveSearchOptions& options) {
  const DerivedParams d = derive(params);
  if (!d.admissible) throw Inadmissible("fixed point inventory needs r_i > 0 for all i");
  FixedPointInventory inv;
  auto classify_one = [&](FixedPointRecord rec) {
    try {
      return stability_and_index(params, rec);
    } catch (const NonHyperbolic& e) {
      inv.degenerate = true;
      inv.notes.emplace_back(e.what());
      rec.stability = Stability::NonHyperbolic;
      rec.index.reset();
      return rec;
    }
  };
  inv.trivial = classify_one(trivial_fixed_point(params, config));
  for (int i = 0; i < 3; ++i) inv.axial[i] = classify_one(axial_fixed_point(params, i, config));
  for (int k = 0; k < 3; ++k)
    if (auto v = planar_fixed_point(params, k, config, options.seed)) inv.planar[k] = classify_one(*v);
  inv.positive = positive_fixed_points(params, config, options);
  for (auto& p : inv.positive.roots) p = classify_one(p);
  return inv;
}

IndexReport verify_index_formula(const ModelParams& params, const IntegratorConfig& config,
                                 const PositiveSearchOptions& options) {
  const DerivedParams d = derive(params);
  if (!d.admissible) throw Inadmissible("index formula needs r_i > 0 for all i");
  if (!d.boundary_stable) throw Degenerate("instance is not stable relative to the boundary");

  IndexReport rep;
  rep.inventory = fixed_point_inventory(params, config, options);
  auto tally = [&]() {
    if (rep.inventory.degenerate) throw Degenerate("non-hyperbolic fixed point: " + rep.inventory.notes.front());
    rep.axial_sum = rep.planar_sum = rep.positive_sum = 0;
    for (const auto& q : rep.inventory.axial) rep.axial_sum += *q.index;
    for (const auto& v : rep.inventory.planar)
      if (v) rep.planar_sum += *v->index;
    for (const auto& p : rep.inventory.positive.roots) rep.positive_sum += *p.index;
    rep.lhs = rep.axial_sum + 2 * rep.planar_sum + 4 * rep.positive_sum;
    rep.holds = rep.lhs == 1;
  };
  tally();
  if (!rep.holds && options.mesh < kRefinedMesh) {
    PositiveSearchOptions fine = options;
    fine.mesh = kRefinedMesh;
    rep.inventory.positive = positive_fixed_points(params, config, fine);
    for (auto& p : rep.inventory.positive.roots) {
      try {
        p = stability_and_index(params, p);
      } catch (const NonHyperbolic& e) {
        rep.inventory.degenerate = true;
        rep.inventory.notes.emplace_back(e.what());
      }
    }
    rep.refined = true;
    tally();
  }
  return rep;
}

}  // namespace seasonlv
