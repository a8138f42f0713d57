#include "seasonlv/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace seasonlv {
namespace {

constexpr double kUnitMargin = 1e-9;

Eigen::Matrix3d to_eigen(const Mat3& m) {
  Eigen::Matrix3d out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = m[i][j];
  return out;
}

// +1 when |lambda| > 1, -1 when < 1, 0 inside the margin.
int unit_side(double modulus) {
  if (std::abs(modulus - 1.0) <= kUnitMargin) return 0;
  return modulus > 1.0 ? 1 : -1;
}

// Eigenvalue of DS belonging to the invariant direction e_j at a point with
// x_j = 0: the spectrum of DS must contain DS_jj.
double direction_eigenvalue(const Mat3& ds, int j) {
  const Eigen::EigenSolver<Eigen::Matrix3d> es(to_eigen(ds), false);
  const auto ev = es.eigenvalues();
  double best = ev(0).real();
  double dist = std::abs(ev(0) - std::complex<double>(ds[j][j], 0.0));
  for (int n = 1; n < 3; ++n) {
    const double dn = std::abs(ev(n) - std::complex<double>(ds[j][j], 0.0));
    if (dn < dist) {
      dist = dn;
      best = ev(n).real();
    }
  }
  return best;
}

std::string pair_flag(const char* what, int i, int j) {
  return std::string(what) + "_" + std::to_string(i + 1) + std::to_string(j + 1);
}

}  // namespace

LGMap LGMap::from(const ModelParams& params) { return LGMap{params.net_growth(), params.a}; }

Vec3 lg_apply(const LGMap& m, const Vec3& x) {
  Vec3 out{};
  for (int i = 0; i < 3; ++i) out[i] = (1.0 + m.r[i]) * x[i] / (1.0 + dot(m.a[i], x));
  return out;
}

Mat3 lg_jacobian(const LGMap& m, const Vec3& x) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i) {
    const double den = 1.0 + dot(m.a[i], x);
    for (int j = 0; j < 3; ++j) {
      out[i][j] = -(1.0 + m.r[i]) * x[i] * m.a[i][j] / (den * den);
      if (i == j) out[i][j] += (1.0 + m.r[i]) / den;
    }
  }
  return out;
}

LGSignature lg_signature(const LGMap& m) {
  LGSignature out;
  BoundarySignature sig;

  for (int i = 0; i < 3; ++i) {
    if (!(m.r[i] > 0.0)) {
      out.degenerate_flags.emplace_back("inadmissible");
      return out;
    }
    Vec3 q{};
    q[i] = m.r[i] / m.a[i][i];
    out.axial[i] = q;
    const Mat3 ds = lg_jacobian(m, q);
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      const int side = unit_side(std::abs(direction_eigenvalue(ds, j)));
      if (side == 0) out.degenerate_flags.push_back(pair_flag("gamma", i, j));
      // q_i repels toward species j when that eigenvalue exceeds 1
      sig.pattern.gamma[gamma_slot(i, j)] = side;
    }
  }

  for (int k = 0; k < 3; ++k) {
    const auto [i, j] = others(k);
    Eigen::Matrix2d block;
    block << m.a[i][i], m.a[i][j], m.a[j][i], m.a[j][j];
    const Eigen::Vector2d rhs(m.r[i], m.r[j]);
    const Eigen::Vector2d v = block.fullPivLu().solve(rhs);
    const double vscale = v.cwiseAbs().maxCoeff();
    if (!(v(0) > 1e-12 * vscale && v(1) > 1e-12 * vscale)) continue;
    Vec3 x{};
    x[i] = v(0);
    x[j] = v(1);
    out.planar[k] = x;

    const Mat3 ds = lg_jacobian(m, x);
    Eigen::Matrix2d sub;
    sub << ds[i][i], ds[i][j], ds[j][i], ds[j][j];
    const Eigen::EigenSolver<Eigen::Matrix2d> es(sub, false);
    int outside = 0;
    for (int n = 0; n < 2; ++n) {
      const int side = unit_side(std::abs(es.eigenvalues()(n)));
      if (side == 0) out.degenerate_flags.push_back("in_plane_" + std::to_string(k + 1));
      outside += side > 0;
    }
    out.in_plane[k] = outside == 0 ? Along::Attracts : Along::Repels;

    const int across = unit_side(std::abs(direction_eigenvalue(ds, k)));
    if (across == 0) out.degenerate_flags.push_back("transverse_" + std::to_string(k + 1));
    sig.pattern.transverse[k] = -across;
  }

  if (out.degenerate_flags.empty()) out.signature = sig;
  return out;
}

}  // namespace seasonlv
