#include "seasonlv/model.hpp"

#include <cmath>
#include <sstream>

namespace seasonlv {

int margin_sign(double value, double scale) {
  const double margin = kSignMargin * std::abs(scale);
  if (value > margin) return 1;
  if (value < -margin) return -1;
  return 0;
}

double ModelParams::decay_factor(int i) const {
  return std::exp(-mu[i] * (1.0 - phi) * omega);
}

Vec3 ModelParams::decay_factors() const {
  return {decay_factor(0), decay_factor(1), decay_factor(2)};
}

Vec3 ModelParams::net_growth() const {
  Vec3 r{};
  for (int i = 0; i < 3; ++i) r[i] = b[i] * phi * omega - mu[i] * (1.0 - phi) * omega;
  return r;
}

std::string Violation::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case ViolationKind::NonpositiveEntry: os << "NonpositiveEntry("; break;
    case ViolationKind::PhiOutOfRange: os << "PhiOutOfRange("; break;
    case ViolationKind::NonFinite: os << "NonFinite("; break;
  }
  os << field;
  if (row >= 0) os << ',' << row + 1;
  if (col >= 0) os << ',' << col + 1;
  os << ')';
  return os.str();
}

std::vector<Violation> validate(const ModelParams& params) {
  std::vector<Violation> out;
  auto check = [&](double v, const char* field, int row, int col) {
    if (!std::isfinite(v)) {
      out.push_back({ViolationKind::NonFinite, field, row, col});
    } else if (v <= 0.0) {
      out.push_back({ViolationKind::NonpositiveEntry, field, row, col});
    }
  };
  check(params.omega, "omega", -1, -1);
  if (std::isfinite(params.phi) && params.phi > 1.0) {
    out.push_back({ViolationKind::PhiOutOfRange, "phi"});
  } else {
    check(params.phi, "phi", -1, -1);
  }
  for (int i = 0; i < 3; ++i) check(params.mu[i], "mu", i, -1);
  for (int i = 0; i < 3; ++i) check(params.b[i], "b", i, -1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) check(params.a[i][j], "a", i, j);
  return out;
}

int DerivedParams::transverse_sign(int k) const {
  if (!transverse[k]) return 0;
  return margin_sign(*transverse[k], transverse_scale[k]);
}

DerivedParams derive(const ModelParams& params) {
  if (auto violations = validate(params); !violations.empty()) {
    std::string msg = "invalid parameters:";
    for (const auto& v : violations) msg += " " + v.to_string();
    throw InvalidParams(msg);
  }
  const Mat3& a = params.a;
  DerivedParams d;
  d.r = params.net_growth();
  const Vec3& r = d.r;
  d.admissible = r[0] > 0.0 && r[1] > 0.0 && r[2] > 0.0;

  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      d.gamma[i][j] = a[i][i] * r[j] - a[j][i] * r[i];
      d.gamma_scale[i][j] = std::abs(a[i][i] * r[j]) + std::abs(a[j][i] * r[i]);
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j || !(d.gamma[i][j] * d.gamma[j][i] > 0.0)) continue;
      const double minor = a[i][i] * a[j][j] - a[i][j] * a[j][i];
      d.beta[i][j] = (a[j][j] * r[i] - a[i][j] * r[j]) / minor;
    }
  }
  for (int k = 0; k < 3; ++k) {
    const auto [i, j] = others(k);
    if (!d.beta[i][j] || !d.beta[j][i]) continue;
    const double ti = a[k][i] * *d.beta[i][j];
    const double tj = a[k][j] * *d.beta[j][i];
    d.transverse[k] = ti + tj - r[k];
    d.transverse_scale[k] = std::abs(ti) + std::abs(tj) + std::abs(r[k]);
  }
  d.det_a = det3(a);
  d.det_a_scale = det3_scale(a);

  bool stable = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && d.gamma_sign(i, j) == 0) stable = false;
  for (int k = 0; k < 3; ++k)
    if (d.transverse[k] && d.transverse_sign(k) == 0) stable = false;
  d.boundary_stable = stable;
  return d;
}

StateVec::StateVec(const Vec3& x) : x_(x) {
  for (double v : x) {
    if (!std::isfinite(v)) throw InvalidState("state has a non-finite component");
    if (v < 0.0) throw InvalidState("state has a negative component");
  }
}

}  // namespace seasonlv
