#include "seasonlv/linalg.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace seasonlv {
namespace {

template <typename T>
using Vec3T = std::array<T, 3>;
template <typename T>
using Mat3T = std::array<Vec3T<T>, 3>;

template <typename T>
std::optional<Vec3T<T>> solve_pivoted(Mat3T<T> m, Vec3T<T> rhs, double tiny) {
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int row = col + 1; row < 3; ++row)
      if (std::abs(m[row][col]) > std::abs(m[piv][col])) piv = row;
    if (!(std::abs(m[piv][col]) > tiny)) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int row = col + 1; row < 3; ++row) {
      const T f = m[row][col] / m[col][col];
      for (int k = col; k < 3; ++k) m[row][k] -= f * m[col][k];
      rhs[row] -= f * rhs[col];
    }
  }
  Vec3T<T> x{};
  for (int row = 2; row >= 0; --row) {
    T acc = rhs[row];
    for (int k = row + 1; k < 3; ++k) acc -= m[row][k] * x[k];
    x[row] = acc / m[row][row];
  }
  return x;
}

double cubic_newton(double x, double c2, double c1, double c0) {
  for (int it = 0; it < 4; ++it) {
    const double p = ((x + c2) * x + c1) * x + c0;
    const double dp = (3.0 * x + 2.0 * c2) * x + c1;
    if (dp == 0.0) break;
    const double nx = x - p / dp;
    if (!std::isfinite(nx)) break;
    if (std::abs(nx - x) <= 4 * std::numeric_limits<double>::epsilon() * std::abs(x)) {
      x = nx;
      break;
    }
    x = nx;
  }
  return x;
}

// Largest-magnitude real root of the depressed form, mapped back.
double dominant_real_root(double c2, double c1, double c0) {
  const double shift = c2 / 3.0;
  const double p = c1 - c2 * c2 / 3.0;
  const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
  const double half_q = q / 2.0;
  const double third_p = p / 3.0;
  const double disc = half_q * half_q + third_p * third_p * third_p;
  double t = 0.0;
  if (p == 0.0) {
    t = std::cbrt(-q);
  } else if (disc > 0.0) {
    const double s = std::sqrt(disc);
    const double a = -std::copysign(std::cbrt(std::abs(half_q) + s), half_q);
    t = (a != 0.0) ? a - third_p / a : 0.0;
  } else {
    const double rho = std::sqrt(-third_p);
    const double arg = std::clamp(-half_q / (rho * rho * rho), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    double best = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double cand = 2.0 * rho * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - shift;
      if (std::abs(cand) >= std::abs(best)) best = cand;
    }
    return best;
  }
  return t - shift;
}

}  // namespace

std::optional<Vec3> solve3(const Mat3& m, const Vec3& rhs) {
  const double tiny = 1e-300 + 1e-15 * max_abs(m) * std::numeric_limits<double>::epsilon();
  return solve_pivoted<double>(m, rhs, tiny);
}

std::array<Complex, 3> cubic_roots(double c2, double c1, double c0) {
  const double x1 = cubic_newton(dominant_real_root(c2, c1, c0), c2, c1, c0);
  // deflate: x^3 + c2 x^2 + c1 x + c0 = (x - x1)(x^2 + e1 x + e0)
  const double e1 = c2 + x1;
  const double e0 = (x1 != 0.0) ? -c0 / x1 : c1 + e1 * x1;
  const double disc = e1 * e1 - 4.0 * e0;
  std::array<Complex, 3> out{Complex(x1, 0.0), Complex(), Complex()};
  if (disc >= 0.0) {
    const double qq = -0.5 * (e1 + std::copysign(std::sqrt(disc), e1));
    const double x2 = qq;
    const double x3 = (qq != 0.0) ? e0 / qq : 0.0;
    out[1] = Complex(cubic_newton(x2, c2, c1, c0), 0.0);
    out[2] = Complex(cubic_newton(x3, c2, c1, c0), 0.0);
  } else {
    const double re = -0.5 * e1;
    const double im = 0.5 * std::sqrt(-disc);
    out[1] = Complex(re, im);
    out[2] = Complex(re, -im);
  }
  return out;
}

std::array<Complex, 2> eigenvalues2(double m00, double m01, double m10, double m11,
                                    std::optional<double> det_override) {
  const double half_tr = 0.5 * (m00 + m11);
  const double half_diff = 0.5 * (m00 - m11);
  const double disc = half_diff * half_diff + m01 * m10;
  const double det = det_override.value_or(m00 * m11 - m01 * m10);
  std::array<Complex, 2> out;
  if (disc >= 0.0) {
    const double big = half_tr + std::copysign(std::sqrt(disc), half_tr);
    const double small = (big != 0.0) ? det / big : 0.0;
    out = {Complex(small, 0.0), Complex(big, 0.0)};
  } else {
    const double im = std::sqrt(-disc);
    out = {Complex(half_tr, im), Complex(half_tr, -im)};
  }
  if (std::abs(out[0]) > std::abs(out[1])) std::swap(out[0], out[1]);
  return out;
}

std::array<Complex, 3> eigenvalues3(const Mat3& m, std::optional<double> det_override) {
  const double trace = m[0][0] + m[1][1] + m[2][2];
  const double minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) +
                        (m[0][0] * m[2][2] - m[0][2] * m[2][0]) +
                        (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
  const double det = det_override.value_or(det3(m));
  auto roots = cubic_roots(-trace, minors, -det);

  const Mat3T<Complex> mc{Vec3T<Complex>{m[0][0], m[0][1], m[0][2]},
                          Vec3T<Complex>{m[1][0], m[1][1], m[1][2]},
                          Vec3T<Complex>{m[2][0], m[2][1], m[2][2]}};
  const double scale = std::max(max_abs(m), 1e-300);
  auto residual = [&](const Vec3T<Complex>& v, Complex lambda) {
    double r = 0.0;
    for (int i = 0; i < 3; ++i) {
      Complex acc = -lambda * v[i];
      for (int j = 0; j < 3; ++j) acc += mc[i][j] * v[j];
      r = std::max(r, std::abs(acc));
    }
    return r;
  };

  for (auto& lambda : roots) {
    const Complex shift = lambda * (1.0 + 1e-13) + Complex(1e-14 * scale, 0.0);
    Mat3T<Complex> shifted = mc;
    for (int i = 0; i < 3; ++i) shifted[i][i] -= shift;
    auto v = solve_pivoted<Complex>(shifted, {Complex(1.0), Complex(0.7), Complex(0.3)}, 1e-300);
    if (!v) continue;
    double nrm = 0.0;
    for (const auto& c : *v) nrm += std::norm(c);
    nrm = std::sqrt(nrm);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) continue;
    for (auto& c : *v) c /= nrm;
    Complex num(0.0), den(0.0);
    for (int i = 0; i < 3; ++i) {
      Complex mv(0.0);
      for (int j = 0; j < 3; ++j) mv += mc[i][j] * (*v)[j];
      num += std::conj((*v)[i]) * mv;
      den += std::conj((*v)[i]) * (*v)[i];
    }
    const Complex polished = num / den;
    if (lambda.imag() == 0.0 && std::abs(polished.imag()) > 0.0) continue;
    if (residual(*v, polished) < residual(*v, lambda)) lambda = polished;
  }

  std::sort(roots.begin(), roots.end(),
            [](const Complex& a, const Complex& b) { return std::abs(a) < std::abs(b); });

  if (det_override) {
    const Complex rest = roots[1] * roots[2];
    if (roots[0].imag() == 0.0 && std::abs(rest) > 0.0 &&
        std::abs(rest.imag()) <= 1e-12 * std::abs(rest)) {
      roots[0] = Complex(*det_override / rest.real(), 0.0);
    }
  }
  return roots;
}

}  // namespace seasonlv
