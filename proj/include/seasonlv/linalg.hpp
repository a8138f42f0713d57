#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>

namespace seasonlv {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;
using Complex = std::complex<double>;

constexpr Mat3 identity3() {
  return Mat3{Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0}, Vec3{0.0, 0.0, 1.0}};
}

constexpr Mat3 diag3(const Vec3& d) {
  return Mat3{Vec3{d[0], 0.0, 0.0}, Vec3{0.0, d[1], 0.0}, Vec3{0.0, 0.0, d[2]}};
}

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double norm_inf(const Vec3& a) {
  return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}

inline double norm2(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline double sum(const Vec3& a) { return a[0] + a[1] + a[2]; }

inline Vec3 operator*(const Mat3& m, const Vec3& x) {
  return {dot(m[0], x), dot(m[1], x), dot(m[2], x)};
}

inline Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
  return c;
}

inline Mat3 operator-(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i) c[i] = a[i] - b[i];
  return c;
}

inline double det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Sum of |terms| in the Leibniz expansion of det3; the natural scale for
/// deciding the sign of det3(m).
inline double det3_scale(const Mat3& m) {
  return std::abs(m[0][0] * m[1][1] * m[2][2]) + std::abs(m[0][0] * m[1][2] * m[2][1]) +
         std::abs(m[0][1] * m[1][0] * m[2][2]) + std::abs(m[0][1] * m[1][2] * m[2][0]) +
         std::abs(m[0][2] * m[1][0] * m[2][1]) + std::abs(m[0][2] * m[1][1] * m[2][0]);
}

inline double max_abs(const Mat3& m) {
  double out = 0.0;
  for (const auto& row : m) out = std::max(out, norm_inf(row));
  return out;
}

/// Solves m x = rhs by Gaussian elimination with partial pivoting.
/// Returns nullopt when a pivot vanishes relative to the matrix scale.
std::optional<Vec3> solve3(const Mat3& m, const Vec3& rhs);

/// Roots of the characteristic cubic of `m`, closed form, then one
/// inverse-iteration polish per root. When `det_override` is given it
/// replaces det(m) as the constant coefficient and fixes the smallest
/// real root through the product of roots; this keeps tiny eigenvalues
/// meaningful when det is known more accurately than the entries of m.
/// Sorted by ascending modulus.
std::array<Complex, 3> eigenvalues3(const Mat3& m, std::optional<double> det_override = {});

/// Eigenvalues of [[m00, m01], [m10, m11]], ascending modulus. A given
/// `det_override` fixes the smaller real root as det / larger root.
std::array<Complex, 2> eigenvalues2(double m00, double m01, double m10, double m11,
                                    std::optional<double> det_override = {});

/// Real roots of x^3 + c2 x^2 + c1 x + c0, with complex pairs, unsorted.
std::array<Complex, 3> cubic_roots(double c2, double c1, double c0);

}  // namespace seasonlv
