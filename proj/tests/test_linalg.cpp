#include <Eigen/Eigenvalues>
#include <algorithm>
#include <random>

#include "doctest.h"
#include "seasonlv/linalg.hpp"

using namespace seasonlv;

namespace {

std::array<Complex, 3> eigen_reference(const Mat3& m) {
  Eigen::Matrix3d e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e(i, j) = m[i][j];
  const Eigen::Vector3cd ev = Eigen::EigenSolver<Eigen::Matrix3d>(e).eigenvalues();
  std::array<Complex, 3> out{ev[0], ev[1], ev[2]};
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    if (std::abs(std::abs(a) - std::abs(b)) > 1e-12 * std::abs(b)) return std::abs(a) < std::abs(b);
    return a.imag() < b.imag();
  });
  return out;
}

double match_error(std::array<Complex, 3> got, const std::array<Complex, 3>& want) {
  double worst = 0.0;
  for (const auto& w : want) {
    auto it = std::min_element(got.begin(), got.end(),
                               [&](Complex a, Complex b) { return std::abs(a - w) < std::abs(b - w); });
    worst = std::max(worst, std::abs(*it - w) / std::max(1.0, std::abs(w)));
    *it = Complex(1e300, 0.0);
  }
  return worst;
}

}  // namespace

TEST_CASE("solve3 matches a hand-checked system") {
  const Mat3 m{Vec3{2, 1, 0}, Vec3{1, 3, 1}, Vec3{0, 1, 4}};
  const auto x = solve3(m, Vec3{3, 5, 5});
  REQUIRE(x);
  CHECK((*x)[0] == doctest::Approx(1.0));
  CHECK((*x)[1] == doctest::Approx(1.0));
  CHECK((*x)[2] == doctest::Approx(1.0));
  CHECK_FALSE(solve3(Mat3{Vec3{1, 2, 3}, Vec3{2, 4, 6}, Vec3{0, 0, 1}}, Vec3{1, 1, 1}));
}

TEST_CASE("cubic roots of a known factorization") {
  // (x - 1)(x - 2)(x - 3)
  auto roots = cubic_roots(-6.0, 11.0, -6.0);
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  for (int k = 0; k < 3; ++k) {
    CHECK(roots[k].real() == doctest::Approx(k + 1.0).epsilon(1e-12));
    CHECK(std::abs(roots[k].imag()) < 1e-12);
  }
  // (x - 2)(x^2 + 1)
  const auto c = cubic_roots(-2.0, 1.0, -2.0);
  int complex_count = 0;
  for (const auto& r : c) complex_count += std::abs(r.imag()) > 0.5;
  CHECK(complex_count == 2);
}

TEST_CASE("eigenvalues3 agrees with Eigen on random matrices") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0.0;
  for (int trial = 0; trial < 2000; ++trial) {
    Mat3 m{};
    for (auto& row : m)
      for (auto& v : row) v = u(rng);
    worst = std::max(worst, match_error(eigenvalues3(m), eigen_reference(m)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("eigenvalues3 output is sorted by modulus") {
  const Mat3 m{Vec3{0.5, 0.1, 0}, Vec3{0, 3.0, 0.2}, Vec3{0, 0, -1.5}};
  const auto ev = eigenvalues3(m);
  CHECK(std::abs(ev[0]) <= std::abs(ev[1]));
  CHECK(std::abs(ev[1]) <= std::abs(ev[2]));
  CHECK(ev[0].real() == doctest::Approx(0.5));
  CHECK(ev[2].real() == doctest::Approx(3.0));
}

TEST_CASE("det override keeps a tiny eigenvalue accurate") {
  const double tiny = 1e-30;
  const Mat3 m{Vec3{tiny, 0, 0}, Vec3{0, 2.0, 1.0}, Vec3{0, 0, 5.0}};
  const auto ev = eigenvalues3(m, tiny * 10.0);
  CHECK(ev[0].real() == doctest::Approx(tiny).epsilon(1e-12));
  const auto ev2 = eigenvalues2(2.0, 1.0, 0.0, 1e-20, 2e-20);
  CHECK(ev2[0].real() == doctest::Approx(1e-20).epsilon(1e-12));
  CHECK(ev2[1].real() == doctest::Approx(2.0));
}
