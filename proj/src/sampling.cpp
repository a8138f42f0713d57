#include "seasonlv/sampling.hpp"

#include <cmath>

namespace seasonlv {

ModelParams sample_params(std::mt19937_64& rng, const SampleBox& box) {
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  ModelParams p;
  p.omega = uni(box.omega_lo, box.omega_hi);
  p.phi = uni(box.phi_lo, box.phi_hi);
  for (int i = 0; i < 3; ++i) p.mu[i] = uni(box.mu_lo, box.mu_hi);
  for (int i = 0; i < 3; ++i) p.b[i] = uni(box.b_lo, box.b_hi);
  const double la = std::log(box.a_lo), hb = std::log(box.a_hi);
  for (auto& row : p.a)
    for (auto& v : row) v = std::exp(uni(la, hb));
  return p;
}

ModelParams sample_admissible(std::mt19937_64& rng, const SampleBox& box) {
  for (;;) {
    ModelParams p = sample_params(rng, box);
    const Vec3 r = p.net_growth();
    if (r[0] > 0.0 && r[1] > 0.0 && r[2] > 0.0) return p;
  }
}

}  // namespace seasonlv
