#pragma once

#include <cstdint>
#include <random>

#include "seasonlv/model.hpp"

namespace seasonlv {

/// Uniform box for random instances; competition coefficients are drawn
/// log-uniformly so that every sign pattern of gamma is reachable.
struct SampleBox {
  double omega_lo = 2.0, omega_hi = 10.0;
  double phi_lo = 0.4, phi_hi = 0.9;
  double mu_lo = 0.05, mu_hi = 0.3;
  double b_lo = 0.2, b_hi = 1.0;
  double a_lo = 0.05, a_hi = 2.0;
};

/// One draw from the box; r_i may be nonpositive.
ModelParams sample_params(std::mt19937_64& rng, const SampleBox& box = {});

/// Redraws until every r_i > 0.
ModelParams sample_admissible(std::mt19937_64& rng, const SampleBox& box = {});

}  // namespace seasonlv
