#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "seasonlv/classify.hpp"
#include "seasonlv/model.hpp"

namespace seasonlv {

/// The Leslie-Gower map S(x)_i = (1 + r_i) x_i / (1 + (A x)_i) sharing r
/// and A with a seasonal instance.
struct LGMap {
  Vec3 r{};
  Mat3 a{};

  static LGMap from(const ModelParams& params);
};

Vec3 lg_apply(const LGMap& m, const Vec3& x);

/// Exact derivative of the rational map.
Mat3 lg_jacobian(const LGMap& m, const Vec3& x);

struct LGSignature {
  std::optional<BoundarySignature> signature;
  std::vector<std::string> degenerate_flags;
  /// q_i = (r_i / a_ii) e_i
  std::array<Vec3, 3> axial{};
  /// v_k from the 2x2 linear solve; nullopt when it has a nonpositive entry.
  std::array<std::optional<Vec3>, 3> planar{};
  /// Behaviour of v_k inside its plane from the 2x2 block spectrum.
  std::array<std::optional<Along>, 3> in_plane{};
};

/// Boundary signature of the Leslie-Gower map computed from its own fixed
/// points and Jacobian spectra (Eigen), without the gamma / beta formulas.
LGSignature lg_signature(const LGMap& m);

}  // namespace seasonlv
