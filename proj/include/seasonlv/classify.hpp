#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seasonlv/fixedpoints.hpp"
#include "seasonlv/model.hpp"

namespace seasonlv {

/// Order of the six off-diagonal pairs in every gamma sign vector:
/// (1,2), (1,3), (2,1), (2,3), (3,1), (3,2).
inline constexpr std::array<std::array<int, 2>, 6> kGammaPairs{
    {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}};

constexpr int gamma_slot(int i, int j) {
  for (int s = 0; s < 6; ++s)
    if (kGammaPairs[s][0] == i && kGammaPairs[s][1] == j) return s;
  return -1;
}

/// Raw sign data of the boundary dynamics: six gamma signs (+-1) and, for
/// each k, the transverse behaviour of the planar point v_k (+1 attracts
/// into the interior, -1 repels, 0 when v_k does not exist).
struct SignPattern {
  std::array<int, 6> gamma{};
  std::array<int, 3> transverse{};

  constexpr int g(int i, int j) const { return gamma[gamma_slot(i, j)]; }

  /// Image under the relabeling old index i -> perm[i].
  constexpr SignPattern permuted(const std::array<int, 3>& perm) const {
    SignPattern out;
    for (int s = 0; s < 6; ++s)
      out.gamma[gamma_slot(perm[kGammaPairs[s][0]], perm[kGammaPairs[s][1]])] = gamma[s];
    for (int k = 0; k < 3; ++k) out.transverse[perm[k]] = transverse[k];
    return out;
  }

  constexpr auto operator<=>(const SignPattern&) const = default;
};

inline constexpr std::array<std::array<int, 3>, 6> kPermutations{
    {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

enum class Along { Attracts, Repels };

/// Boundary signature of one instance, with the labels derived from the
/// raw signs.
struct BoundarySignature {
  SignPattern pattern;

  /// Stability of q_i on the carrying simplex from (gamma_ij, gamma_ik).
  Stability axial_type(int i) const;
  bool planar_exists(int k) const;
  /// Behaviour of v_k along the boundary edge; nullopt when absent.
  std::optional<Along> planar_boundary(int k) const;
  /// Behaviour of v_k transverse to its plane; nullopt when absent.
  std::optional<Along> planar_transverse(int k) const;
  /// Stability of v_k on the carrying simplex; nullopt when absent.
  std::optional<Stability> planar_type(int k) const;

  bool operator==(const BoundarySignature&) const = default;
};

enum class InteriorKind { None, NegativeDet, PositiveDet };

/// Necessary conditions a boundary sign pattern must meet to come from a
/// real instance: planar existence matches gamma_ij == gamma_ji, local
/// transversality forced by where q_i and q_j sit relative to v_k, and
/// the index identity with the planar transverse signs tied to det A and
/// the sign pattern of A^{-1} r. Returns nullopt for unrealizable patterns,
/// otherwise whether a positive fixed point is forced and the sign of det A.
constexpr std::optional<InteriorKind> realize(const SignPattern& s) {
  for (int v : s.gamma)
    if (v != 1 && v != -1) return std::nullopt;
  for (int k = 0; k < 3; ++k) {
    const auto [i, j] = others(k);
    const bool exists = s.g(i, j) == s.g(j, i);
    if (exists != (s.transverse[k] != 0)) return std::nullopt;
    if (!exists) continue;
    if (s.transverse[k] != 1 && s.transverse[k] != -1) return std::nullopt;
    // q_i, q_j both beyond v_k's transverse zero set forces the sign
    const bool in_plane_stable = s.g(i, j) > 0;
    const bool beyond = s.g(i, k) < 0 && s.g(j, k) < 0;
    const bool within = s.g(i, k) > 0 && s.g(j, k) > 0;
    if (in_plane_stable && beyond && s.transverse[k] != 1) return std::nullopt;
    if (!in_plane_stable && within && s.transverse[k] != -1) return std::nullopt;
  }

  int axial_sum = 0;
  for (int i = 0; i < 3; ++i) {
    const auto [j, k] = others(i);
    const int up = (s.g(i, j) > 0) + (s.g(i, k) > 0);
    axial_sum += (up % 2 == 0) ? 1 : -1;
  }
  bool none = false, neg = false, pos = false;
  for (int d : {1, -1}) {
    for (int mask = 0; mask < 8; ++mask) {
      std::array<int, 3> sigma{(mask & 1) ? -1 : 1, (mask & 2) ? -1 : 1, (mask & 4) ? -1 : 1};
      bool ok = true;
      int planar_sum = 0;
      for (int k = 0; k < 3 && ok; ++k) {
        if (s.transverse[k] == 0) continue;
        const auto [i, j] = others(k);
        const int gk = s.g(i, j);
        if (s.transverse[k] != -sigma[k] * d * gk) ok = false;
        planar_sum += (((gk < 0) + (s.transverse[k] < 0)) % 2 == 0) ? 1 : -1;
      }
      if (!ok) continue;
      const bool interior = mask == 0;
      const int positive_sum = interior ? d : 0;
      if (axial_sum + 2 * planar_sum + 4 * positive_sum != 1) continue;
      if (!interior) none = true;
      else if (d < 0) neg = true;
      else pos = true;
    }
  }
  if (pos) return InteriorKind::PositiveDet;
  if (neg) return InteriorKind::NegativeDet;
  if (none) return InteriorKind::None;
  return std::nullopt;
}

/// Lexicographically least image over all six relabelings, and the first
/// relabeling attaining it.
constexpr std::pair<SignPattern, std::array<int, 3>> canonical_form(const SignPattern& s) {
  SignPattern best = s.permuted(kPermutations[0]);
  std::array<int, 3> arg = kPermutations[0];
  for (const auto& p : kPermutations) {
    const SignPattern img = s.permuted(p);
    if (img < best) {
      best = img;
      arg = p;
    }
  }
  return {best, arg};
}

struct ClassEntry {
  int id = 0;
  SignPattern canonical;
  InteriorKind interior = InteriorKind::None;
};

inline constexpr int kClassCount = 33;

/// The generated canonical table, ordered by class id.
const std::array<ClassEntry, kClassCount>& class_table();

/// Number of distinct realizable patterns modulo relabeling, recomputed
/// from scratch.
int enumerate_class_count();

struct SignatureResult {
  std::optional<BoundarySignature> signature;
  /// Quantities inside the sign margin, e.g. "gamma_12", "transverse_3".
  std::vector<std::string> degenerate_flags;
};

/// Boundary signature from closed-form arithmetic on DerivedParams.
/// Inadmissible instances are flagged "inadmissible".
SignatureResult signature(const ModelParams& params);

struct ClassId {
  int id = 0;
  /// Relabeling old index i -> permutation[i] taking the instance to the
  /// canonical representative.
  std::array<int, 3> permutation{};
  int det_a_sign = 0;
};

/// Throws UnknownSignature when the pattern is not in the table.
ClassId canonical_class(const BoundarySignature& sig, int det_a_sign);

enum class PositiveExpectation { None, AtLeastOne };
const char* to_string(PositiveExpectation e);

/// None for classes 1-18, AtLeastOne for 19-33. Throws std::out_of_range.
PositiveExpectation expected_positive_fp(int class_id);

enum class ThetaVerdict { Attracts, Repels, Inconclusive };
const char* to_string(ThetaVerdict v);

struct ThetaReport {
  double theta = 0.0;
  double scale = 0.0;
  ThetaVerdict verdict = ThetaVerdict::Inconclusive;
};

/// theta = w12 w23 w31 + w21 w13 w32 with w_ij = r_j - a_ji r_i / a_ii.
double heteroclinic_theta_value(const ModelParams& params);

/// Sign of theta decides whether the boundary heteroclinic cycle attracts.
/// Throws WrongClass unless the instance classifies as class 27.
ThetaReport heteroclinic_theta(const ModelParams& params);

/// Convenience: signature + canonical class. Throws Degenerate (with the
/// flags in the message) or Inadmissible.
ClassId classify(const ModelParams& params);

std::string to_string(Along a);

}  // namespace seasonlv
