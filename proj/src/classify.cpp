#include "seasonlv/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "seasonlv/errors.hpp"

namespace seasonlv {
namespace {

struct Realizable {
  std::array<SignPattern, 64> patterns{};
  std::array<InteriorKind, 64> kinds{};
  int count = 0;
};

constexpr Realizable enumerate_realizable() {
  Realizable out;
  for (int gm = 0; gm < 64; ++gm) {
    for (int tm = 0; tm < 27; ++tm) {
      SignPattern s;
      for (int b = 0; b < 6; ++b) s.gamma[b] = (gm >> b) & 1 ? -1 : 1;
      s.transverse = {tm % 3 - 1, (tm / 3) % 3 - 1, tm / 9 - 1};
      const auto kind = realize(s);
      if (!kind) continue;
      const SignPattern c = canonical_form(s).first;
      bool seen = false;
      for (int n = 0; n < out.count; ++n)
        if (out.patterns[n] == c) seen = true;
      if (seen) continue;
      if (out.count == 64) throw "too many classes";
      out.patterns[out.count] = c;
      out.kinds[out.count] = *kind;
      ++out.count;
    }
  }
  return out;
}

constexpr Realizable kRealizable = enumerate_realizable();
static_assert(kRealizable.count == kClassCount, "boundary sign patterns must give 33 classes");

constexpr int planar_count(const SignPattern& s) {
  return (s.transverse[0] != 0) + (s.transverse[1] != 0) + (s.transverse[2] != 0);
}

struct Anchor {
  int id;
  SignPattern pattern;
};

// Classes whose boundary dynamics are described explicitly; the pattern for
// 20 is given in its original labeling and canonicalized below.
constexpr std::array<Anchor, 6> kAnchors{{
    {20, {{-1, -1, -1, -1, 1, -1}, {-1, 0, -1}}},
    {26, {{-1, -1, -1, 1, 1, 1}, {-1, 0, 1}}},
    {27, {{-1, 1, 1, -1, -1, 1}, {0, 0, 0}}},
    {29, {{-1, 1, 1, -1, 1, 1}, {0, -1, 0}}},
    {31, {{-1, 1, 1, 1, 1, 1}, {-1, -1, 0}}},
    {33, {{1, 1, 1, 1, 1, 1}, {-1, -1, -1}}},
}};

constexpr std::array<ClassEntry, kClassCount> build_table() {
  std::array<ClassEntry, kClassCount> table{};
  std::array<bool, kClassCount> used{};
  std::array<bool, kClassCount + 1> id_taken{};

  for (const auto& anchor : kAnchors) {
    const SignPattern c = canonical_form(anchor.pattern).first;
    int hit = -1;
    for (int n = 0; n < kClassCount; ++n)
      if (kRealizable.patterns[n] == c) hit = n;
    if (hit < 0) throw "anchor pattern is not realizable";
    table[anchor.id - 1] = {anchor.id, c, kRealizable.kinds[hit]};
    used[hit] = true;
    id_taken[anchor.id] = true;
  }

  // Remaining classes fill the free ids of their range in order of
  // (number of planar points, canonical pattern).
  struct Range {
    InteriorKind kind;
    int lo, hi;
  };
  for (const Range range : {Range{InteriorKind::None, 1, 18}, Range{InteriorKind::NegativeDet, 19, 25},
                            Range{InteriorKind::PositiveDet, 26, 33}}) {
    int next = range.lo;
    for (;;) {
      int pick = -1;
      for (int n = 0; n < kClassCount; ++n) {
        if (used[n] || kRealizable.kinds[n] != range.kind) continue;
        const SignPattern& s = kRealizable.patterns[n];
        if (pick < 0) {
          pick = n;
          continue;
        }
        const SignPattern& b = kRealizable.patterns[pick];
        if (planar_count(s) < planar_count(b) || (planar_count(s) == planar_count(b) && s < b)) pick = n;
      }
      if (pick < 0) break;
      while (next <= range.hi && id_taken[next]) ++next;
      if (next > range.hi) throw "class range overflow";
      table[next - 1] = {next, kRealizable.patterns[pick], range.kind};
      used[pick] = true;
      id_taken[next] = true;
    }
  }
  for (int id = 1; id <= kClassCount; ++id)
    if (!id_taken[id]) throw "class id left unassigned";
  for (const auto& e : table) {
    const bool ok = (e.id <= 18 && e.interior == InteriorKind::None) ||
                    (e.id >= 19 && e.id <= 25 && e.interior == InteriorKind::NegativeDet) ||
                    (e.id >= 26 && e.interior == InteriorKind::PositiveDet);
    if (!ok) throw "class id outside its interior range";
  }
  return table;
}

constexpr std::array<ClassEntry, kClassCount> kTable = build_table();

std::string pair_name(const char* what, int i, int j) {
  return std::string(what) + "_" + std::to_string(i + 1) + std::to_string(j + 1);
}

}  // namespace

const std::array<ClassEntry, kClassCount>& class_table() { return kTable; }

int enumerate_class_count() { return enumerate_realizable().count; }

std::string to_string(Along a) { return a == Along::Attracts ? "attracts" : "repels"; }

Stability BoundarySignature::axial_type(int i) const {
  const auto [j, k] = others(i);
  const int gj = pattern.g(i, j), gk = pattern.g(i, k);
  if (gj > 0 && gk > 0) return Stability::Repeller;
  if (gj < 0 && gk < 0) return Stability::Attractor;
  return Stability::Saddle;
}

bool BoundarySignature::planar_exists(int k) const { return pattern.transverse[k] != 0; }

std::optional<Along> BoundarySignature::planar_boundary(int k) const {
  if (!planar_exists(k)) return std::nullopt;
  const auto [i, j] = others(k);
  return pattern.g(i, j) > 0 ? Along::Attracts : Along::Repels;
}

std::optional<Along> BoundarySignature::planar_transverse(int k) const {
  if (!planar_exists(k)) return std::nullopt;
  return pattern.transverse[k] > 0 ? Along::Attracts : Along::Repels;
}

std::optional<Stability> BoundarySignature::planar_type(int k) const {
  const auto along = planar_boundary(k);
  if (!along) return std::nullopt;
  const auto across = *planar_transverse(k);
  if (*along == Along::Attracts && across == Along::Attracts) return Stability::Attractor;
  if (*along == Along::Repels && across == Along::Repels) return Stability::Repeller;
  return Stability::Saddle;
}

SignatureResult signature(const ModelParams& params) {
  const DerivedParams d = derive(params);
  SignatureResult out;
  if (!d.admissible) {
    out.degenerate_flags.emplace_back("inadmissible");
    return out;
  }
  BoundarySignature sig;
  for (int s = 0; s < 6; ++s) {
    const auto [i, j] = kGammaPairs[s];
    const int v = d.gamma_sign(i, j);
    if (v == 0) out.degenerate_flags.push_back(pair_name("gamma", i, j));
    sig.pattern.gamma[s] = v;
  }
  if (out.degenerate_flags.empty()) {
    for (int k = 0; k < 3; ++k) {
      if (!d.transverse[k]) continue;
      const int v = d.transverse_sign(k);
      if (v == 0) out.degenerate_flags.push_back("transverse_" + std::to_string(k + 1));
      sig.pattern.transverse[k] = v;
    }
  }
  if (out.degenerate_flags.empty()) out.signature = sig;
  return out;
}

ClassId canonical_class(const BoundarySignature& sig, int det_a_sign) {
  const auto [canon, perm] = canonical_form(sig.pattern);
  for (const auto& e : kTable) {
    if (e.canonical == canon) return ClassId{e.id, perm, det_a_sign};
  }
  throw UnknownSignature("boundary sign pattern is not realizable");
}

ClassId classify(const ModelParams& params) {
  const SignatureResult sr = signature(params);
  if (!sr.signature) {
    if (!sr.degenerate_flags.empty() && sr.degenerate_flags.front() == "inadmissible")
      throw Inadmissible("instance is inadmissible (some r_i <= 0)");
    std::string msg = "degenerate boundary signature:";
    for (const auto& f : sr.degenerate_flags) msg += " " + f;
    throw Degenerate(msg);
  }
  return canonical_class(*sr.signature, derive(params).det_a_sign());
}

const char* to_string(PositiveExpectation e) { return e == PositiveExpectation::None ? "none" : "at_least_one"; }

PositiveExpectation expected_positive_fp(int class_id) {
  if (class_id < 1 || class_id > kClassCount) throw std::out_of_range("class id must lie in 1..33");
  return class_id <= 18 ? PositiveExpectation::None : PositiveExpectation::AtLeastOne;
}

const char* to_string(ThetaVerdict v) {
  switch (v) {
    case ThetaVerdict::Attracts: return "attracts";
    case ThetaVerdict::Repels: return "repels";
    case ThetaVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

Mat3 w_matrix(const ModelParams& params, const Vec3& r) {
  Mat3 w{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) w[i][j] = r[j] - params.a[j][i] * r[i] / params.a[i][i];
  return w;
}

}  // namespace

double heteroclinic_theta_value(const ModelParams& params) {
  const Mat3 w = w_matrix(params, params.net_growth());
  return w[0][1] * w[1][2] * w[2][0] + w[1][0] * w[0][2] * w[2][1];
}

ThetaReport heteroclinic_theta(const ModelParams& params) {
  const ClassId c = classify(params);
  if (c.id != 27) throw WrongClass("heteroclinic theta needs class 27, instance is class " + std::to_string(c.id));
  const Mat3 w = w_matrix(params, params.net_growth());
  ThetaReport rep;
  const double p1 = w[0][1] * w[1][2] * w[2][0];
  const double p2 = w[1][0] * w[0][2] * w[2][1];
  rep.theta = p1 + p2;
  rep.scale = std::abs(p1) + std::abs(p2);
  const int s = margin_sign(rep.theta, rep.scale);
  rep.verdict = s < 0 ? ThetaVerdict::Attracts : (s > 0 ? ThetaVerdict::Repels : ThetaVerdict::Inconclusive);
  return rep;
}

}  // namespace seasonlv
