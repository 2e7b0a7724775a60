#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "acman/manifolds.hpp"

namespace acman {

enum class Verdict { Yes, No, Undetermined };
std::string_view to_string(Verdict v) noexcept;

enum class HomotopyGroupValue { Zero, Z, Z2, Unknown };
std::string_view to_string(HomotopyGroupValue v) noexcept;

struct LedgerEntry {
  /// e.g. "V_4(R^10)" or "pi_2(Gamma(3))"
  std::string space;
  /// Connectivity (integer) or homotopy-group value.
  std::variant<std::int64_t, HomotopyGroupValue> fact;
  /// Which obstruction the fact kills, or which condition failed.
  std::string role;

  bool operator==(const LedgerEntry&) const = default;
};

struct EmbeddingDecision {
  Verdict verdict = Verdict::Undetermined;
  int target_dim = 0;
  std::optional<std::int64_t> invariant_I;
  std::optional<std::int64_t> double_points;
  std::optional<std::int64_t> normal_euler_number;
  std::optional<std::int64_t> regular_homotopy_class;
  std::vector<LedgerEntry> ledger;
  std::vector<std::string> citations;
  std::vector<std::string> notes;
};

/// I(M,J) = -1/2 <s_m, [M]>. Throws OpenManifold or IntegralityViolation.
std::int64_t invariant_I(const ManifoldDescriptor& m);

/// Pseudo-holomorphic embedding into R^{4m+2}: always possible.
EmbeddingDecision decide_embed_R_4m_plus_2(const ManifoldDescriptor& m);
/// Pseudo-holomorphic immersion into R^{4m} iff I >= 0, with exactly I
/// (positive) double points.
EmbeddingDecision decide_immerse_R_4m(const ManifoldDescriptor& m);
/// Pseudo-holomorphic embedding into R^{4m}: iff I = 0 for closed M,
/// always for open M.
EmbeddingDecision decide_embed_R_4m(const ManifoldDescriptor& m);

/// Closed 4-manifold into R^6 pseudo-holomorphically: iff sigma = chi = 0 and
/// c1 = 0, when H^2 has no 2-torsion. Undetermined otherwise.
EmbeddingDecision decide_embed_R6(const FourManifoldDescriptor& m);
/// Smooth embedding into R^6 (Cappell-Shaneson): iff w2 = 0 and sigma = 0.
EmbeddingDecision smooth_embed_R6(const FourManifoldDescriptor& m);

/// Omega with 2 Omega = c1. Throws NotDivisible on an odd coordinate and
/// InvalidArgument when H^2 may have 2-torsion.
IntVector obstruction_class_R6(const FourManifoldDescriptor& m);

/// Dold-Whitney: parallelizable iff w2 = 0 and sigma = chi = 0.
bool parallelizable_4mfd(const FourManifoldDescriptor& m);

/// chi/2, the degree of the generalized Gauss map in codimension two.
std::int64_t curvatura_integra(const ManifoldDescriptor& m);

/// pi_k(SO(2n)/U(n)) in the stable range k <= 2n-2, Unknown above it.
HomotopyGroupValue bott_group(int k, int n);

enum class Field { Real, Complex };
/// Connectivity of the Stiefel manifold of m-frames in F^n:
/// n - m - 1 over R, 2(n - m) over C.
int stiefel_connectivity(Field field, int m, int n);

}  // namespace acman
