#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acman/chern_algebra.hpp"

namespace acman {

/// A closed (or open) almost complex 2m-manifold, known only through its
/// Chern numbers. Open manifolds carry no table: there is no [M] to pair with.
struct ManifoldDescriptor {
  std::string name;
  int m = 0;
  bool closed = true;
  std::optional<ChernNumberTable> table;

  /// Throws OpenManifold when there is no fundamental class to pair with.
  const ChernNumberTable& require_table() const;
  bool operator==(const ManifoldDescriptor&) const = default;
};

ManifoldDescriptor make_closed(std::string name, ChernNumberTable table);
ManifoldDescriptor make_open(std::string name, int m);

/// Genus-g surface: <c1, [S]> = 2 - 2g.
ManifoldDescriptor riemann_surface(int genus);
/// CP^m with c = (1+x)^{m+1}: entry for lambda is prod binom(m+1, lambda_i).
ManifoldDescriptor projective_space(int m);
/// T^{2m}: trivial tangent bundle, every Chern number zero.
ManifoldDescriptor torus(int m);
/// Whitney product formula plus Kunneth evaluation on A x B.
ManifoldDescriptor product(const ManifoldDescriptor& a, const ManifoldDescriptor& b);

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using IntVector = std::vector<std::int64_t>;

bool is_symmetric(const IntMatrix& q);

/// Signature by exact congruent diagonalization over Q. Throws NotSymmetric.
int signature(const IntMatrix& q);
/// Exact determinant (same elimination).
Integer determinant(const IntMatrix& q);

/// E8 lattice form (positive definite, even, unimodular).
IntMatrix e8_form();
/// Hyperbolic plane [[0,1],[1,0]].
IntMatrix hyperbolic_form();
IntMatrix block_sum(const IntMatrix& a, const IntMatrix& b);
IntMatrix scaled(const IntMatrix& q, std::int64_t factor);

/// Closed oriented 4-manifold described by intersection form and c1.
class FourManifoldDescriptor {
 public:
  const std::string& name() const noexcept { return name_; }
  const IntMatrix& form() const noexcept { return q_; }
  const IntVector& c1() const noexcept { return c1_; }
  std::int64_t euler() const noexcept { return euler_; }
  bool torsion_free() const noexcept { return torsion_free_; }
  bool closed() const noexcept { return closed_; }
  std::size_t b2() const noexcept { return c1_.size(); }

  int signature() const noexcept { return signature_; }
  /// c1^T Q c1.
  std::int64_t c1_squared() const noexcept { return c1_squared_; }
  /// w2 = 0, i.e. c1 lies in 2H^2 (equivalently Q is even when unimodular).
  bool w2_trivial() const noexcept { return w2_trivial_; }

  bool operator==(const FourManifoldDescriptor&) const = default;

 private:
  friend FourManifoldDescriptor four_manifold(std::string, IntMatrix, IntVector, std::int64_t,
                                              bool, bool);
  FourManifoldDescriptor() = default;

  std::string name_;
  IntMatrix q_;
  IntVector c1_;
  std::int64_t euler_ = 0;
  bool torsion_free_ = true;
  bool closed_ = true;
  int signature_ = 0;
  std::int64_t c1_squared_ = 0;
  bool w2_trivial_ = true;
};

/// Validates and builds a descriptor. Throws NotSymmetric, ShapeMismatch,
/// NotCharacteristic, NotUnimodular (closed and torsion free only) or
/// SignatureMismatch (c1^2 - 2 chi != 3 sigma).
FourManifoldDescriptor four_manifold(std::string name, IntMatrix q, IntVector c1,
                                     std::int64_t euler, bool torsion_free, bool closed = true);

/// Formal connected sum; re-runs every validation of four_manifold. This
/// does not claim that an almost complex structure exists on the result.
FourManifoldDescriptor connected_sum(const FourManifoldDescriptor& a,
                                     const FourManifoldDescriptor& b);

// Catalog four-manifolds.
FourManifoldDescriptor four_torus();
FourManifoldDescriptor k3_surface();
FourManifoldDescriptor s2_times_s2();
FourManifoldDescriptor complex_projective_plane();

}  // namespace acman
