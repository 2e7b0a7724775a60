#include "acman/manifolds.hpp"

#include <limits>
#include <utility>

#include "acman/errors.hpp"

namespace acman {

namespace {

std::int64_t to_int64(const Integer& value, const char* what) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " overflows 64-bit integers");
  }
  return static_cast<std::int64_t>(value);
}

Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace

const ChernNumberTable& ManifoldDescriptor::require_table() const {
  if (!closed || !table) {
    throw Error(ErrorCode::OpenManifold,
                "'" + name + "' is open; pairings against [M] are undefined");
  }
  return *table;
}

ManifoldDescriptor make_closed(std::string name, ChernNumberTable table) {
  const int m = table.m();
  return ManifoldDescriptor{std::move(name), m, true, std::move(table)};
}

ManifoldDescriptor make_open(std::string name, int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "complex dimension must be positive");
  return ManifoldDescriptor{std::move(name), m, false, std::nullopt};
}

ManifoldDescriptor riemann_surface(int genus) {
  if (genus < 0) throw Error(ErrorCode::InvalidArgument, "genus must be non-negative");
  return make_closed("genus-" + std::to_string(genus),
                     ChernNumberTable(1, {{Partition{1}, 2 - 2 * std::int64_t{genus}}}));
}

ManifoldDescriptor projective_space(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "projective_space: m must be >= 1");
  std::map<Partition, std::int64_t> entries;
  for (const auto& lambda : partitions_of(m)) {
    Integer value = 1;
    for (int part : lambda.parts()) value *= binomial(m + 1, part);
    entries.emplace(lambda, to_int64(value, "Chern number"));
  }
  return make_closed("cp" + std::to_string(m), ChernNumberTable(m, std::move(entries)));
}

ManifoldDescriptor torus(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "torus: m must be >= 1");
  std::map<Partition, std::int64_t> entries;
  for (const auto& lambda : partitions_of(m)) entries.emplace(lambda, 0);
  return make_closed("torus" + std::to_string(m), ChernNumberTable(m, std::move(entries)));
}

ManifoldDescriptor product(const ManifoldDescriptor& a, const ManifoldDescriptor& b) {
  const auto& ta = a.require_table();
  const auto& tb = b.require_table();
  const int ma = ta.m();
  const int mb = tb.m();

  // Bigraded monomials c_alpha(A) c_beta(B), truncated above each factor's top degree.
  using Bigraded = std::map<std::pair<Partition, Partition>, Integer>;
  auto multiply_truncated = [&](const Bigraded& x, const Bigraded& y) {
    Bigraded out;
    for (const auto& [kx, cx] : x) {
      for (const auto& [ky, cy] : y) {
        Partition alpha = kx.first * ky.first;
        Partition beta = kx.second * ky.second;
        if (alpha.weight() > ma || beta.weight() > mb) continue;
        out[{std::move(alpha), std::move(beta)}] += cx * cy;
      }
    }
    return out;
  };
  auto class_of_product = [&](int k) {
    // c_k(A x B) = sum_{i+j=k} c_i(A) c_j(B)
    Bigraded out;
    for (int i = 0; i <= k; ++i) {
      const int j = k - i;
      if (i > ma || j > mb) continue;
      Partition alpha = i ? Partition{i} : Partition{};
      Partition beta = j ? Partition{j} : Partition{};
      out[{alpha, beta}] += 1;
    }
    return out;
  };

  std::map<Partition, std::int64_t> entries;
  for (const auto& lambda : partitions_of(ma + mb)) {
    Bigraded monomial{{{Partition{}, Partition{}}, Integer(1)}};
    for (int part : lambda.parts()) monomial = multiply_truncated(monomial, class_of_product(part));
    Integer value = 0;
    for (const auto& [key, c] : monomial) {
      if (key.first.weight() != ma) continue;
      value += c * ta.at(key.first) * tb.at(key.second);
    }
    entries.emplace(lambda, to_int64(value, "product Chern number"));
  }
  return make_closed(a.name + "x" + b.name, ChernNumberTable(ma + mb, std::move(entries)));
}

bool is_symmetric(const IntMatrix& q) {
  const std::size_t n = q.size();
  for (const auto& row : q) {
    if (row.size() != n) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (q[i][j] != q[j][i]) return false;
    }
  }
  return true;
}

namespace {

/// Congruent diagonalization P^T Q P = D over Q with det P = +-1, so the
/// diagonal carries both the inertia and the determinant.
std::vector<Rational> congruent_diagonal(const IntMatrix& q) {
  if (!is_symmetric(q)) throw Error(ErrorCode::NotSymmetric, "intersection form is not symmetric");
  const std::size_t n = q.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = q[i][j];

  auto swap_index = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    for (auto& row : a) std::swap(row[i], row[j]);
  };
  // row_i += row_j, col_i += col_j
  auto add_index = [&](std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < n; ++c) a[i][c] += a[j][c];
    for (std::size_t r = 0; r < n; ++r) a[r][i] += a[r][j];
  };

  std::vector<Rational> diagonal;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    for (std::size_t i = k; i < n && pivot == n; ++i)
      if (a[i][i] != 0) pivot = i;
    if (pivot == n) {
      // Zero diagonal: a_ij != 0 gives a nonzero pivot a_ii + 2 a_ij + a_jj on
      // the hyperbolic pair spanned by e_i, e_j.
      for (std::size_t i = k; i < n && pivot == n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (a[i][j] != 0) {
            add_index(i, j);
            pivot = i;
            break;
          }
        }
      }
    }
    if (pivot == n) {
      diagonal.resize(n, Rational(0));  // remaining block is zero
      return diagonal;
    }
    if (pivot != k) swap_index(pivot, k);
    const Rational p = a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      const Rational factor = a[i][k] / p;
      for (std::size_t c = k; c < n; ++c) a[i][c] -= factor * a[k][c];
      for (std::size_t r = k; r < n; ++r) a[r][i] -= factor * a[r][k];
    }
    diagonal.push_back(p);
  }
  return diagonal;
}

}  // namespace

int signature(const IntMatrix& q) {
  int sigma = 0;
  for (const auto& d : congruent_diagonal(q)) sigma += (d > 0) - (d < 0);
  return sigma;
}

Integer determinant(const IntMatrix& q) {
  Rational det = 1;
  for (const auto& d : congruent_diagonal(q)) det *= d;
  return numerator(det);
}

IntMatrix e8_form() {
  // Dynkin diagram: chain 0-1-2-3-4-5-6 with node 7 attached to node 4.
  IntMatrix q(8, IntVector(8, 0));
  for (std::size_t i = 0; i < 8; ++i) q[i][i] = 2;
  auto link = [&](std::size_t i, std::size_t j) { q[i][j] = q[j][i] = -1; };
  for (std::size_t i = 0; i + 1 < 7; ++i) link(i, i + 1);
  link(4, 7);
  return q;
}

IntMatrix hyperbolic_form() { return {{0, 1}, {1, 0}}; }

IntMatrix block_sum(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size() + b.size();
  IntMatrix out(n, IntVector(n, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] = a[i][j];
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b[i].size(); ++j) out[a.size() + i][a.size() + j] = b[i][j];
  return out;
}

IntMatrix scaled(const IntMatrix& q, std::int64_t factor) {
  IntMatrix out = q;
  for (auto& row : out)
    for (auto& v : row) v *= factor;
  return out;
}

FourManifoldDescriptor four_manifold(std::string name, IntMatrix q, IntVector c1,
                                     std::int64_t euler, bool torsion_free, bool closed) {
  if (!is_symmetric(q)) throw Error(ErrorCode::NotSymmetric, "'" + name + "': Q is not symmetric");
  const std::size_t n = q.size();
  if (c1.size() != n) {
    throw Error(ErrorCode::ShapeMismatch, "'" + name + "': c1 has length " +
                                              std::to_string(c1.size()) + " but b2 = " +
                                              std::to_string(n));
  }
  Integer c1_squared = 0;
  bool even = true;
  for (std::size_t i = 0; i < n; ++i) {
    Integer qc = 0;
    for (std::size_t j = 0; j < n; ++j) qc += Integer(q[i][j]) * c1[j];
    // c1 . e_i == e_i . e_i (mod 2)
    if (((qc - q[i][i]) % 2) != 0) {
      throw Error(ErrorCode::NotCharacteristic,
                  "'" + name + "': c1 is not characteristic at basis vector " + std::to_string(i));
    }
    c1_squared += qc * c1[i];
    even = even && (c1[i] % 2 == 0);
  }
  if (closed && torsion_free) {
    const Integer det = determinant(q);
    if (abs(det) != 1) {
      throw Error(ErrorCode::NotUnimodular,
                  "'" + name + "': |det Q| = " + Integer(abs(det)).str() + ", expected 1");
    }
  }
  const int sigma = signature(q);
  if (c1_squared - 2 * Integer(euler) != 3 * sigma) {
    throw Error(ErrorCode::SignatureMismatch,
                "'" + name + "': c1^2 - 2chi = " + (c1_squared - 2 * Integer(euler)).str() +
                    " but 3 sigma = " + std::to_string(3 * sigma));
  }
  FourManifoldDescriptor out;
  out.name_ = std::move(name);
  out.q_ = std::move(q);
  out.c1_ = std::move(c1);
  out.euler_ = euler;
  out.torsion_free_ = torsion_free;
  out.closed_ = closed;
  out.signature_ = sigma;
  out.c1_squared_ = static_cast<std::int64_t>(c1_squared);
  out.w2_trivial_ = even;
  return out;
}

FourManifoldDescriptor connected_sum(const FourManifoldDescriptor& a,
                                     const FourManifoldDescriptor& b) {
  if (!a.closed() || !b.closed()) {
    throw Error(ErrorCode::OpenManifold, "connected_sum requires closed summands");
  }
  IntVector c1 = a.c1();
  c1.insert(c1.end(), b.c1().begin(), b.c1().end());
  return four_manifold(a.name() + "#" + b.name(), block_sum(a.form(), b.form()), std::move(c1),
                       a.euler() + b.euler() - 2, a.torsion_free() && b.torsion_free(), true);
}

FourManifoldDescriptor four_torus() {
  IntMatrix h = hyperbolic_form();
  return four_manifold("T4", block_sum(block_sum(h, h), h), IntVector(6, 0), 0, true);
}

FourManifoldDescriptor k3_surface() {
  IntMatrix minus_e8 = scaled(e8_form(), -1);
  IntMatrix h = hyperbolic_form();
  IntMatrix q = block_sum(block_sum(minus_e8, minus_e8), block_sum(block_sum(h, h), h));
  return four_manifold("K3", std::move(q), IntVector(22, 0), 24, true);
}

FourManifoldDescriptor s2_times_s2() {
  return four_manifold("S2xS2", hyperbolic_form(), {2, 2}, 4, true);
}

FourManifoldDescriptor complex_projective_plane() {
  return four_manifold("CP2", {{1}}, {3}, 3, true);
}

}  // namespace acman
