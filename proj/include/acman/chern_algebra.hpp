#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace acman {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Index of a Chern monomial c_{l1} c_{l2} ... ; parts are kept sorted
/// non-increasing so that equal monomials compare equal.
class Partition {
 public:
  Partition() = default;
  /// Sorts the parts; throws InvalidPartition on a non-positive part.
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const noexcept { return parts_; }
  int weight() const noexcept { return weight_; }
  bool empty() const noexcept { return parts_.empty(); }

  /// Sorted concatenation (the monomial product).
  Partition operator*(const Partition& other) const;

  auto operator<=>(const Partition& other) const { return parts_ <=> other.parts_; }
  bool operator==(const Partition& other) const { return parts_ == other.parts_; }

  /// "[3,1]" form used as a JSON key.
  std::string key() const;
  /// Parses the key() form, rejecting unsorted or non-positive parts.
  static Partition from_key(const std::string& key);

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

/// All partitions of n, in lexicographic order of their non-increasing parts.
std::vector<Partition> partitions_of(int n);

/// Complete table of Chern numbers <c_lambda, [M]> for every partition lambda of m.
class ChernNumberTable {
 public:
  /// Throws IncompleteTable unless entries has exactly the partitions of m.
  ChernNumberTable(int m, std::map<Partition, std::int64_t> entries);

  int m() const noexcept { return m_; }
  const std::map<Partition, std::int64_t>& entries() const noexcept { return entries_; }
  /// Throws MissingChernNumber for a partition not in the table.
  std::int64_t at(const Partition& p) const;
  /// <c_m, [M]>, the Euler characteristic.
  std::int64_t euler_characteristic() const { return at(Partition{m_}); }

  bool operator==(const ChernNumberTable&) const = default;

 private:
  int m_;
  std::map<Partition, std::int64_t> entries_;
};

/// Polynomial in the formal Chern classes c1, c2, ... with exact rational
/// coefficients. Zero coefficients are never stored.
class ChernPolynomial {
 public:
  using Terms = std::map<Partition, Rational>;

  ChernPolynomial() = default;
  explicit ChernPolynomial(Terms terms);

  static ChernPolynomial constant(const Rational& value);
  /// The single class c_i (c_0 is the unit).
  static ChernPolynomial chern_class(int i);
  static ChernPolynomial monomial(const Partition& p, const Rational& coefficient = 1);

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coefficient(const Partition& p) const;

  /// Terms whose partition has the given weight.
  ChernPolynomial homogeneous_component(int weight) const;

  ChernPolynomial operator+(const ChernPolynomial& other) const;
  ChernPolynomial operator-(const ChernPolynomial& other) const;
  ChernPolynomial operator-() const;
  ChernPolynomial operator*(const Rational& scalar) const;
  bool operator==(const ChernPolynomial&) const = default;

  /// "c1^2 - c2"-style rendering. Terms ordered by weight, then
  /// lexicographically on their non-increasing parts (c1^3, c1*c2, c3).
  std::string to_string() const;

 private:
  void add_term(const Partition& p, const Rational& coefficient);
  Terms terms_;
};

ChernPolynomial multiply(const ChernPolynomial& p, const ChernPolynomial& q);
inline ChernPolynomial operator*(const ChernPolynomial& p, const ChernPolynomial& q) {
  return multiply(p, q);
}

/// Universal weight-k polynomial s_k in c1..ck, from s = c^{-1}:
/// s_0 = 1, s_k = -sum_{i=1..k} c_i s_{k-i}.
ChernPolynomial segre_polynomial(int k);

/// All of s_0..s_k in one pass.
std::vector<ChernPolynomial> segre_polynomials_through(int k);

/// <p_m, [M]>: weight-m component of p paired against the table. Terms of
/// other weights contribute zero.
Rational pair(const ChernPolynomial& p, const ChernNumberTable& table, int m);

}  // namespace acman
