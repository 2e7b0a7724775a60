#include <doctest.h>

#include <random>

#include "acman/chern_algebra.hpp"
#include "acman/errors.hpp"

using namespace acman;

namespace {

ChernPolynomial c(int i) { return ChernPolynomial::chern_class(i); }

ChernPolynomial total_chern_through(int k) {
  ChernPolynomial total = ChernPolynomial::constant(1);
  for (int i = 1; i <= k; ++i) total = total + c(i);
  return total;
}

/// Random polynomial of weight <= 4 with small integer coefficients.
ChernPolynomial random_polynomial(std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> count(0, 4);
  ChernPolynomial::Terms terms;
  std::vector<Partition> pool;
  for (int w = 0; w <= 4; ++w)
    for (auto& p : partitions_of(w)) pool.push_back(p);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int i = count(rng); i > 0; --i) terms[pool[pick(rng)]] += coeff(rng);
  return ChernPolynomial(std::move(terms));
}

/// Evaluates p at c_i = values[i] (values[0] unused).
Rational evaluate(const ChernPolynomial& p, const std::vector<Rational>& values) {
  Rational total = 0;
  for (const auto& [lambda, coefficient] : p.terms()) {
    Rational term = coefficient;
    for (int part : lambda.parts()) term *= values[static_cast<std::size_t>(part)];
    total += term;
  }
  return total;
}

}  // namespace

TEST_SUITE("chern_algebra") {

TEST_CASE("partition canonical form") {
  Partition p{1, 3, 2};
  CHECK(p.parts() == std::vector<int>{3, 2, 1});
  CHECK(p.weight() == 6);
  CHECK(p.key() == "[3,2,1]");
  CHECK(Partition::from_key("[3,1]") == Partition{1, 3});
  CHECK(Partition::from_key("[]") == Partition{});
  CHECK_THROWS_AS(Partition({0, 1}), Error);
  CHECK_THROWS_AS(Partition::from_key("[1,3]"), Error);
  CHECK_THROWS_AS(Partition::from_key("3,1"), Error);
  CHECK((Partition{2, 1} * Partition{3, 1}).parts() == std::vector<int>{3, 2, 1, 1});
}

TEST_CASE("partitions_of counts") {
  const std::vector<std::size_t> expected{1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
  for (int n = 0; n <= 12; ++n) CHECK(partitions_of(n).size() == expected[static_cast<std::size_t>(n)]);
}

TEST_CASE("multiply examples") {
  CHECK(c(1) * c(1) == ChernPolynomial::monomial(Partition{1, 1}));
  std::mt19937 rng(11);
  for (int i = 0; i < 10; ++i) {
    const ChernPolynomial p = random_polynomial(rng);
    CHECK(ChernPolynomial::constant(1) * p == p);
  }
  // (1 + c1)(1 - c1 + c1^2) = 1 + c1^3
  const ChernPolynomial lhs = ChernPolynomial::constant(1) + c(1);
  const ChernPolynomial rhs = ChernPolynomial::constant(1) - c(1) + c(1) * c(1);
  const ChernPolynomial product = lhs * rhs;
  CHECK(product == ChernPolynomial::constant(1) + ChernPolynomial::monomial(Partition{1, 1, 1}));
  for (int w = 1; w <= 2; ++w) CHECK(product.homogeneous_component(w).is_zero());
}

TEST_CASE("multiply is commutative and associative") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_polynomial(rng);
    const auto q = random_polynomial(rng);
    const auto r = random_polynomial(rng);
    CHECK(p * q == q * p);
    CHECK((p * q) * r == p * (q * r));
  }
}

TEST_CASE("zero coefficients are never stored") {
  const ChernPolynomial p = c(2) - c(2);
  CHECK(p.is_zero());
  CHECK((c(1) * Rational(0)).terms().empty());
  CHECK(ChernPolynomial(ChernPolynomial::Terms{{Partition{1}, 0}}).is_zero());
}

TEST_CASE("segre polynomial frozen values") {
  CHECK(segre_polynomial(0) == ChernPolynomial::constant(1));
  CHECK(segre_polynomial(1) == -c(1));
  CHECK(segre_polynomial(2) == c(1) * c(1) - c(2));
  CHECK(segre_polynomial(3) ==
        -(c(1) * c(1) * c(1)) + c(1) * c(2) * Rational(2) - c(3));
  CHECK(segre_polynomial(1).to_string() == "-c1");
  CHECK(segre_polynomial(2).to_string() == "c1^2 - c2");
  CHECK(segre_polynomial(3).to_string() == "-c1^3 + 2*c1*c2 - c3");
  CHECK_THROWS_AS(segre_polynomial(-1), Error);
}

TEST_CASE("segre series inversion oracle through k = 12") {
  const auto s = segre_polynomials_through(12);
  for (int k = 1; k <= 12; ++k) {
    ChernPolynomial series;
    for (int j = 0; j <= k; ++j) series = series + s[static_cast<std::size_t>(j)];
    const ChernPolynomial product = total_chern_through(k) * series;
    CHECK(product.homogeneous_component(0) == ChernPolynomial::constant(1));
    for (int w = 1; w <= k; ++w) CHECK(product.homogeneous_component(w).is_zero());
  }
}

TEST_CASE("segre polynomials are integral and homogeneous") {
  const auto s = segre_polynomials_through(12);
  for (int k = 0; k <= 12; ++k) {
    for (const auto& [lambda, coefficient] : s[static_cast<std::size_t>(k)].terms()) {
      CHECK(lambda.weight() == k);
      CHECK(denominator(coefficient) == 1);
    }
    // every partition of k appears: s_k = (-1)^k h_k has all monomials
    CHECK(s[static_cast<std::size_t>(k)].terms().size() == partitions_of(k).size());
  }
}

TEST_CASE("segre agrees with split-root oracle s_k = (-1)^k h_k(x)") {
  // If c = prod (1 + x_j), then s = prod 1/(1 + x_j).
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  for (int k = 1; k <= 8; ++k) {
    std::vector<Rational> x;
    for (int j = 0; j < k; ++j) x.emplace_back(num(rng), den(rng));
    // elementary symmetric e_0..e_k and complete homogeneous h_k
    std::vector<Rational> e(static_cast<std::size_t>(k) + 1, Rational(0));
    e[0] = 1;
    std::vector<Rational> h(static_cast<std::size_t>(k) + 1, Rational(0));
    h[0] = 1;
    for (const auto& xj : x) {
      for (int i = k; i >= 1; --i) e[static_cast<std::size_t>(i)] += xj * e[static_cast<std::size_t>(i - 1)];
      for (int i = 1; i <= k; ++i) h[static_cast<std::size_t>(i)] += xj * h[static_cast<std::size_t>(i - 1)];
    }
    const Rational expected = (k % 2 ? Rational(-1) : Rational(1)) * h[static_cast<std::size_t>(k)];
    CHECK(evaluate(segre_polynomial(k), e) == expected);
  }
}

TEST_CASE("pair examples") {
  const ChernNumberTable cp1(1, {{Partition{1}, 2}});
  CHECK(pair(c(1), cp1, 1) == 2);
  const ChernNumberTable cp2(2, {{Partition{2}, 3}, {Partition{1, 1}, 9}});
  CHECK(pair(ChernPolynomial::constant(1), cp2, 2) == 0);
  CHECK(pair(c(1) * c(1) - c(2), cp2, 2) == 6);
  // off-weight terms contribute zero
  CHECK(pair(c(1) + c(2) + c(1) * c(1) * c(1), cp2, 2) == 3);
}

TEST_CASE("pair is linear") {
  const ChernNumberTable table(4, [] {
    std::map<Partition, std::int64_t> e;
    std::int64_t v = 1;
    for (auto& p : partitions_of(4)) e[p] = v++ * 7 - 20;
    return e;
  }());
  std::mt19937 rng(99);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_polynomial(rng);
    const auto q = random_polynomial(rng);
    const Rational a(i - 25, 3);
    CHECK(pair(p * a + q, table, 4) == a * pair(p, table, 4) + pair(q, table, 4));
  }
}

TEST_CASE("pair errors") {
  const ChernNumberTable cp1(1, {{Partition{1}, 2}});
  CHECK_THROWS_AS(pair(c(2), cp1, 2), Error);
  try {
    (void)pair(c(2), cp1, 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingChernNumber);
  }
}

TEST_CASE("table completeness") {
  CHECK_THROWS_AS(ChernNumberTable(2, {{Partition{2}, 3}}), Error);
  CHECK_THROWS_AS(ChernNumberTable(1, {{Partition{1}, 2}, {Partition{2}, 1}}), Error);
  CHECK(ChernNumberTable(2, {{Partition{2}, 3}, {Partition{1, 1}, 9}}).euler_characteristic() == 3);
}

}  // TEST_SUITE
