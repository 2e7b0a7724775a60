#include "acman/chern_algebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "acman/errors.hpp"

namespace acman {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int part : parts_) {
    if (part <= 0) {
      throw Error(ErrorCode::InvalidPartition, "partition parts must be positive");
    }
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  weight_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::operator*(const Partition& other) const {
  std::vector<int> merged;
  merged.reserve(parts_.size() + other.parts_.size());
  std::merge(parts_.begin(), parts_.end(), other.parts_.begin(), other.parts_.end(),
             std::back_inserter(merged), std::greater<>());
  Partition result;
  result.parts_ = std::move(merged);
  result.weight_ = weight_ + other.weight_;
  return result;
}

std::string Partition::key() const {
  std::string out = "[";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out + "]";
}

Partition Partition::from_key(const std::string& key) {
  nlohmann::json parsed = nlohmann::json::parse(key, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_array()) {
    throw Error(ErrorCode::InvalidPartition, "partition key '" + key + "' is not an integer array");
  }
  std::vector<int> parts;
  for (const auto& v : parsed) {
    if (!v.is_number_integer()) {
      throw Error(ErrorCode::InvalidPartition, "partition key '" + key + "' has a non-integer part");
    }
    parts.push_back(v.get<int>());
  }
  if (!std::is_sorted(parts.begin(), parts.end(), std::greater<>())) {
    throw Error(ErrorCode::InvalidPartition,
                "partition key '" + key + "' must list parts in non-increasing order");
  }
  return Partition(std::move(parts));
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& prefix,
                    std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (int part = 1; part <= std::min(remaining, max_part); ++part) {
    prefix.push_back(part);
    partitions_rec(remaining - part, part, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "partitions_of: negative weight");
  std::vector<Partition> out;
  std::vector<int> prefix;
  partitions_rec(n, n, prefix, out);
  std::sort(out.begin(), out.end());
  return out;
}

ChernNumberTable::ChernNumberTable(int m, std::map<Partition, std::int64_t> entries)
    : m_(m), entries_(std::move(entries)) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "complex dimension must be positive");
  for (const auto& [p, value] : entries_) {
    if (p.weight() != m) {
      throw Error(ErrorCode::IncompleteTable,
                  "entry " + p.key() + " has weight " + std::to_string(p.weight()) +
                      ", expected " + std::to_string(m));
    }
  }
  for (const auto& p : partitions_of(m)) {
    if (!entries_.contains(p)) {
      throw Error(ErrorCode::IncompleteTable, "missing Chern number for " + p.key());
    }
  }
}

std::int64_t ChernNumberTable::at(const Partition& p) const {
  auto it = entries_.find(p);
  if (it == entries_.end()) {
    throw Error(ErrorCode::MissingChernNumber,
                "no Chern number for " + p.key() + " in a table of dimension " +
                    std::to_string(m_));
  }
  return it->second;
}

ChernPolynomial::ChernPolynomial(Terms terms) {
  for (auto& [p, c] : terms) add_term(p, c);
}

ChernPolynomial ChernPolynomial::constant(const Rational& value) {
  return monomial(Partition{}, value);
}

ChernPolynomial ChernPolynomial::chern_class(int i) {
  if (i < 0) throw Error(ErrorCode::InvalidArgument, "negative Chern class index");
  return i == 0 ? constant(1) : monomial(Partition{i});
}

ChernPolynomial ChernPolynomial::monomial(const Partition& p, const Rational& coefficient) {
  ChernPolynomial out;
  out.add_term(p, coefficient);
  return out;
}

void ChernPolynomial::add_term(const Partition& p, const Rational& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(p, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational ChernPolynomial::coefficient(const Partition& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Rational(0) : it->second;
}

ChernPolynomial ChernPolynomial::homogeneous_component(int weight) const {
  ChernPolynomial out;
  for (const auto& [p, c] : terms_) {
    if (p.weight() == weight) out.terms_.emplace(p, c);
  }
  return out;
}

ChernPolynomial ChernPolynomial::operator+(const ChernPolynomial& other) const {
  ChernPolynomial out = *this;
  for (const auto& [p, c] : other.terms_) out.add_term(p, c);
  return out;
}

ChernPolynomial ChernPolynomial::operator-(const ChernPolynomial& other) const {
  return *this + (-other);
}

ChernPolynomial ChernPolynomial::operator-() const { return *this * Rational(-1); }

ChernPolynomial ChernPolynomial::operator*(const Rational& scalar) const {
  ChernPolynomial out;
  if (scalar == 0) return out;
  for (const auto& [p, c] : terms_) out.terms_.emplace(p, c * scalar);
  return out;
}

namespace {

std::string render_monomial(const Partition& p) {
  // Ascending class index with exponents: c1^2*c3.
  std::vector<int> ascending(p.parts().rbegin(), p.parts().rend());
  std::string out;
  for (std::size_t i = 0; i < ascending.size();) {
    std::size_t j = i;
    while (j < ascending.size() && ascending[j] == ascending[i]) ++j;
    if (!out.empty()) out += '*';
    out += "c" + std::to_string(ascending[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

}  // namespace

std::string ChernPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Partition, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return a.first.weight() < b.first.weight();
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : ordered) {
    const bool negative = c < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (p.empty()) {
      os << magnitude;
    } else {
      if (magnitude != 1) os << magnitude << '*';
      os << render_monomial(p);
    }
  }
  return os.str();
}

ChernPolynomial multiply(const ChernPolynomial& p, const ChernPolynomial& q) {
  ChernPolynomial::Terms product;
  for (const auto& [a, ca] : p.terms()) {
    for (const auto& [b, cb] : q.terms()) {
      product[a * b] += ca * cb;
    }
  }
  return ChernPolynomial(std::move(product));
}

std::vector<ChernPolynomial> segre_polynomials_through(int k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "segre_polynomial: k must be >= 0");
  std::vector<ChernPolynomial> s;
  s.reserve(static_cast<std::size_t>(k) + 1);
  s.push_back(ChernPolynomial::constant(1));
  for (int j = 1; j <= k; ++j) {
    ChernPolynomial next;
    for (int i = 1; i <= j; ++i) {
      next = next - multiply(ChernPolynomial::chern_class(i), s[static_cast<std::size_t>(j - i)]);
    }
    s.push_back(std::move(next));
  }
  return s;
}

ChernPolynomial segre_polynomial(int k) { return segre_polynomials_through(k).back(); }

Rational pair(const ChernPolynomial& p, const ChernNumberTable& table, int m) {
  Rational total = 0;
  for (const auto& [lambda, c] : p.terms()) {
    if (lambda.weight() != m) continue;
    total += c * Rational(table.at(lambda));
  }
  return total;
}

}  // namespace acman
