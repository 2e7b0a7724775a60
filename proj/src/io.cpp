#include "acman/io.hpp"

#include <fstream>
#include <set>

#include "acman/errors.hpp"

namespace acman {

using nlohmann::json;

json to_json(const ManifoldDescriptor& m) {
  json entries = json::object();
  if (m.table) {
    for (const auto& [p, value] : m.table->entries()) entries[p.key()] = value;
  }
  return {{"kind", "chern_table"}, {"name", m.name}, {"m", m.m}, {"closed", m.closed},
          {"entries", std::move(entries)}};
}

json to_json(const FourManifoldDescriptor& m) {
  return {{"kind", "four_manifold"}, {"name", m.name()},          {"closed", m.closed()},
          {"Q", m.form()},           {"c1", m.c1()},              {"euler", m.euler()},
          {"torsion_free", m.torsion_free()}};
}

json to_json(const Descriptor& d) {
  return std::visit([](const auto& m) { return to_json(m); }, d);
}

namespace {

[[noreturn]] void schema_error(const std::string& pointer, const std::string& message) {
  throw Error(ErrorCode::SchemaError, pointer + ": " + message);
}

const json& field(const json& j, const std::string& key) {
  if (!j.contains(key)) schema_error("/" + key, "required field is missing");
  return j.at(key);
}

void reject_unknown(const json& j, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) schema_error("/" + key, "unknown field");
  }
}

std::string get_string(const json& j, const std::string& key) {
  const json& v = field(j, key);
  if (!v.is_string()) schema_error("/" + key, "expected a string");
  return v.get<std::string>();
}

bool get_bool(const json& j, const std::string& key) {
  const json& v = field(j, key);
  if (!v.is_boolean()) schema_error("/" + key, "expected a boolean");
  return v.get<bool>();
}

std::int64_t get_int(const json& v, const std::string& pointer) {
  if (!v.is_number_integer()) schema_error(pointer, "expected an integer");
  return v.get<std::int64_t>();
}

ManifoldDescriptor chern_table_from_json(const json& j) {
  reject_unknown(j, {"kind", "name", "m", "closed", "entries"});
  const std::string name = get_string(j, "name");
  const std::int64_t m = get_int(field(j, "m"), "/m");
  if (m < 1 || m > 64) schema_error("/m", "complex dimension must be in 1..64");
  const bool closed = get_bool(j, "closed");
  const json empty = json::object();
  const json& raw = j.contains("entries") ? j.at("entries") : empty;
  if (!raw.is_object()) schema_error("/entries", "expected an object keyed by partitions");
  if (!closed && raw.empty()) return make_open(name, static_cast<int>(m));

  std::map<Partition, std::int64_t> entries;
  for (const auto& [key, value] : raw.items()) {
    const std::string pointer = "/entries/" + key;
    Partition p;
    try {
      p = Partition::from_key(key);
    } catch (const Error& e) {
      schema_error(pointer, e.what());
    }
    if (p.weight() != m) {
      schema_error(pointer, "partition weight " + std::to_string(p.weight()) + " != m");
    }
    entries.emplace(p, get_int(value, pointer));
  }
  for (const auto& p : partitions_of(static_cast<int>(m))) {
    if (!entries.contains(p)) schema_error("/entries/" + p.key(), "missing Chern number");
  }
  ChernNumberTable table(static_cast<int>(m), std::move(entries));
  if (closed) return make_closed(name, std::move(table));
  // Open manifolds carry no fundamental class; a supplied table is ignored.
  return make_open(name, static_cast<int>(m));
}

FourManifoldDescriptor four_manifold_from_json(const json& j) {
  reject_unknown(j, {"kind", "name", "closed", "Q", "c1", "euler", "torsion_free"});
  const std::string name = get_string(j, "name");
  const bool closed = j.contains("closed") ? get_bool(j, "closed") : true;
  const json& q_raw = field(j, "Q");
  if (!q_raw.is_array()) schema_error("/Q", "expected an array of rows");
  IntMatrix q;
  for (std::size_t i = 0; i < q_raw.size(); ++i) {
    const std::string row_ptr = "/Q/" + std::to_string(i);
    if (!q_raw[i].is_array() || q_raw[i].size() != q_raw.size()) {
      schema_error(row_ptr, "expected a row of length " + std::to_string(q_raw.size()));
    }
    IntVector row;
    for (std::size_t k = 0; k < q_raw[i].size(); ++k) {
      row.push_back(get_int(q_raw[i][k], row_ptr + "/" + std::to_string(k)));
    }
    q.push_back(std::move(row));
  }
  const json& c1_raw = field(j, "c1");
  if (!c1_raw.is_array()) schema_error("/c1", "expected an integer array");
  IntVector c1;
  for (std::size_t i = 0; i < c1_raw.size(); ++i) {
    c1.push_back(get_int(c1_raw[i], "/c1/" + std::to_string(i)));
  }
  if (c1.size() != q.size()) schema_error("/c1", "length must equal the rank of Q");
  const std::int64_t euler = get_int(field(j, "euler"), "/euler");
  const bool torsion_free = get_bool(j, "torsion_free");
  return four_manifold(name, std::move(q), std::move(c1), euler, torsion_free, closed);
}

}  // namespace

Descriptor descriptor_from_json(const json& j) {
  if (!j.is_object()) schema_error("", "descriptor must be a JSON object");
  const std::string kind = get_string(j, "kind");
  if (kind == "chern_table") return chern_table_from_json(j);
  if (kind == "four_manifold") return four_manifold_from_json(j);
  schema_error("/kind", "expected \"chern_table\" or \"four_manifold\", got \"" + kind + "\"");
}

Descriptor load_descriptor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::SchemaError, "'" + path + "' is not valid JSON");
  return descriptor_from_json(j);
}

namespace {

json optional_int(const std::optional<std::int64_t>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json to_json(const EmbeddingDecision& d) {
  json ledger = json::array();
  for (const auto& entry : d.ledger) {
    json fact = std::visit(
        [](const auto& f) -> json {
          if constexpr (std::is_same_v<std::decay_t<decltype(f)>, HomotopyGroupValue>) {
            return std::string(to_string(f));
          } else {
            return f;
          }
        },
        entry.fact);
    ledger.push_back({{"space", entry.space}, {"fact", std::move(fact)}, {"role", entry.role}});
  }
  return {{"verdict", std::string(to_string(d.verdict))},
          {"target_dim", d.target_dim},
          {"I", optional_int(d.invariant_I)},
          {"double_points", optional_int(d.double_points)},
          {"normal_euler", optional_int(d.normal_euler_number)},
          {"regular_homotopy_class", optional_int(d.regular_homotopy_class)},
          {"ledger", std::move(ledger)},
          {"citations", d.citations},
          {"notes", d.notes}};
}

json to_json(const ChernPolynomial& p) {
  json terms = json::array();
  for (const auto& [lambda, c] : p.terms()) {
    terms.push_back({{"partition", lambda.parts()}, {"coefficient", c.str()}});
  }
  return {{"polynomial", p.to_string()}, {"terms", std::move(terms)}};
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (int g = 0; g <= 10; ++g) names.push_back("genus-" + std::to_string(g));
  for (int m = 1; m <= 6; ++m) names.push_back("cp" + std::to_string(m));
  for (int m = 1; m <= 6; ++m) names.push_back("torus" + std::to_string(m));
  for (const char* n : {"t4-form", "k3-form", "s2xs2-form", "cp2-form"}) names.emplace_back(n);
  return names;
}

Descriptor catalog_entry(const std::string& name) {
  auto numbered = [&](const std::string& prefix, int lo, int hi) -> std::optional<int> {
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    const std::string digits = name.substr(prefix.size());
    if (digits.empty() || digits.size() > 2 ||
        digits.find_first_not_of("0123456789") != std::string::npos) {
      return std::nullopt;
    }
    const int v = std::stoi(digits);
    if (v < lo || v > hi || std::to_string(v) != digits) return std::nullopt;
    return v;
  };
  if (auto g = numbered("genus-", 0, 10)) return riemann_surface(*g);
  if (auto m = numbered("cp", 1, 6)) return projective_space(*m);
  if (auto m = numbered("torus", 1, 6)) return torus(*m);
  if (name == "t4-form") return four_torus();
  if (name == "k3-form") return k3_surface();
  if (name == "s2xs2-form") return s2_times_s2();
  if (name == "cp2-form") return complex_projective_plane();
  throw Error(ErrorCode::InvalidArgument, "no catalog entry named '" + name + "'");
}

}  // namespace acman
