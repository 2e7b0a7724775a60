#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "acman/chern_algebra.hpp"
#include "acman/manifolds.hpp"
#include "acman/obstruction.hpp"

namespace acman {

using Descriptor = std::variant<ManifoldDescriptor, FourManifoldDescriptor>;

// Descriptor files:
//   {"kind": "chern_table", "name", "m", "closed", "entries": {"[2]": 3, "[1,1]": 9}}
//   {"kind": "four_manifold", "name", "closed", "Q", "c1", "euler", "torsion_free"}
// Open chern_table descriptors may omit "entries" or leave it empty.
nlohmann::json to_json(const ManifoldDescriptor& m);
nlohmann::json to_json(const FourManifoldDescriptor& m);
nlohmann::json to_json(const Descriptor& d);

/// Schema problems raise SchemaError naming the JSON pointer of the bad
/// field; validation failures keep their own code (SignatureMismatch, ...).
Descriptor descriptor_from_json(const nlohmann::json& j);
Descriptor load_descriptor(const std::string& path);

nlohmann::json to_json(const EmbeddingDecision& d);
nlohmann::json to_json(const ChernPolynomial& p);

/// Built-in descriptors: genus-0..genus-10, cp1..cp6, torus1..torus6
/// (T^{2m}), and the four-manifolds t4-form, k3-form, s2xs2-form, cp2-form.
std::vector<std::string> catalog_names();
/// Throws InvalidArgument for an unknown name.
Descriptor catalog_entry(const std::string& name);

}  // namespace acman
