#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "acman/chern_algebra.hpp"
#include "acman/errors.hpp"
#include "acman/io.hpp"
#include "acman/lefschetz.hpp"
#include "acman/manifolds.hpp"
#include "acman/obstruction.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace acman;
namespace lz = acman::lefschetz;

namespace {

Descriptor parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, e.what());
  }
  return descriptor_from_json(j);
}

const ManifoldDescriptor& chern(const Descriptor& d) {
  const auto* m = std::get_if<ManifoldDescriptor>(&d);
  if (!m) throw Error(ErrorCode::SchemaError, "/kind: expected a chern_table descriptor");
  return *m;
}

const FourManifoldDescriptor& four(const Descriptor& d) {
  const auto* m = std::get_if<FourManifoldDescriptor>(&d);
  if (!m) throw Error(ErrorCode::SchemaError, "/kind: expected a four_manifold descriptor");
  return *m;
}

std::string decide(const std::string& text, const std::string& target) {
  const Descriptor d = parse(text);
  EmbeddingDecision decision;
  if (target == "r4m2") {
    decision = decide_embed_R_4m_plus_2(chern(d));
  } else if (target == "r4m-immerse") {
    decision = decide_immerse_R_4m(chern(d));
  } else if (target == "r4m-embed") {
    decision = decide_embed_R_4m(chern(d));
  } else if (target == "r6-ph") {
    decision = decide_embed_R6(four(d));
  } else if (target == "r6-smooth") {
    decision = smooth_embed_R6(four(d));
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown target '" + target + "'");
  }
  return to_json(decision).dump();
}

lz::SphereMap map_by_name(const std::string& name, double twist_rate) {
  if (name == "f1") return lz::SphereMap::f1();
  if (name == "hopf") return lz::SphereMap::hopf();
  if (name == "suspension_hopf") return lz::SphereMap::suspension_hopf();
  if (name == "f_full") return lz::SphereMap::f_full(lz::S3Diffeo(lz::RotationK::identity(), twist_rate));
  throw Error(ErrorCode::InvalidArgument, "unknown map '" + name + "'");
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd from_vector(const std::vector<double>& v, std::size_t n) {
  if (v.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(n) + " coordinates");
  }
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(n));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::exception<Error> acman_error(m, "AcmanError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object type = py::reinterpret_borrow<py::object>(acman_error.ptr());
      const py::object exc = type(std::string(to_string(e.code())), e.what());
      PyErr_SetObject(acman_error.ptr(), exc.ptr());
    }
  });

  m.def("segre", [](int k) { return to_json(segre_polynomial(k)).dump(); }, py::arg("k"));
  m.def("catalog_names", &catalog_names);
  m.def("catalog_entry", [](const std::string& name) { return to_json(catalog_entry(name)).dump(); });
  m.def("validate", [](const std::string& text) { return to_json(parse(text)).dump(); });
  m.def("invariant_I", [](const std::string& text) { return invariant_I(chern(parse(text))); });
  m.def("curvatura_integra", [](const std::string& text) { return curvatura_integra(chern(parse(text))); });
  m.def("decide", &decide, py::arg("descriptor"), py::arg("target"));
  m.def("product", [](const std::string& a, const std::string& b) {
    return to_json(product(chern(parse(a)), chern(parse(b)))).dump();
  });
  m.def("signature", [](const IntMatrix& q) { return signature(q); });
  m.def("determinant", [](const IntMatrix& q) { return determinant(q).str(); });
  m.def("four_manifold",
        [](const std::string& name, const IntMatrix& q, const IntVector& c1, std::int64_t euler,
           bool torsion_free, bool closed) {
          return to_json(four_manifold(name, q, c1, euler, torsion_free, closed)).dump();
        },
        py::arg("name"), py::arg("Q"), py::arg("c1"), py::arg("euler"), py::arg("torsion_free") = true,
        py::arg("closed") = true);
  m.def("bott_group", [](int k, int n) { return std::string(to_string(bott_group(k, n))); });

  m.def("hopf", [](const std::vector<double>& p) {
    return to_vector(lz::hopf(lz::SpherePoint3::from_coords(from_vector(p, 4))).coords());
  });
  m.def("suspension_hopf", [](const std::vector<double>& p) {
    return to_vector(lz::suspension_hopf(lz::SpherePoint4::from_coords(from_vector(p, 5))).coords());
  });
  m.def("f1", [](const std::vector<double>& p) {
    return to_vector(lz::f1(lz::SpherePoint4::from_coords(from_vector(p, 5))).coords());
  });
  m.def("f_full",
        [](const std::vector<double>& p, double twist_rate) {
          const lz::S3Diffeo k(lz::RotationK::identity(), twist_rate);
          return to_vector(lz::f_full(lz::SpherePoint4::from_coords(from_vector(p, 5)), k).coords());
        },
        py::arg("p"), py::arg("twist_rate") = lz::S3Diffeo::default_k().twist_rate());
  m.def("find_critical_points",
        [](const std::string& map, int seeds, std::uint64_t seed, double twist_rate) {
          std::vector<std::vector<double>> out;
          for (const auto& p : lz::find_critical_points(map_by_name(map, twist_rate), seeds, seed).points) {
            out.push_back(to_vector(p));
          }
          return out;
        },
        py::arg("map"), py::arg("seeds"), py::arg("seed") = 0,
        py::arg("twist_rate") = lz::S3Diffeo::default_k().twist_rate());
  m.def("sample_fiber",
        [](const std::vector<double>& target, int n, std::uint64_t seed, const std::string& map) {
          const auto t = lz::SpherePoint2::from_coords(from_vector(target, 3));
          return lz::to_json(lz::sample_fiber(map_by_name(map, lz::S3Diffeo::default_k().twist_rate()), t, n, seed))
              .dump();
        },
        py::arg("target"), py::arg("n"), py::arg("seed") = 0, py::arg("map") = "f1");
  m.def("verify_properties", [](std::uint64_t seed, int n) {
    py::list out;
    for (const auto& c : lz::verify_properties(seed, n)) {
      py::dict d;
      d["name"] = c.name;
      d["passed"] = c.passed;
      d["value"] = c.value;
      d["threshold"] = c.threshold;
      out.append(d);
    }
    return out;
  }, py::arg("seed") = 0, py::arg("n") = 10000);
}
