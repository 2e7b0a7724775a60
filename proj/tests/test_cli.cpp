#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "acman/cli.hpp"
#include "acman/io.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = acman::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "acman_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_catalog(const std::string& name, const std::string& file) {
  const auto path = scratch_dir() / file;
  std::ofstream(path) << acman::to_json(acman::catalog_entry(name)).dump(2);
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("decide examples") {
  const auto cp2 = run({"decide", "--manifold", write_catalog("cp2", "cp2.json"), "--target", "r4m-immerse"});
  CHECK(cp2.code == 1);
  CHECK(cp2.out.find("verdict:  no") != std::string::npos);
  CHECK(cp2.out.find("I(M,J):   -3") != std::string::npos);

  const auto t4 = run({"decide", "--manifold", write_catalog("t4-form", "torus4.json"), "--target", "r6-ph"});
  CHECK(t4.code == 0);
  CHECK(t4.out.find("verdict:  yes") != std::string::npos);

  const auto g1 = run({"decide", "--manifold", write_catalog("genus-1", "genus1.json"), "--target", "r4m-embed"});
  CHECK(g1.code == 0);

  const auto torsion = [] {
    json j = acman::to_json(acman::catalog_entry("t4-form"));
    j["torsion_free"] = false;
    const auto path = scratch_dir() / "t4-torsion.json";
    std::ofstream(path) << j.dump();
    return path.string();
  }();
  CHECK(run({"decide", "--manifold", torsion, "--target", "r6-ph"}).code == 2);
}

TEST_CASE("decide JSON mode emits exactly one document") {
  const auto r = run({"--json", "decide", "--catalog", "cp3", "--target", "r4m-immerse"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);  // throws on trailing garbage
  CHECK(j["verdict"] == "yes");
  CHECK(j["I"] == 10);
  CHECK(j["double_points"] == 10);
  CHECK(j["normal_euler"] == -20);
  // flag after the subcommand works too
  CHECK(json::parse(run({"decide", "--catalog", "cp2", "--target", "r4m2", "--json"}).out)["target_dim"] == 10);
}

TEST_CASE("decide input errors exit 64") {
  CHECK(run({"decide", "--manifold", "/nonexistent.json", "--target", "r4m2"}).code == 64);
  CHECK(run({"decide", "--catalog", "cp2", "--target", "r6-ph"}).code == 64);
  CHECK(run({"decide", "--catalog", "cp2", "--target", "r9"}).code == 64);
  CHECK(run({"decide", "--target", "r4m2"}).code == 64);
  CHECK(run({"decide", "--catalog", "cp2", "--target", "r4m2", "--bogus"}).code == 64);

  const auto path = scratch_dir() / "bad.json";
  std::ofstream(path) << R"({"kind":"chern_table","name":"x","m":2,"closed":true,"entries":{"[2]":3}})";
  const auto r = run({"--json", "decide", "--manifold", path.string(), "--target", "r4m-immerse"});
  CHECK(r.code == 64);
  const json j = json::parse(r.out);
  CHECK(j["error"]["code"] == "SchemaError");
  CHECK(j["error"]["message"].get<std::string>().find("/entries/[1,1]") != std::string::npos);

  std::ofstream(path) << R"({"kind":"chern_table","name":"odd","m":2,"closed":true,"entries":{"[2]":2,"[1,1]":9}})";
  const auto odd = run({"--json", "decide", "--manifold", path.string(), "--target", "r4m-immerse"});
  CHECK(odd.code == 64);
  CHECK(json::parse(odd.out)["error"]["code"] == "IntegralityViolation");
}

TEST_CASE("segre") {
  CHECK(run({"segre", "--m", "1"}).out == "-c1\n");
  CHECK(run({"segre", "--m", "0"}).out == "1\n");
  CHECK(run({"segre", "--m", "2"}).out == "c1^2 - c2\n");
  const auto big = run({"segre", "--m", "13"});
  CHECK(big.code == 0);
  CHECK(big.err.find("warning") != std::string::npos);
  CHECK(run({"segre", "--m", "-1"}).code == 64);
}

TEST_CASE("bott") {
  CHECK(run({"bott", "--k", "2", "--n", "3"}).out == "Z\n");
  CHECK(run({"bott", "--k", "7", "--n", "3"}).out == "unknown\n");
  const json j = json::parse(run({"--json", "bott", "--k", "8", "--n", "5"}).out);
  CHECK(j["group"] == "Z2");
  CHECK(j["stable"] == true);
}

TEST_CASE("catalog") {
  const auto list = run({"catalog", "list"});
  CHECK(list.out.find("cp6\n") != std::string::npos);
  CHECK(list.out.find("k3-form\n") != std::string::npos);
  const json shown = json::parse(run({"catalog", "show", "cp2"}).out);
  CHECK(shown["entries"]["[1,1]"] == 9);
  CHECK(run({"catalog", "show", "nope"}).code == 64);
  CHECK(run({"catalog"}).code == 64);
}

TEST_CASE("lefschetz verify") {
  const auto r = run({"lefschetz", "verify", "--samples", "500"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  const json j = json::parse(run({"--json", "lefschetz", "verify", "--samples", "200"}).out);
  CHECK(j["all_passed"] == true);
}

TEST_CASE("lefschetz fiber writes a torus point cloud") {
  const auto out = scratch_dir() / "t.csv";
  const auto r = run({"lefschetz", "fiber", "--value", "0,0,1", "--n", "100", "--seed", "7", "--out", out.string()});
  CHECK(r.code == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "re_z1,im_z1,re_z2,im_z2,x,residual");
  int rows = 0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::vector<double> v;
    std::string cell;
    while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
    REQUIRE(v.size() == 6);
    CHECK(std::abs(std::hypot(v[0], v[1]) - std::sqrt(0.5)) <= 1e-6);
    CHECK(std::abs(v[4]) <= 1e-6);
    ++rows;
  }
  CHECK(rows >= 50);
  CHECK(run({"lefschetz", "fiber", "--value", "0,0", "--n", "5"}).code == 64);
  CHECK(run({"lefschetz", "fiber", "--value", "0,x,1", "--n", "5"}).code == 64);
  CHECK(run({"lefschetz", "fiber", "--map", "hopf", "--n", "5"}).code == 64);
}

TEST_CASE("lefschetz critical") {
  const json j = json::parse(run({"--json", "lefschetz", "critical", "--seeds", "40", "--seed", "3"}).out);
  CHECK(j["points"].size() == 2);
}

TEST_CASE("seed comes from ACMAN_SEED unless --seed is given") {
  const auto a = run({"lefschetz", "fiber", "--n", "3", "--seed", "5"});
  ::setenv("ACMAN_SEED", "5", 1);
  const auto b = run({"lefschetz", "fiber", "--n", "3"});
  const auto c = run({"lefschetz", "fiber", "--n", "3", "--seed", "6"});
  ::setenv("ACMAN_SEED", "junk", 1);
  const auto d = run({"lefschetz", "fiber", "--n", "3"});
  ::unsetenv("ACMAN_SEED");
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(d.code == 64);
}

}  // TEST_SUITE
