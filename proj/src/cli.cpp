#include "acman/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <numbers>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "acman/errors.hpp"
#include "acman/io.hpp"
#include "acman/lefschetz.hpp"
#include "acman/obstruction.hpp"

namespace acman::cli {

using nlohmann::json;

namespace {

struct Options {
  bool json_mode = false;
  std::uint64_t seed = 0;

  // decide
  std::string manifold_path;
  std::string catalog_name;
  std::string target;
  // segre
  int segre_m = 0;
  // bott
  int bott_k = 1;
  int bott_n = 1;
  // catalog
  std::string show_name;
  // lefschetz
  std::string map_name = "f1";
  double twist_rate = std::numbers::pi / 2;
  int samples = 10000;
  int seeds = 200;
  std::string value = "0,0,1";
  int n = 500;
  std::string out_path;
  std::string format = "csv";
  double tol_fiber = lefschetz::kTolFiber;
  double tol_sv = 1e-3;
  double fd_step = lefschetz::kFiniteDifferenceStep;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ACMAN_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "ACMAN_SEED must be a non-negative integer");
    }
  }
  return 0;
}

void print_decision(std::ostream& out, const std::string& manifold, const std::string& target,
                    const EmbeddingDecision& d) {
  out << "manifold: " << manifold << "\n";
  out << "target:   R^" << d.target_dim << " (" << target << ")\n";
  out << "verdict:  " << to_string(d.verdict) << "\n";
  auto line = [&](const char* label, const std::optional<std::int64_t>& v) {
    if (v) out << label << *v << "\n";
  };
  line("I(M,J):   ", d.invariant_I);
  line("double points:          ", d.double_points);
  line("normal Euler number:    ", d.normal_euler_number);
  line("regular homotopy class: ", d.regular_homotopy_class);
  if (!d.ledger.empty()) out << "ledger:\n";
  for (const auto& entry : d.ledger) {
    out << "  " << entry.space << " = ";
    std::visit(
        [&](const auto& f) {
          if constexpr (std::is_same_v<std::decay_t<decltype(f)>, HomotopyGroupValue>) {
            out << to_string(f);
          } else {
            out << f;
          }
        },
        entry.fact);
    out << "  [" << entry.role << "]\n";
  }
  for (const auto& note : d.notes) out << "note: " << note << "\n";
  out << "citations:";
  for (const auto& c : d.citations) out << " [" << c << "]";
  out << "\n";
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Yes: return kExitYes;
    case Verdict::No: return kExitNo;
    case Verdict::Undetermined: return kExitUndetermined;
  }
  return kExitUndetermined;
}

int cmd_decide(const Options& o, std::ostream& out) {
  if (o.manifold_path.empty() == o.catalog_name.empty()) {
    throw Error(ErrorCode::InvalidArgument, "give exactly one of --manifold FILE or --catalog NAME");
  }
  const Descriptor descriptor =
      o.catalog_name.empty() ? load_descriptor(o.manifold_path) : catalog_entry(o.catalog_name);
  const bool four_target = o.target == "r6-ph" || o.target == "r6-smooth";
  std::string name;
  EmbeddingDecision decision;
  if (four_target) {
    const auto* m = std::get_if<FourManifoldDescriptor>(&descriptor);
    if (!m) throw Error(ErrorCode::SchemaError, "/kind: target " + o.target + " needs a four_manifold descriptor");
    name = m->name();
    decision = o.target == "r6-ph" ? decide_embed_R6(*m) : smooth_embed_R6(*m);
  } else {
    const auto* m = std::get_if<ManifoldDescriptor>(&descriptor);
    if (!m) throw Error(ErrorCode::SchemaError, "/kind: target " + o.target + " needs a chern_table descriptor");
    name = m->name;
    if (o.target == "r4m2") {
      decision = decide_embed_R_4m_plus_2(*m);
    } else if (o.target == "r4m-immerse") {
      decision = decide_immerse_R_4m(*m);
    } else {
      decision = decide_embed_R_4m(*m);
    }
  }
  if (o.json_mode) {
    json j = to_json(decision);
    j["manifold"] = name;
    j["target"] = o.target;
    out << j.dump(2) << "\n";
  } else {
    print_decision(out, name, o.target, decision);
  }
  return verdict_exit(decision.verdict);
}

int cmd_segre(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.segre_m < 0) throw Error(ErrorCode::InvalidArgument, "--m must be >= 0");
  if (o.segre_m > 12) err << "warning: s_k is only tested through k = 12\n";
  const ChernPolynomial s = segre_polynomial(o.segre_m);
  if (o.json_mode) {
    json j = to_json(s);
    j["k"] = o.segre_m;
    out << j.dump(2) << "\n";
  } else {
    out << s.to_string() << "\n";
  }
  return 0;
}

int cmd_bott(const Options& o, std::ostream& out) {
  const HomotopyGroupValue v = bott_group(o.bott_k, o.bott_n);
  if (o.json_mode) {
    out << json{{"k", o.bott_k},
                {"n", o.bott_n},
                {"group", std::string(to_string(v))},
                {"stable", o.bott_k <= 2 * o.bott_n - 2}}
               .dump(2)
        << "\n";
  } else {
    out << to_string(v) << "\n";
  }
  return 0;
}

int cmd_catalog_list(const Options& o, std::ostream& out) {
  const auto names = catalog_names();
  if (o.json_mode) {
    json entries = json::array();
    for (const auto& name : names) {
      const Descriptor d = catalog_entry(name);
      entries.push_back({{"name", name},
                         {"kind", std::holds_alternative<ManifoldDescriptor>(d) ? "chern_table"
                                                                                 : "four_manifold"}});
    }
    out << json{{"catalog", std::move(entries)}}.dump(2) << "\n";
  } else {
    for (const auto& name : names) out << name << "\n";
  }
  return 0;
}

int cmd_catalog_show(const Options& o, std::ostream& out) {
  // The descriptor is JSON either way, so `show` output can be saved as a --manifold file.
  out << to_json(catalog_entry(o.show_name)).dump(2) << "\n";
  return 0;
}

lefschetz::SphereMap parse_map(const Options& o) {
  if (o.map_name == "f1") return lefschetz::SphereMap::f1();
  if (o.map_name == "f_full") {
    return lefschetz::SphereMap::f_full(
        lefschetz::S3Diffeo(lefschetz::RotationK::identity(), o.twist_rate));
  }
  if (o.map_name == "hopf") return lefschetz::SphereMap::hopf();
  if (o.map_name == "suspension_hopf") return lefschetz::SphereMap::suspension_hopf();
  throw Error(ErrorCode::InvalidArgument, "unknown map '" + o.map_name + "'");
}

int cmd_lefschetz_verify(const Options& o, std::ostream& out) {
  const auto checks = lefschetz::verify_properties(o.seed, o.samples);
  bool all = true;
  json rows = json::array();
  for (const auto& c : checks) {
    all = all && c.passed;
    if (o.json_mode) {
      rows.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"threshold", c.threshold}});
    } else {
      out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  (value " << c.value
          << ", threshold " << c.threshold << ")\n";
    }
  }
  if (o.json_mode) out << json{{"checks", std::move(rows)}, {"all_passed", all}}.dump(2) << "\n";
  return all ? 0 : 1;
}

int cmd_lefschetz_critical(const Options& o, std::ostream& out) {
  lefschetz::CriticalSearchOptions options;
  options.h = o.fd_step;
  const auto result = lefschetz::find_critical_points(parse_map(o), o.seeds, o.seed, options);
  std::size_t converged = 0;
  for (const auto& s : result.seeds) converged += s.converged;
  if (o.json_mode) {
    json points = json::array();
    for (const auto& p : result.points) points.push_back(std::vector<double>(p.begin(), p.end()));
    out << json{{"map", o.map_name},
                {"seeds", o.seeds},
                {"seed", o.seed},
                {"converged_seeds", converged},
                {"points", std::move(points)}}
               .dump(2)
        << "\n";
  } else {
    out << "map " << o.map_name << ": " << converged << "/" << o.seeds
        << " descents converged, " << result.points.size() << " critical point(s)\n";
    out << std::setprecision(12);
    for (const auto& p : result.points) {
      out << " ";
      for (auto v : p) out << " " << v;
      out << "\n";
    }
  }
  return 0;
}

lefschetz::SpherePoint2 parse_value(const std::string& text) {
  std::stringstream ss(text);
  std::vector<double> v;
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "--value: '" + token + "' is not a number");
    }
  }
  if (v.size() != 3) throw Error(ErrorCode::InvalidArgument, "--value expects \"re,im,t\"");
  return {{v[0], v[1]}, v[2]};
}

int cmd_lefschetz_fiber(const Options& o, std::ostream& out) {
  lefschetz::FiberOptions options;
  options.tol_fiber = o.tol_fiber;
  options.h = o.fd_step;
  const auto sample =
      lefschetz::sample_fiber(parse_map(o), parse_value(o.value), o.n, o.seed, options);
  const auto format = o.format == "json" ? lefschetz::CloudFormat::Json : lefschetz::CloudFormat::Csv;
  if (!o.out_path.empty()) {
    lefschetz::export_point_cloud(sample, o.out_path, format);
    if (o.json_mode) {
      out << json{{"map", o.map_name}, {"attempts", sample.attempts},
                  {"converged", sample.points.size()}, {"convergence_rate", sample.convergence_rate()},
                  {"out", o.out_path}, {"format", o.format}}
                 .dump(2)
          << "\n";
    } else {
      out << sample.points.size() << "/" << sample.attempts << " starts converged ("
          << 100.0 * sample.convergence_rate() << "%), wrote " << o.out_path << "\n";
    }
  } else if (o.json_mode || format == lefschetz::CloudFormat::Json) {
    out << lefschetz::to_json(sample).dump(2) << "\n";
  } else {
    lefschetz::write_csv(out, sample);
  }
  return 0;
}

void emit_error(const Options& o, std::ostream& out, std::ostream& err, const std::string& code,
                const std::string& message) {
  err << "error: " << message << "\n";
  if (o.json_mode) out << json{{"error", {{"code", code}, {"message", message}}}}.dump(2) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Almost complex manifolds: pseudo-holomorphic embedding obstructions and the "
               "genus-1 Lefschetz fibration on S^4"};
  app.name("acman");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json_mode, "Emit a single JSON document on stdout");
  auto* seed_opt = app.add_option("--seed", o.seed, "RNG seed (default: $ACMAN_SEED or 0)");

  auto* decide = app.add_subcommand("decide", "Decide embeddability/immersibility");
  decide->add_option("--manifold", o.manifold_path, "Descriptor JSON file");
  decide->add_option("--catalog", o.catalog_name, "Built-in descriptor name");
  decide->add_option("--target", o.target, "Target")
      ->required()
      ->check(CLI::IsMember({"r4m2", "r4m-immerse", "r4m-embed", "r6-ph", "r6-smooth"}));

  auto* segre = app.add_subcommand("segre", "Print the universal Segre polynomial s_k");
  segre->add_option("--m", o.segre_m, "Degree k")->required();

  auto* bott = app.add_subcommand("bott", "pi_k(SO(2n)/U(n)) in the stable range");
  bott->add_option("--k", o.bott_k)->required();
  bott->add_option("--n", o.bott_n)->required();

  auto* catalog = app.add_subcommand("catalog", "Built-in descriptors");
  catalog->require_subcommand(1);
  auto* catalog_list = catalog->add_subcommand("list", "List names");
  auto* catalog_show = catalog->add_subcommand("show", "Print a descriptor as JSON");
  catalog_show->add_option("name", o.show_name)->required();

  auto* lef = app.add_subcommand("lefschetz", "Numerics of the genus-1 Lefschetz fibration");
  lef->require_subcommand(1);
  auto add_map_options = [&](CLI::App* sub) {
    sub->add_option("--map", o.map_name)
        ->check(CLI::IsMember({"f1", "f_full", "hopf", "suspension_hopf"}));
    sub->add_option("--twist-rate", o.twist_rate, "Twist rate of k for f_full");
    sub->add_option("--fd-step", o.fd_step, "Finite-difference step");
  };
  auto* verify = lef->add_subcommand("verify", "Run the numerical property suite");
  verify->add_option("--samples", o.samples, "Random points per property")->check(CLI::PositiveNumber);
  auto* critical = lef->add_subcommand("critical", "Locate critical points by descent");
  add_map_options(critical);
  critical->add_option("--seeds", o.seeds, "Number of random starts")->check(CLI::NonNegativeNumber);
  auto* fiber = lef->add_subcommand("fiber", "Sample a fiber by Gauss-Newton projection");
  add_map_options(fiber);
  fiber->add_option("--value", o.value, "Target point \"re,im,t\" on S^2");
  fiber->add_option("--n", o.n, "Number of random starts")->check(CLI::PositiveNumber);
  fiber->add_option("--out", o.out_path, "Output path");
  fiber->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
  fiber->add_option("--tol-fiber", o.tol_fiber, "Residual tolerance");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(o, out, err, "UsageError", e.what());
    return kExitInputError;
  }

  try {
    if (seed_opt->count() == 0) o.seed = default_seed();

    if (decide->parsed()) return cmd_decide(o, out);
    if (segre->parsed()) return cmd_segre(o, out, err);
    if (bott->parsed()) return cmd_bott(o, out);
    if (catalog_list->parsed()) return cmd_catalog_list(o, out);
    if (catalog_show->parsed()) return cmd_catalog_show(o, out);
    if (verify->parsed()) return cmd_lefschetz_verify(o, out);
    if (critical->parsed()) return cmd_lefschetz_critical(o, out);
    if (fiber->parsed()) return cmd_lefschetz_fiber(o, out);
  } catch (const Error& e) {
    emit_error(o, out, err, std::string(to_string(e.code())), e.what());
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace acman::cli
