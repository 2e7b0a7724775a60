// Acceptance suite: one PASS/FAIL line per criterion, each with its runtime bound.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "acman/errors.hpp"
#include "acman/lefschetz.hpp"
#include "acman/obstruction.hpp"

using namespace acman;

namespace {

struct Criterion {
  int id;
  std::string title;
  double max_seconds;
  std::function<bool(std::ostream&)> body;
};

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;  // no error is a failure for every caller here
}

bool expect(std::ostream& log, bool ok, const std::string& what) {
  if (!ok) log << "    failed: " << what << "\n";
  return ok;
}

bool surface_invariant(std::ostream& log) {
  bool ok = true;
  for (int g = 0; g <= 20; ++g) {
    ok &= expect(log, invariant_I(riemann_surface(g)) == 1 - g, "I(genus " + std::to_string(g) + ") = 1 - g");
  }
  return ok;
}

bool surface_immersion_equivalence(std::ostream& log) {
  bool ok = true;
  for (int g = 0; g <= 20; ++g) {
    const bool yes = decide_immerse_R_4m(riemann_surface(g)).verdict == Verdict::Yes;
    ok &= expect(log, yes == (g <= 1), "immersion verdict for genus " + std::to_string(g));
  }
  ok &= expect(log, decide_immerse_R_4m(riemann_surface(0)).double_points == 1, "sphere has 1 double point");
  ok &= expect(log, decide_immerse_R_4m(riemann_surface(1)).double_points == 0, "torus has 0 double points");
  ok &= expect(log, decide_embed_R_4m(riemann_surface(1)).verdict == Verdict::Yes, "torus embeds");
  return ok;
}

bool segre_correctness(std::ostream& log) {
  bool ok = true;
  const auto s = segre_polynomials_through(12);
  for (int k = 1; k <= 12; ++k) {
    ChernPolynomial c = ChernPolynomial::constant(1);
    ChernPolynomial series;
    for (int i = 1; i <= k; ++i) c = c + ChernPolynomial::chern_class(i);
    for (int j = 0; j <= k; ++j) series = series + s[static_cast<std::size_t>(j)];
    ok &= expect(log, (c * series).homogeneous_component(k).is_zero(),
                 "weight-" + std::to_string(k) + " component of c*s vanishes");
  }
  const auto c1 = ChernPolynomial::chern_class(1);
  const auto c2 = ChernPolynomial::chern_class(2);
  const auto c3 = ChernPolynomial::chern_class(3);
  ok &= expect(log, s[1] == -c1, "s1 = -c1");
  ok &= expect(log, s[2] == c1 * c1 - c2, "s2 = c1^2 - c2");
  ok &= expect(log, s[3] == -(c1 * c1 * c1) + c1 * c2 * Rational(2) - c3, "s3 = -c1^3 + 2c1c2 - c3");
  return ok;
}

bool projective_spaces(std::ostream& log) {
  bool ok = true;
  const std::vector<std::int64_t> expected_I{1, -3, 10};
  for (int m = 1; m <= 3; ++m) {
    const auto cp = projective_space(m);
    const std::int64_t I = invariant_I(cp);
    ok &= expect(log, I == expected_I[static_cast<std::size_t>(m - 1)], "I(CP^" + std::to_string(m) + ")");
    const auto d = decide_immerse_R_4m(cp);
    ok &= expect(log, d.normal_euler_number.has_value(), "normal Euler number reported");
    const std::int64_t normal_euler = d.normal_euler_number.value_or(0);
    ok &= expect(log, normal_euler == -2 * expected_I[static_cast<std::size_t>(m - 1)],
                 "normal Euler number of CP^" + std::to_string(m));
    log << "    CP^" << m << ": I = " << I << ", normal Euler number = " << normal_euler << "\n";
  }
  return ok;
}

bool integrality_gate(std::ostream& log) {
  const auto bad = make_closed("bad", ChernNumberTable(2, {{Partition{1, 1}, 9}, {Partition{2}, 2}}));
  return expect(log, code_of([&] { (void)invariant_I(bad); }) == ErrorCode::IntegralityViolation,
                "IntegralityViolation for -1/2 * 7");
}

bool r6_decision_suite(std::ostream& log) {
  bool ok = true;
  ok &= expect(log, decide_embed_R6(four_torus()).verdict == Verdict::Yes, "T4 -> yes");
  ok &= expect(log, decide_embed_R6(k3_surface()).verdict == Verdict::No, "K3 -> no");
  for (const auto& m : {four_torus(), k3_surface(), s2_times_s2(), complex_projective_plane()}) {
    const auto torsion = four_manifold(m.name() + "-torsion", m.form(), m.c1(), m.euler(), false);
    ok &= expect(log, decide_embed_R6(torsion).verdict == Verdict::Undetermined,
                 m.name() + " with torsion -> undetermined");
    if (decide_embed_R6(m).verdict == Verdict::Yes) {
      ok &= expect(log, smooth_embed_R6(m).verdict == Verdict::Yes, m.name() + ": smooth embedding");
      ok &= expect(log, parallelizable_4mfd(m), m.name() + ": parallelizable");
    }
  }
  return ok;
}

bool hirzebruch_validator(std::ostream& log) {
  bool ok = true;
  ok &= expect(log,
               code_of([] { (void)four_manifold("CP2", {{1}}, {1}, 3, true); }) == ErrorCode::SignatureMismatch,
               "c1 = (1) rejected");
  ok &= expect(log, four_manifold("CP2", {{1}}, {3}, 3, true).signature() == 1, "c1 = (3) accepted");
  ok &= expect(log, signature(e8_form()) == 8, "signature(E8) = 8");
  return ok;
}

bool bott_table(std::ostream& log) {
  bool ok = true;
  for (int n = 1; n <= 8; ++n) {
    for (int k = 1; k <= 2 * n - 2; ++k) {
      HomotopyGroupValue expected = HomotopyGroupValue::Zero;
      const int r = k % 8;
      if (r == 2 || r == 6) expected = HomotopyGroupValue::Z;
      if (r == 0 || r == 7) expected = HomotopyGroupValue::Z2;
      ok &= expect(log, bott_group(k, n) == expected,
                   "pi_" + std::to_string(k) + "(Gamma(" + std::to_string(n) + "))");
    }
  }
  const std::vector<HomotopyGroupValue> gamma3{HomotopyGroupValue::Zero, HomotopyGroupValue::Z,
                                               HomotopyGroupValue::Zero, HomotopyGroupValue::Zero};
  for (int i = 1; i <= 4; ++i) {
    ok &= expect(log, bott_group(i, 3) == gamma3[static_cast<std::size_t>(i - 1)],
                 "Gamma(3) list, i = " + std::to_string(i));
  }
  return ok;
}

bool sphere_map_numerics(std::ostream& log) {
  using namespace lefschetz;
  bool ok = true;
  double factorization = 0, norm_defect = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto p = SpherePoint4::from_coords(random_sphere_point(5, 2024, static_cast<std::uint64_t>(i)));
    const auto q = SpherePoint3::from_coords(random_sphere_point(4, 2025, static_cast<std::uint64_t>(i)));
    const auto fp = f1(p);
    const auto sp = suspension_hopf(p);
    factorization = std::max(factorization, chordal_distance(fp, hopf(sp)));
    norm_defect = std::max({norm_defect, std::abs(fp.coords().norm() - 1.0),
                            std::abs(sp.coords().norm() - 1.0), std::abs(hopf(q).coords().norm() - 1.0)});
  }
  log << "    max |f1 - h o Sh| = " << factorization << ", max norm defect = " << norm_defect << "\n";
  ok &= expect(log, factorization <= 1e-12, "factorization within 1e-12");
  ok &= expect(log, norm_defect <= 1e-12, "sphere norms within 1e-12");

  const SpherePoint2 south{0.0, -1.0};
  const double eps = 4 * std::numeric_limits<double>::epsilon();
  ok &= expect(log, chordal_distance(f1({0.0, 0.0, 1.0}), south) <= eps, "f1(a+) = (0,-1)");
  ok &= expect(log, chordal_distance(f1({0.0, 0.0, -1.0}), south) <= eps, "f1(a-) = (0,-1)");

  const auto critical = find_critical_points(SphereMap::f1(), 200, 0);
  Eigen::VectorXd a_plus = Eigen::VectorXd::Zero(5), a_minus = Eigen::VectorXd::Zero(5);
  a_plus[4] = 1;
  a_minus[4] = -1;
  ok &= expect(log, critical.points.size() == 2, "exactly two clusters");
  if (critical.points.size() == 2) {
    const double e_plus = (critical.points[0] - a_plus).norm();
    const double e_minus = (critical.points[1] - a_minus).norm();
    log << "    cluster errors: " << e_plus << ", " << e_minus << "\n";
    ok &= expect(log, e_plus <= 1e-6 && e_minus <= 1e-6, "clusters within 1e-6 of (0,0,+-1)");
  }

  const double separation = critical_value_separation(S3Diffeo::default_k());
  log << "    default k critical-value separation = " << separation << "\n";
  ok &= expect(log, separation >= 0.5, "default k separation >= 0.5");
  ok &= expect(log,
               code_of([] { (void)f_full({0.0, 0.0, 1.0}, S3Diffeo::identity()); }) == ErrorCode::DegenerateK,
               "identity k raises DegenerateK");
  return ok;
}

bool fiber_torus(std::ostream& log) {
  using namespace lefschetz;
  const auto sample = sample_fiber(SphereMap::f1(), {0.0, 1.0}, 500, 7);
  log << "    converged " << sample.points.size() << "/500\n";
  bool ok = expect(log, sample.convergence_rate() >= 0.5, "convergence rate >= 50%");
  for (const auto& p : sample.points) {
    ok &= expect(log, std::abs(p.x) <= 1e-6, "|x| <= 1e-6");
    ok &= expect(log, std::abs(std::abs(p.z1) - std::numbers::sqrt2 / 2) <= 1e-6, "||z1| - 1/sqrt2| <= 1e-6");
    ok &= expect(log, jacobian_rank(SphereMap::f1(), p, kFiniteDifferenceStep, 1e-3) == 2, "rank 2");
    if (!ok) break;
  }
  return ok;
}

bool product_kunneth(std::ostream& log) {
  bool ok = true;
  std::vector<ManifoldDescriptor> catalog;
  for (int g = 0; g <= 10; ++g) catalog.push_back(riemann_surface(g));
  for (int m = 1; m <= 6; ++m) catalog.push_back(projective_space(m));
  for (const auto& n : catalog) {
    ok &= expect(log, invariant_I(product(torus(1), n)) == 0, "I(T2 x " + n.name + ") = 0");
    for (const auto& other : catalog) {
      if (n.m + other.m > 7) continue;
      ok &= expect(log, product(n, other).table == product(other, n).table,
                   n.name + " x " + other.name + " commutes");
    }
  }
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "surface invariant I = 1 - g, g = 0..20", 0.1, surface_invariant},
      {2, "immersion into R^4 iff g in {0,1}; double points 1 and 0", 0.1, surface_immersion_equivalence},
      {3, "Segre inversion through k = 12; s1, s2, s3 exact", 2.0, segre_correctness},
      {4, "I(CP^1,2,3) = 1, -3, 10; normal Euler -2, 6, -20", 0.1, projective_spaces},
      {5, "integrality gate raises IntegralityViolation", 0.1, integrality_gate},
      {6, "R^6 decision suite", 0.1, r6_decision_suite},
      {7, "Hirzebruch validator and signature(E8) = 8", 0.1, hirzebruch_validator},
      {8, "Bott table for k <= 2n-2, n <= 8, and Gamma(3)", 0.1, bott_table},
      {9, "f1 numerics, critical points, k separation", 30.0, sphere_map_numerics},
      {10, "regular fiber over (0,1) is the torus", 60.0, fiber_torus},
      {11, "product with T^2 kills I; product commutes", 1.0, product_kunneth},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    std::ostringstream log;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = c.body(log);
    } catch (const std::exception& e) {
      log << "    exception: " << e.what() << "\n";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.max_seconds) {
      log << "    runtime " << seconds << " s exceeds " << c.max_seconds << " s\n";
      ok = false;
    }
    failures += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << "  (" << seconds << " s)\n"
              << log.str();
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
