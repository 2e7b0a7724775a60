#include "acman/obstruction.hpp"

#include "acman/errors.hpp"

namespace acman {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Undetermined: return "undetermined";
  }
  return "undetermined";
}

std::string_view to_string(HomotopyGroupValue v) noexcept {
  switch (v) {
    case HomotopyGroupValue::Zero: return "0";
    case HomotopyGroupValue::Z: return "Z";
    case HomotopyGroupValue::Z2: return "Z2";
    case HomotopyGroupValue::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

std::string stiefel_label(Field field, int frames, int n) {
  return "V_" + std::to_string(frames) + (field == Field::Real ? "(R^" : "(C^") +
         std::to_string(n) + ")";
}

LedgerEntry stiefel_entry(Field field, int frames, int n, std::string role) {
  return {stiefel_label(field, frames, n), std::int64_t{stiefel_connectivity(field, frames, n)},
          std::move(role)};
}

LedgerEntry gamma_entry(int i, int n, std::string role) {
  return {"pi_" + std::to_string(i) + "(Gamma(" + std::to_string(n) + "))", bott_group(i, n),
          std::move(role)};
}

std::string vector_string(const IntVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

bool is_zero(const IntVector& v) {
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace

std::int64_t invariant_I(const ManifoldDescriptor& m) {
  const auto& table = m.require_table();
  const Rational half = -pair(segre_polynomial(table.m()), table, table.m()) / 2;
  if (denominator(half) != 1) {
    throw Error(ErrorCode::IntegralityViolation,
                "'" + m.name + "': -1/2 <s_m, [M]> = " + half.str() +
                    " is not an integer; the Chern data is inconsistent");
  }
  return static_cast<std::int64_t>(numerator(half));
}

EmbeddingDecision decide_embed_R_4m_plus_2(const ManifoldDescriptor& m) {
  EmbeddingDecision d;
  d.verdict = Verdict::Yes;
  d.target_dim = 4 * m.m + 2;
  d.ledger.push_back(stiefel_entry(Field::Complex, m.m, 2 * m.m + 1,
                                   "complex normal framing: complex m-frames extend over M^{2m}"));
  d.ledger.push_back(stiefel_entry(Field::Real, 2 * m.m, 4 * m.m + 2,
                                   "tangent frames of an embedding lift uniquely up to homotopy"));
  d.citations = {"ph-embedding-R^{4m+2} (universal)", "Whitney embedding"};
  return d;
}

EmbeddingDecision decide_immerse_R_4m(const ManifoldDescriptor& m) {
  const std::int64_t I = invariant_I(m);
  EmbeddingDecision d;
  d.target_dim = 4 * m.m;
  d.invariant_I = I;
  d.normal_euler_number = -2 * I;
  d.ledger.push_back(stiefel_entry(Field::Real, 2 * m.m, 4 * m.m,
                                   "immersions: tangent frames lift up to the top obstruction"));
  d.ledger.push_back(stiefel_entry(Field::Complex, m.m, 2 * m.m,
                                   "complex frames: only the top-degree obstruction survives"));
  d.citations = {"ph-immersion-R^{4m} iff I>=0", "Hirsch-Smale: pi_0(Imm(M,R^{4m})) = Z"};
  if (I >= 0) {
    d.verdict = Verdict::Yes;
    d.double_points = I;
    d.regular_homotopy_class = I;
    d.notes.push_back("double points are transverse and all positive");
    d.notes.push_back("e(nu_f)[M] = -2 I(f)");
  } else {
    d.verdict = Verdict::No;
    d.ledger.push_back({"I(M,J)", I, "failed inequality I(M,J) >= 0"});
  }
  return d;
}

EmbeddingDecision decide_embed_R_4m(const ManifoldDescriptor& m) {
  EmbeddingDecision d;
  d.target_dim = 4 * m.m;
  if (!m.closed) {
    d.verdict = Verdict::Yes;
    d.ledger.push_back(stiefel_entry(Field::Real, 2 * m.m, 4 * m.m,
                                     "open M^{2m} has no top cell: every obstruction vanishes"));
    d.citations = {"ph-embedding-R^{4m} for open manifolds"};
    return d;
  }
  const std::int64_t I = invariant_I(m);
  d.invariant_I = I;
  d.normal_euler_number = -2 * I;
  d.ledger.push_back(stiefel_entry(Field::Real, 2 * m.m, 4 * m.m,
                                   "embeddings: tangent frames lift up to the top obstruction"));
  d.ledger.push_back(stiefel_entry(Field::Complex, m.m, 2 * m.m,
                                   "complex frames: top obstruction is the self-intersection"));
  d.citations = {"ph-embedding-R^{4m} iff I=0", "Whitney self-intersection"};
  if (I == 0) {
    d.verdict = Verdict::Yes;
    d.double_points = 0;
    d.regular_homotopy_class = 0;
  } else {
    d.verdict = Verdict::No;
    d.ledger.push_back({"I(M,J)", I, "failed equality I(M,J) = 0"});
  }
  return d;
}

EmbeddingDecision decide_embed_R6(const FourManifoldDescriptor& m) {
  EmbeddingDecision d;
  d.target_dim = 6;
  d.citations = {"ph-embedding-R^6 iff sigma=chi=0 and c1=0", "Cappell-Shaneson"};
  for (int i = 1; i <= 4; ++i) {
    d.ledger.push_back(gamma_entry(i, 3, i == 2 ? "carries the obstruction class Omega"
                                                : "no obstruction in this degree"));
  }
  if (!m.closed()) {
    d.verdict = Verdict::Undetermined;
    d.notes.push_back("hypothesis failed: M is not closed");
    return d;
  }
  if (!m.torsion_free()) {
    d.verdict = Verdict::Undetermined;
    d.notes.push_back("hypothesis failed: H^2(M) may have 2-torsion");
    return d;
  }
  bool ok = true;
  if (m.signature() != 0) {
    ok = false;
    d.ledger.push_back({"sigma(M)", std::int64_t{m.signature()}, "failed condition sigma = 0"});
  }
  if (m.euler() != 0) {
    ok = false;
    d.ledger.push_back({"chi(M)", m.euler(), "failed condition chi = 0"});
  }
  try {
    const IntVector omega = obstruction_class_R6(m);
    d.notes.push_back("Omega = c1/2 = " + vector_string(omega));
  } catch (const Error&) {
    d.notes.push_back("c1 is not divisible by 2, so Omega cannot vanish");
  }
  if (!is_zero(m.c1())) {
    ok = false;
    d.notes.push_back("failed condition c1 = 0: c1 = " + vector_string(m.c1()));
  }
  d.verdict = ok ? Verdict::Yes : Verdict::No;
  return d;
}

EmbeddingDecision smooth_embed_R6(const FourManifoldDescriptor& m) {
  EmbeddingDecision d;
  d.target_dim = 6;
  d.citations = {"Cappell-Shaneson"};
  if (!m.closed()) {
    d.verdict = Verdict::Undetermined;
    d.notes.push_back("hypothesis failed: M is not closed");
    return d;
  }
  bool ok = true;
  if (!m.w2_trivial()) {
    ok = false;
    d.notes.push_back("failed condition w2 = 0: c1 is not even");
  }
  if (m.signature() != 0) {
    ok = false;
    d.ledger.push_back({"sigma(M)", std::int64_t{m.signature()}, "failed condition sigma = 0"});
  }
  d.verdict = ok ? Verdict::Yes : Verdict::No;
  return d;
}

IntVector obstruction_class_R6(const FourManifoldDescriptor& m) {
  if (!m.torsion_free()) {
    throw Error(ErrorCode::InvalidArgument, "Omega needs H^2(M) free of 2-torsion");
  }
  IntVector omega;
  omega.reserve(m.c1().size());
  for (std::size_t i = 0; i < m.c1().size(); ++i) {
    if (m.c1()[i] % 2 != 0) {
      throw Error(ErrorCode::NotDivisible, "c1 coordinate " + std::to_string(i) + " is odd");
    }
    omega.push_back(m.c1()[i] / 2);
  }
  return omega;
}

bool parallelizable_4mfd(const FourManifoldDescriptor& m) {
  if (!m.closed()) throw Error(ErrorCode::OpenManifold, "'" + m.name() + "' is not closed");
  return m.w2_trivial() && m.signature() == 0 && m.euler() == 0;
}

std::int64_t curvatura_integra(const ManifoldDescriptor& m) {
  const std::int64_t chi = m.require_table().euler_characteristic();
  if (chi % 2 != 0) {
    throw Error(ErrorCode::IntegralityViolation,
                "'" + m.name + "': Euler characteristic " + std::to_string(chi) + " is odd");
  }
  return chi / 2;
}

HomotopyGroupValue bott_group(int k, int n) {
  if (k < 1 || n < 1) throw Error(ErrorCode::InvalidArgument, "bott_group needs k, n >= 1");
  if (k > 2 * n - 2) return HomotopyGroupValue::Unknown;
  switch (k % 8) {
    case 2:
    case 6: return HomotopyGroupValue::Z;
    case 0:
    case 7: return HomotopyGroupValue::Z2;
    default: return HomotopyGroupValue::Zero;
  }
}

int stiefel_connectivity(Field field, int m, int n) {
  if (m < 1 || m > n) throw Error(ErrorCode::InvalidArgument, "stiefel_connectivity needs 1 <= m <= n");
  return field == Field::Real ? n - m - 1 : 2 * (n - m);
}

}  // namespace acman
