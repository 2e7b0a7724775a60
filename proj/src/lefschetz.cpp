#include "acman/lefschetz.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "acman/errors.hpp"

namespace acman::lefschetz {

Eigen::VectorXd SpherePoint4::coords() const {
  Eigen::VectorXd v(5);
  v << z1.real(), z1.imag(), z2.real(), z2.imag(), x;
  return v;
}

SpherePoint4 SpherePoint4::from_coords(const Eigen::VectorXd& v) {
  if (v.size() != 5) throw Error(ErrorCode::InvalidArgument, "S^4 point needs 5 coordinates");
  return {{v[0], v[1]}, {v[2], v[3]}, v[4]};
}

Eigen::Vector4d SpherePoint3::coords() const {
  return {z1.real(), z1.imag(), z2.real(), z2.imag()};
}

SpherePoint3 SpherePoint3::from_coords(const Eigen::Vector4d& v) {
  return {{v[0], v[1]}, {v[2], v[3]}};
}

Eigen::Vector3d SpherePoint2::coords() const { return {z.real(), z.imag(), t}; }

SpherePoint2 SpherePoint2::from_coords(const Eigen::Vector3d& v) { return {{v[0], v[1]}, v[2]}; }

RotationK::RotationK(const Eigen::Matrix4d& matrix) : matrix_(matrix) {
  const double defect = (matrix.transpose() * matrix - Eigen::Matrix4d::Identity()).norm();
  if (!(defect <= kTolOrtho)) {
    throw Error(ErrorCode::BadRotation, "K^T K differs from I by " + std::to_string(defect));
  }
  if (matrix.determinant() < 0) throw Error(ErrorCode::BadRotation, "det K = -1");
}

RotationK RotationK::identity() { return RotationK(Eigen::Matrix4d::Identity()); }

RotationK RotationK::plane_rotation(int i, int j, double angle) {
  if (i < 0 || j < 0 || i > 3 || j > 3 || i == j) {
    throw Error(ErrorCode::InvalidArgument, "plane_rotation needs two distinct indices in 0..3");
  }
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(i, i) = std::cos(angle);
  m(j, j) = std::cos(angle);
  m(j, i) = std::sin(angle);
  m(i, j) = -std::sin(angle);
  return RotationK(m);
}

namespace {

// Twist data: axis b in the kernel of the generator, rotation plane {u, w}.
const Eigen::Vector4d kTwistAxis = Eigen::Vector4d(0, 0, 1, 1) / std::numbers::sqrt2;
const Eigen::Vector4d kTwistU = Eigen::Vector4d(1, 0, 0, 0);
const Eigen::Vector4d kTwistW = Eigen::Vector4d(0, 0, -1, 1) / std::numbers::sqrt2;

}  // namespace

S3Diffeo::S3Diffeo(RotationK rotation, double twist_rate)
    : rotation_(std::move(rotation)), twist_rate_(twist_rate) {
  if (!std::isfinite(twist_rate)) throw Error(ErrorCode::InvalidArgument, "twist rate must be finite");
}

S3Diffeo S3Diffeo::identity() { return S3Diffeo(RotationK::identity(), 0.0); }

S3Diffeo S3Diffeo::default_k() { return S3Diffeo(RotationK::identity(), std::numbers::pi / 2); }

Eigen::Vector4d S3Diffeo::apply(const Eigen::Vector4d& v) const {
  Eigen::Vector4d twisted = v;
  if (twist_rate_ != 0.0) {
    const double angle = twist_rate_ * kTwistAxis.dot(v);
    const double pu = kTwistU.dot(v);
    const double pw = kTwistW.dot(v);
    // exp(angle A) with A u = w, A w = -u
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    twisted += (c * pu - s * pw - pu) * kTwistU + (s * pu + c * pw - pw) * kTwistW;
  }
  return rotation_.apply(twisted);
}

namespace {

void check_on_sphere(double norm_sq, const char* where) {
  if (!(std::abs(norm_sq - 1.0) <= kTolOnSphere)) {
    std::ostringstream os;
    os << where << ": squared norm " << std::setprecision(17) << norm_sq << " is off the sphere";
    throw Error(ErrorCode::OffSphere, os.str());
  }
}

// Raw formulas on ambient coordinates.
Eigen::Vector3d hopf_raw(const Eigen::Vector4d& v) {
  const Complex z1(v[0], v[1]);
  const Complex z2(v[2], v[3]);
  const Complex w = 2.0 * z1 * std::conj(z2);
  return {w.real(), w.imag(), std::norm(z1) - std::norm(z2)};
}

Eigen::Vector4d suspension_raw(const Eigen::VectorXd& v) {
  const Complex z1(v[0], v[1]);
  const Complex z2(v[2], v[3]);
  const double x = v[4];
  const Complex w = 2.0 * z1 * std::conj(z2);
  return {w.real(), w.imag(), std::norm(z1) - std::norm(z2), x * std::sqrt(2.0 - x * x)};
}

Eigen::Vector3d f1_raw(const Eigen::VectorXd& v) {
  const Complex z1(v[0], v[1]);
  const Complex z2(v[2], v[3]);
  const double x = v[4];
  const double a = std::norm(z1) - std::norm(z2);
  const Complex w = 4.0 * z1 * std::conj(z2) * Complex(a, -x * std::sqrt(2.0 - x * x));
  return {w.real(), w.imag(), 8.0 * std::norm(z1) * std::norm(z2) - 1.0};
}

Eigen::VectorXd normalized(const Eigen::VectorXd& v) { return v / v.norm(); }

Eigen::Vector3d critical_value(const S3Diffeo& k, double sign) {
  return hopf_raw(k.apply(Eigen::Vector4d(0, 0, 0, sign)));
}

}  // namespace

SpherePoint2 hopf(const SpherePoint3& p) {
  const Eigen::Vector4d v = p.coords();
  check_on_sphere(v.squaredNorm(), "hopf");
  return SpherePoint2::from_coords(hopf_raw(v / v.norm()));
}

SpherePoint3 suspension_hopf(const SpherePoint4& p) {
  const Eigen::VectorXd v = p.coords();
  check_on_sphere(v.squaredNorm(), "suspension_hopf");
  return SpherePoint3::from_coords(suspension_raw(normalized(v)));
}

SpherePoint2 f1(const SpherePoint4& p) {
  const Eigen::VectorXd v = p.coords();
  check_on_sphere(v.squaredNorm(), "f1");
  return SpherePoint2::from_coords(f1_raw(normalized(v)));
}

double chordal_distance(const SpherePoint2& a, const SpherePoint2& b) {
  return (a.coords() - b.coords()).norm();
}

double critical_value_separation(const S3Diffeo& k) {
  return (critical_value(k, 1.0) - critical_value(k, -1.0)).norm();
}

namespace {

void require_separating(const S3Diffeo& k) {
  const double separation = critical_value_separation(k);
  if (separation <= 1e-9) {
    throw Error(ErrorCode::DegenerateK,
                "k(0,i) and k(0,-i) lie on one Hopf fiber (separation " +
                    std::to_string(separation) + ")");
  }
}

}  // namespace

SpherePoint2 f_full(const SpherePoint4& p, const S3Diffeo& k) {
  require_separating(k);
  const Eigen::VectorXd v = p.coords();
  check_on_sphere(v.squaredNorm(), "f_full");
  return SpherePoint2::from_coords(hopf_raw(k.apply(suspension_raw(normalized(v)))));
}

std::string SphereMap::name() const {
  switch (id_) {
    case MapId::Hopf: return "hopf";
    case MapId::SuspensionHopf: return "suspension_hopf";
    case MapId::F1: return "f1";
    case MapId::FFull: return "f_full";
  }
  return "?";
}

int SphereMap::domain_dim() const noexcept { return id_ == MapId::Hopf ? 4 : 5; }

int SphereMap::target_dim() const noexcept { return id_ == MapId::SuspensionHopf ? 4 : 3; }

Eigen::VectorXd SphereMap::operator()(const Eigen::VectorXd& p) const {
  switch (id_) {
    case MapId::Hopf: return hopf_raw(p.head<4>());
    case MapId::SuspensionHopf: return suspension_raw(p);
    case MapId::F1: return f1_raw(p);
    case MapId::FFull: return hopf_raw(k_.apply(suspension_raw(p)));
  }
  return {};
}

namespace {

/// Orthonormal basis of the tangent space p^perp, as columns.
Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& p) {
  const Eigen::Index d = p.size();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(p);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
  return q.rightCols(d - 1);
}

/// Differential along the tangent basis (columns), unprojected in the target.
Eigen::MatrixXd tangent_jacobian(const SphereMap& map, const Eigen::VectorXd& p,
                                 const Eigen::MatrixXd& basis, double h) {
  Eigen::MatrixXd jac(map.target_dim(), basis.cols());
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    jac.col(j) = (map(p + h * basis.col(j)) - map(p - h * basis.col(j))) / (2.0 * h);
  }
  return jac;
}

void require_domain_point(const SphereMap& map, const Eigen::VectorXd& p) {
  if (p.size() != map.domain_dim()) {
    throw Error(ErrorCode::InvalidArgument, map.name() + " expects a point in R^" +
                                                std::to_string(map.domain_dim()));
  }
  check_on_sphere(p.squaredNorm(), map.name().c_str());
}

}  // namespace

Eigen::VectorXd tangent_singular_values(const SphereMap& map, const Eigen::VectorXd& p_in,
                                        double h) {
  require_domain_point(map, p_in);
  const Eigen::VectorXd p = normalized(p_in);
  const Eigen::MatrixXd jac = tangent_jacobian(map, p, tangent_basis(p), h);
  const Eigen::VectorXd image = normalized(map(p));
  const Eigen::MatrixXd projector =
      Eigen::MatrixXd::Identity(image.size(), image.size()) - image * image.transpose();
  return Eigen::JacobiSVD<Eigen::MatrixXd>(projector * jac).singularValues();
}

double smallest_tangent_singular_value(const SphereMap& map, const Eigen::VectorXd& p, double h) {
  // The target sphere has dimension target_dim - 1.
  return tangent_singular_values(map, p, h)[map.target_dim() - 2];
}

int jacobian_rank(const SphereMap& map, const Eigen::VectorXd& p, double h, double tol_sv) {
  const Eigen::VectorXd sv = tangent_singular_values(map, p, h);
  return static_cast<int>((sv.array() > tol_sv).count());
}

int jacobian_rank(const SphereMap& map, const SpherePoint4& p, double h, double tol_sv) {
  return jacobian_rank(map, p.coords(), h, tol_sv);
}

Eigen::VectorXd random_sphere_point(int dim, std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(dim);
  do {
    for (int i = 0; i < dim; ++i) v[i] = normal(rng);
  } while (v.norm() < 1e-8);
  return v / v.norm();
}

namespace {

SeedOutcome descend_to_critical(const SphereMap& map, Eigen::VectorXd p, int index,
                                const CriticalSearchOptions& options) {
  auto objective = [&](const Eigen::VectorXd& q) {
    const double sv = smallest_tangent_singular_value(map, q, options.h);
    return sv * sv;
  };
  constexpr double kGradientStep = 1e-6;
  double value = objective(p);
  double alpha = 1.0;
  SeedOutcome out{index, false, std::sqrt(value), 0, p};
  for (int it = 0; it < options.max_iterations; ++it) {
    out.iterations = it;
    if (std::sqrt(value) <= options.converge_sv) break;
    const Eigen::MatrixXd basis = tangent_basis(p);
    Eigen::VectorXd grad(basis.cols());
    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
      grad[j] = (objective(normalized(p + kGradientStep * basis.col(j))) -
                 objective(normalized(p - kGradientStep * basis.col(j)))) /
                (2.0 * kGradientStep);
    }
    const double grad_sq = grad.squaredNorm();
    if (grad_sq == 0.0) break;
    alpha = std::min(alpha * 4.0, 1.0 / std::sqrt(grad_sq));
    bool accepted = false;
    for (int backtrack = 0; backtrack < 60; ++backtrack) {
      const Eigen::VectorXd candidate = normalized(p - alpha * (basis * grad));
      const double candidate_value = objective(candidate);
      if (candidate_value <= value - 1e-4 * alpha * grad_sq) {
        p = candidate;
        value = candidate_value;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;  // stalled
  }
  out.point = p;
  out.final_sv = std::sqrt(value);
  out.converged = out.final_sv <= options.converge_sv;
  return out;
}

bool reversed_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = a.size() - 1; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

}  // namespace

CriticalSearchResult find_critical_points(const SphereMap& map, int n_seeds, std::uint64_t seed,
                                          const CriticalSearchOptions& options) {
  if (n_seeds < 0) throw Error(ErrorCode::InvalidArgument, "n_seeds must be non-negative");
  CriticalSearchResult result;
  struct Cluster {
    Eigen::VectorXd best;
    double best_sv;
  };
  std::vector<Cluster> clusters;
  for (int i = 0; i < n_seeds; ++i) {
    SeedOutcome outcome = descend_to_critical(
        map, random_sphere_point(map.domain_dim(), seed, static_cast<std::uint64_t>(i)), i,
        options);
    if (outcome.converged) {
      auto it = std::find_if(clusters.begin(), clusters.end(), [&](const Cluster& c) {
        return (c.best - outcome.point).norm() <= options.cluster_radius;
      });
      if (it == clusters.end()) {
        clusters.push_back({outcome.point, outcome.final_sv});
      } else if (outcome.final_sv < it->best_sv) {
        it->best = outcome.point;
        it->best_sv = outcome.final_sv;
      }
    }
    result.seeds.push_back(std::move(outcome));
  }
  for (auto& c : clusters) result.points.push_back(std::move(c.best));
  std::sort(result.points.begin(), result.points.end(), reversed_less);
  return result;
}

FiberSample sample_fiber(const SphereMap& map, const SpherePoint2& target, int n,
                         std::uint64_t seed, const FiberOptions& options) {
  if (map.domain_dim() != 5 || map.target_dim() != 3) {
    throw Error(ErrorCode::InvalidArgument, "sample_fiber needs a map S^4 -> S^2, got " + map.name());
  }
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "sample_fiber needs n >= 1");
  const Eigen::Vector3d goal = target.coords();
  check_on_sphere(goal.squaredNorm(), "sample_fiber target");

  FiberSample sample;
  sample.target = target;
  sample.seed = seed;
  sample.attempts = n;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd p = random_sphere_point(5, seed, static_cast<std::uint64_t>(i));
    double residual = (map(p) - goal).norm();
    for (int it = 0; it < options.max_iterations && residual > options.tol_fiber; ++it) {
      const Eigen::MatrixXd basis = tangent_basis(p);
      const Eigen::MatrixXd jac = tangent_jacobian(map, p, basis, options.h);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
      svd.setThreshold(1e-10);
      // least-norm Gauss-Newton step in tangent coordinates
      const Eigen::VectorXd step = basis * svd.solve(goal - map(p));
      double alpha = 1.0;
      bool improved = false;
      for (int backtrack = 0; backtrack < 30; ++backtrack, alpha *= 0.5) {
        const Eigen::VectorXd candidate = normalized(p + alpha * step);
        const double candidate_residual = (map(candidate) - goal).norm();
        if (candidate_residual < residual) {
          p = candidate;
          residual = candidate_residual;
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }
    if (residual <= options.tol_fiber) {
      sample.points.push_back(SpherePoint4::from_coords(p));
      sample.residuals.push_back(residual);
    }
  }
  return sample;
}

nlohmann::json to_json(const FiberSample& sample) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : sample.points) {
    points.push_back({p.z1.real(), p.z1.imag(), p.z2.real(), p.z2.imag(), p.x});
  }
  return {{"target", {sample.target.z.real(), sample.target.z.imag(), sample.target.t}},
          {"seed", sample.seed},
          {"attempts", sample.attempts},
          {"columns", {"re_z1", "im_z1", "re_z2", "im_z2", "x"}},
          {"points", std::move(points)},
          {"residuals", sample.residuals}};
}

FiberSample fiber_sample_from_json(const nlohmann::json& j) {
  try {
    FiberSample sample;
    const auto target = j.at("target").get<std::vector<double>>();
    if (target.size() != 3) throw Error(ErrorCode::SchemaError, "/target must have 3 entries");
    sample.target = {{target[0], target[1]}, target[2]};
    sample.seed = j.at("seed").get<std::uint64_t>();
    sample.attempts = j.at("attempts").get<int>();
    for (const auto& row : j.at("points")) {
      const auto v = row.get<std::vector<double>>();
      if (v.size() != 5) throw Error(ErrorCode::SchemaError, "/points rows must have 5 entries");
      sample.points.push_back({{v[0], v[1]}, {v[2], v[3]}, v[4]});
    }
    sample.residuals = j.at("residuals").get<std::vector<double>>();
    if (sample.residuals.size() != sample.points.size()) {
      throw Error(ErrorCode::SchemaError, "/residuals must match /points in length");
    }
    return sample;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("fiber sample: ") + e.what());
  }
}

void write_csv(std::ostream& out, const FiberSample& sample) {
  out << "re_z1,im_z1,re_z2,im_z2,x,residual\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    const auto& p = sample.points[i];
    out << p.z1.real() << ',' << p.z1.imag() << ',' << p.z2.real() << ',' << p.z2.imag() << ','
        << p.x << ',' << sample.residuals[i] << '\n';
  }
}

void export_point_cloud(const FiberSample& sample, const std::filesystem::path& path,
                        CloudFormat format) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  if (format == CloudFormat::Csv) {
    write_csv(out, sample);
  } else {
    out << to_json(sample).dump(2) << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
}

FiberSample load_point_cloud_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::SchemaError, "'" + path.string() + "' is not JSON");
  return fiber_sample_from_json(j);
}

std::vector<PropertyCheck> verify_properties(std::uint64_t seed, int n_samples) {
  double hopf_norm = 0, suspension_norm = 0, f1_norm = 0, factorization = 0, equivariance = 0;
  std::mt19937_64 phase_rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  for (int i = 0; i < n_samples; ++i) {
    const auto u = static_cast<std::uint64_t>(i);
    const SpherePoint4 p = SpherePoint4::from_coords(random_sphere_point(5, seed, u));
    const SpherePoint3 q = SpherePoint3::from_coords(random_sphere_point(4, seed ^ 0x5A5A5A5AULL, u));
    const SpherePoint2 hq = hopf(q);
    const SpherePoint3 sp = suspension_hopf(p);
    const SpherePoint2 fp = f1(p);
    hopf_norm = std::max(hopf_norm, std::abs(hq.coords().norm() - 1.0));
    suspension_norm = std::max(suspension_norm, std::abs(sp.coords().norm() - 1.0));
    f1_norm = std::max(f1_norm, std::abs(fp.coords().norm() - 1.0));
    factorization = std::max(factorization, (fp.coords() - hopf(sp).coords()).norm());
    const Complex rot = std::polar(1.0, phase(phase_rng));
    equivariance =
        std::max(equivariance, (hopf({rot * q.z1, rot * q.z2}).coords() - hq.coords()).norm());
  }

  const SphereMap f1_map = SphereMap::f1();
  const SpherePoint4 a_plus{{0, 0}, {0, 0}, 1.0};
  const SpherePoint4 a_minus{{0, 0}, {0, 0}, -1.0};
  const SpherePoint4 regular{{std::numbers::sqrt2 / 2, 0}, {std::numbers::sqrt2 / 2, 0}, 0.0};
  const SpherePoint2 south{{0, 0}, -1.0};
  const double node_value = std::max(chordal_distance(f1(a_plus), south),
                                     chordal_distance(f1(a_minus), south));
  const double sv_critical =
      std::max(smallest_tangent_singular_value(f1_map, a_plus.coords()),
               smallest_tangent_singular_value(f1_map, a_minus.coords()));
  const double sv_regular = smallest_tangent_singular_value(f1_map, regular.coords());
  bool identity_degenerate = false;
  try {
    (void)f_full(a_plus, S3Diffeo::identity());
  } catch (const Error& e) {
    identity_degenerate = e.code() == ErrorCode::DegenerateK;
  }

  const double eps = 4 * std::numeric_limits<double>::epsilon();
  return {
      {"hopf output on S^2", hopf_norm <= 1e-12, hopf_norm, 1e-12},
      {"suspension output on S^3", suspension_norm <= 1e-12, suspension_norm, 1e-12},
      {"f1 output on S^2", f1_norm <= 1e-12, f1_norm, 1e-12},
      {"f1 = h o suspension(h)", factorization <= 1e-12, factorization, 1e-12},
      {"hopf invariant under diagonal phase", equivariance <= 1e-12, equivariance, 1e-12},
      {"f1(0,0,+-1) = (0,-1)", node_value <= eps, node_value, eps},
      {"sv_min of f1 at (0,0,+-1)", sv_critical <= 1e-6, sv_critical, 1e-6},
      {"sv_min of f1 at (1/sqrt2,1/sqrt2,0)", sv_regular >= 0.1, sv_regular, 0.1},
      {"f_full default k separates critical values",
       critical_value_separation(S3Diffeo::default_k()) >= 0.5,
       critical_value_separation(S3Diffeo::default_k()), 0.5},
      {"f_full identity k collapses critical values",
       critical_value_separation(S3Diffeo::identity()) <= 1e-12,
       critical_value_separation(S3Diffeo::identity()), 1e-12},
      {"identity k raises DegenerateK", identity_degenerate, identity_degenerate ? 1.0 : 0.0, 1.0},
  };
}

}  // namespace acman::lefschetz
