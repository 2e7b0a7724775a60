#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace acman::lefschetz {

using Complex = std::complex<double>;

inline constexpr double kTolOnSphere = 1e-9;
inline constexpr double kTolOrtho = 1e-9;
inline constexpr double kTolFiber = 1e-10;
inline constexpr double kFiniteDifferenceStep = 1e-5;

/// Point of S^4 in C^2 x R.
struct SpherePoint4 {
  Complex z1;
  Complex z2;
  double x = 0.0;

  Eigen::VectorXd coords() const;  // (Re z1, Im z1, Re z2, Im z2, x)
  static SpherePoint4 from_coords(const Eigen::VectorXd& v);
  bool operator==(const SpherePoint4&) const = default;
};

/// Point of S^3 in C^2.
struct SpherePoint3 {
  Complex z1;
  Complex z2;

  Eigen::Vector4d coords() const;
  static SpherePoint3 from_coords(const Eigen::Vector4d& v);
  bool operator==(const SpherePoint3&) const = default;
};

/// Point of S^2 in C x R.
struct SpherePoint2 {
  Complex z;
  double t = 0.0;

  Eigen::Vector3d coords() const;
  static SpherePoint2 from_coords(const Eigen::Vector3d& v);
  bool operator==(const SpherePoint2&) const = default;
};

/// Special-orthogonal map of C^2 = R^4 in the coordinates (Re z1, Im z1, Re z2, Im z2).
class RotationK {
 public:
  /// Throws BadRotation unless K^T K = I (within kTolOrtho) and det K = +1.
  explicit RotationK(const Eigen::Matrix4d& matrix);
  static RotationK identity();
  /// Rotation by `angle` in the plane of coordinates i, j.
  static RotationK plane_rotation(int i, int j, double angle);

  const Eigen::Matrix4d& matrix() const noexcept { return matrix_; }
  Eigen::Vector4d apply(const Eigen::Vector4d& v) const { return matrix_ * v; }

 private:
  Eigen::Matrix4d matrix_;
};

/// Orientation-preserving diffeomorphism k = R o T of S^3, where
/// T(v) = exp(rate * <v, b> A) v twists v by an angle proportional to its
/// height along b, A generating rotation in a plane orthogonal to b. T is
/// isotopic to the identity through diffeomorphisms (rate -> 0) and its
/// inverse twists by the opposite angle.
///
/// A purely linear k can never separate (0, i) and (0, -i): they are antipodal
/// and hopf(-v) = hopf(v). The twist breaks that symmetry.
class S3Diffeo {
 public:
  S3Diffeo(RotationK rotation, double twist_rate);
  /// Matrix-only k (twist rate 0).
  explicit S3Diffeo(RotationK rotation) : S3Diffeo(std::move(rotation), 0.0) {}

  static S3Diffeo identity();
  /// rate pi/2, R = I. Separates the two critical values by about 1.96.
  static S3Diffeo default_k();

  const RotationK& rotation() const noexcept { return rotation_; }
  double twist_rate() const noexcept { return twist_rate_; }

  Eigen::Vector4d apply(const Eigen::Vector4d& v) const;

 private:
  RotationK rotation_;
  double twist_rate_;
};

/// h(z1, z2) = (2 z1 conj(z2), |z1|^2 - |z2|^2). Throws OffSphere.
SpherePoint2 hopf(const SpherePoint3& p);
/// Suspension of h: (2 z1 conj(z2), |z1|^2 - |z2|^2 + i x sqrt(2 - x^2)). Throws OffSphere.
SpherePoint3 suspension_hopf(const SpherePoint4& p);
/// Closed form of h o (suspension of h). Throws OffSphere.
SpherePoint2 f1(const SpherePoint4& p);
/// h o k o (suspension of h). Throws DegenerateK when k leaves both
/// critical points of f1 on a single Hopf fiber.
SpherePoint2 f_full(const SpherePoint4& p, const S3Diffeo& k);

/// Chordal distance between hopf(k(0, i)) and hopf(k(0, -i)), i.e. between
/// the two critical values of f_full.
double critical_value_separation(const S3Diffeo& k);

double chordal_distance(const SpherePoint2& a, const SpherePoint2& b);

enum class MapId { Hopf, SuspensionHopf, F1, FFull };

/// One of the explicit maps, evaluated on ambient coordinates. Off the sphere
/// the formulas extend smoothly, which is what finite differences need.
class SphereMap {
 public:
  static SphereMap hopf() { return SphereMap(MapId::Hopf, S3Diffeo::identity()); }
  static SphereMap suspension_hopf() { return SphereMap(MapId::SuspensionHopf, S3Diffeo::identity()); }
  static SphereMap f1() { return SphereMap(MapId::F1, S3Diffeo::identity()); }
  static SphereMap f_full(S3Diffeo k) { return SphereMap(MapId::FFull, std::move(k)); }

  MapId id() const noexcept { return id_; }
  std::string name() const;
  /// Ambient dimension of the domain (4 for S^3, 5 for S^4).
  int domain_dim() const noexcept;
  /// Ambient dimension of the target (3 for S^2, 4 for S^3).
  int target_dim() const noexcept;

  Eigen::VectorXd operator()(const Eigen::VectorXd& ambient) const;

 private:
  SphereMap(MapId id, S3Diffeo k) : id_(id), k_(std::move(k)) {}
  MapId id_;
  S3Diffeo k_;
};

/// Singular values (descending) of the differential restricted to the
/// tangent spaces of the domain and target spheres, by central differences.
Eigen::VectorXd tangent_singular_values(const SphereMap& map, const Eigen::VectorXd& p,
                                        double h = kFiniteDifferenceStep);
/// Smallest singular value that a submersion would keep positive.
double smallest_tangent_singular_value(const SphereMap& map, const Eigen::VectorXd& p,
                                       double h = kFiniteDifferenceStep);
/// Number of tangent singular values above tol_sv. Throws OffSphere.
int jacobian_rank(const SphereMap& map, const Eigen::VectorXd& p, double h, double tol_sv);
int jacobian_rank(const SphereMap& map, const SpherePoint4& p, double h, double tol_sv);

struct CriticalSearchOptions {
  int max_iterations = 400;
  /// A descent counts as converged once the smallest singular value is below this.
  double converge_sv = 1e-9;
  double cluster_radius = 1e-4;
  double h = kFiniteDifferenceStep;
};

struct SeedOutcome {
  int index = 0;
  bool converged = false;
  double final_sv = 0.0;
  int iterations = 0;
  Eigen::VectorXd point;
};

struct CriticalSearchResult {
  /// One representative per cluster, ordered by descending last coordinate.
  std::vector<Eigen::VectorXd> points;
  /// Per-seed outcomes; unconverged seeds are NoConvergence reports.
  std::vector<SeedOutcome> seeds;
};

/// Minimizes the smallest tangent singular value from n_seeds random starts
/// and clusters the converged endpoints. Deterministic in seed.
CriticalSearchResult find_critical_points(const SphereMap& map, int n_seeds, std::uint64_t seed,
                                          const CriticalSearchOptions& options = {});

struct FiberSample {
  SpherePoint2 target;
  std::vector<SpherePoint4> points;
  std::vector<double> residuals;
  std::uint64_t seed = 0;
  int attempts = 0;

  double convergence_rate() const {
    return attempts == 0 ? 0.0 : static_cast<double>(points.size()) / attempts;
  }
  bool operator==(const FiberSample&) const = default;
};

struct FiberOptions {
  int max_iterations = 100;
  double tol_fiber = kTolFiber;
  double h = kFiniteDifferenceStep;
};

/// Damped Gauss-Newton from n random starts onto {map = target}, re-projecting
/// to S^4 after every step. Only maps S^4 -> S^2 are accepted. Retained points
/// keep start order, so the result depends on (inputs, seed) only.
FiberSample sample_fiber(const SphereMap& map, const SpherePoint2& target, int n,
                         std::uint64_t seed, const FiberOptions& options = {});

enum class CloudFormat { Csv, Json };

nlohmann::json to_json(const FiberSample& sample);
FiberSample fiber_sample_from_json(const nlohmann::json& j);
/// Header `re_z1,im_z1,re_z2,im_z2,x,residual`, one row per point.
void write_csv(std::ostream& out, const FiberSample& sample);
/// Throws IoError with the path in the message.
void export_point_cloud(const FiberSample& sample, const std::filesystem::path& path,
                        CloudFormat format);
FiberSample load_point_cloud_json(const std::filesystem::path& path);

/// Uniform random point on the unit sphere in R^dim.
Eigen::VectorXd random_sphere_point(int dim, std::uint64_t seed, std::uint64_t index);

struct PropertyCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
};

/// The full numerical property suite: sphere norms, factorization, Hopf
/// equivariance, critical-point certificate, f_full separation.
std::vector<PropertyCheck> verify_properties(std::uint64_t seed, int n_samples = 10000);

}  // namespace acman::lefschetz
