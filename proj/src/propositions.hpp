#pragma once

// Constructors for the (f, g) pairs named by each characterization result,
// surface-class predicates and the grid verification driver.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vector_fields.hpp"

namespace rulekit {

enum class PropositionId {
  pick_vanishing,
  scalar_curv_vanishing,
  relative_minimal_type1,
  T_orth_generators,
  T_tangent_u,
  T_orth_u,
  T_tangent_asymptotic,
  T_tangent_K,
  T_orth_K,
  T_incompressible_I,
  T_incompressible_G,
  Q_orth_generators,
  Q_tangent_u,
  Q_orth_u,
  Q_tangent_asymptotic_a,
  Q_tangent_asymptotic_b,
  Q_tangent_K,
  Q_orth_K,
};

const std::array<PropositionId, 18>& all_propositions();
const char* to_string(PropositionId id);
std::optional<PropositionId> proposition_from_string(std::string_view name);

enum class SurfaceClass {
  conoidal,                      // kappa == 0
  constant_delta,                // delta' == 0
  orthoid,                       // lambda == 0
  edlinger,                      // delta' == 0 and kappa lambda + 1 == 0
  right_helicoid,                // delta constant, kappa == lambda == 0
  striction_line_of_curvature,   // kappa lambda + 1 == 0
};

const char* to_string(SurfaceClass c);

/// Predicates as sup-norms on a 256-point grid against
/// 1e-10 (1 + max|delta| + max|kappa| + max|lambda|).
std::vector<SurfaceClass> classify_surface(const Invariants& inv);
bool has_class(const Invariants& inv, SurfaceClass c);

/// What a proposition asserts about its construction.
struct Property {
  enum class Kind { J, S, H, DivI, DivG, Angle } kind = Kind::J;
  FieldKind field = FieldKind::T;
  FamilyKind family = FamilyKind::UCurves;
  AngleMode mode = AngleMode::Tangential;

  std::string describe() const;
};

Property property_of(PropositionId id);

struct ConstructOptions {
  /// Constants in the order named by the proposition; missing entries take
  /// their defaults (see constant_names).
  std::vector<double> constants;
  int sign = +1;  // the +/- branch where the construction has one
  /// The free function where the construction has one: g for the scalar
  /// curvature, T_incompressible_G and Q families, f for
  /// relative_minimal_type1. Empty selects the default.
  ScalarFn free;
};

/// Names of the constants a construction takes, in order, with defaults.
struct ConstantSpec {
  std::string name;
  double fallback = 1.0;
  bool nonzero = false;
};
std::vector<ConstantSpec> constant_names(PropositionId id);

/// Text of the default free function (empty when there is none).
std::string default_free(PropositionId id);

struct Configuration {
  PropositionId id = PropositionId::pick_vanishing;
  Invariants inv;               // kappa may be rebuilt (see kappa_rebuilt)
  FrameOptions frame;           // initial frame used when the surface is built
  SupportPair sp;
  std::vector<double> constants;  // as used, defaults filled in
  int sign = +1;
  bool kappa_rebuilt = false;
  std::string note;

  SurfacePtr surface() const;
};

/// Checks the surface-class precondition and the constants, then builds
/// (f, g). For the support-field constructions that constrain kappa, kappa
/// is rebuilt from g and the constants (delta and lambda of `inv` are kept).
/// Throws Error(Precondition) or Error(Construction) with a reason.
Configuration construct_support(PropositionId id, const Invariants& inv,
                                const ConstructOptions& options = {});

enum class PerturbMode {
  Modulated,  // f <- f (1 + eps (1 + sin u))
  Uniform,    // f <- (1 + eps) f
};

ScalarFn perturb(const ScalarFn& f, double eps, PerturbMode mode);

struct VerifyOptions {
  std::optional<Interval> u_range;  // default: the surface domain
  Interval v_range{-1.0, 1.0};
  int nu = 32;
  int nv = 32;
  double tol = 1e-6;
  /// Applied to f before the property is checked (0 = as constructed).
  double perturb = 0.0;
  /// Size of the falsification perturbation.
  double falsify = 0.01;
  PerturbMode mode = PerturbMode::Modulated;
};

struct VerificationReport {
  PropositionId id = PropositionId::pick_vanishing;
  bool pass = false;
  double max_residual = 0.0;
  double perturbed_residual = 0.0;
  bool insensitive = false;       // perturbed_residual <= 100 tol
  double condition_residual = 0.0;  // printed polynomial condition, angle properties
  int nu = 0, nv = 0;
  double tol = 0.0;
  double seconds = 0.0;
  double worst_u = 0.0, worst_v = 0.0;
  int samples = 0;
  int skipped = 0;  // poles, vanishing fields, undetermined directions
  std::string property;
  std::string note;
};

struct ResidualScan {
  double max_residual = 0.0;
  double condition = 0.0;
  double worst_u = 0.0, worst_v = 0.0;
  int samples = 0;
  int skipped = 0;
};

/// Maximum property residual of (surface, sp) on the grid.
ResidualScan scan_property(const Property& prop, const RuledSurface& surface,
                           const SupportPair& sp, const Region& region);

/// Never throws for property failures; construction problems are the
/// caller's (construct_support).
VerificationReport verify(const Configuration& cfg, const VerifyOptions& options = {});

}  // namespace rulekit
