#pragma once

// Run configurations shared by the C API and the command line: surface
// selection, support functions, grids, and the eval / verify / mesh drivers
// with their serialized outputs.

#include <optional>
#include <string>
#include <vector>

#include "catalog.hpp"

namespace rulekit {

struct SurfaceSpec {
  enum class Kind { Catalog, Invariants, Parametrization } kind = Kind::Catalog;
  std::string name;                          // Catalog
  std::string delta, kappa, lambda;          // Invariants
  std::vector<std::string> s, e;             // Parametrization, three components each
  std::optional<Interval> domain;            // required for inline surfaces
};

struct RunConfig {
  std::optional<SurfaceSpec> surface;
  std::string f, g;
  std::optional<Interval> u_range;
  std::optional<Interval> v_range;
  std::optional<std::pair<int, int>> grid;
  std::string prop;
  double tol = 1e-6;
  double perturb = 0.0;
  PerturbMode perturb_mode = PerturbMode::Modulated;
  std::vector<double> constants;
  int sign = +1;
  std::string free;
  std::string format;  // json | csv | obj; empty = command default
  std::string out;
  bool normals = false;
};

/// Parses the JSON form (see README for keys). Throws Error(Syntax) for
/// malformed JSON or wrongly typed keys, Error(Precondition) for invalid
/// values (empty range, grid below 2x2, ...).
RunConfig parse_run_config(const std::string& json_text);

/// Serializes back to JSON (used to pass configs across the C boundary).
std::string to_json(const RunConfig& cfg);

/// Parses "a:b" into an interval.
Interval parse_range(const std::string& text);
/// Parses "NuxNv".
std::pair<int, int> parse_grid(const std::string& text);

struct BuiltSurface {
  SurfacePtr surface;
  std::string label;
};

BuiltSurface build_surface(const SurfaceSpec& spec);

/// Per-point table. Format json (schema rulekit-eval/1) or csv.
std::string run_eval(const RunConfig& cfg);

/// Fixed CSV column order of run_eval.
const std::vector<std::string>& eval_columns();

struct VerifyRun {
  VerificationReport report;
  std::string json;  // schema rulekit-verify/1
};

/// Constructs the proposition's support on the configured (or proven-case)
/// surface and verifies it. Construction problems throw.
VerifyRun run_verify(const RunConfig& cfg);

/// Wavefront OBJ (v, optional vn, f lines only).
std::string run_mesh(const RunConfig& cfg);

std::string catalog_json();
std::string catalog_text();

/// Shortest representation that round-trips to the same double.
std::string format_number(double x);

}  // namespace rulekit
