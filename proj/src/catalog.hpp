#pragma once

#include <string>
#include <vector>

#include "propositions.hpp"

namespace rulekit {

struct CatalogEntry {
  std::string name;
  std::string delta, kappa, lambda;  // expressions in u
  Interval domain;
  double u0 = std::numeric_limits<double>::quiet_NaN();  // pinned initial station, NaN = midpoint
  std::string description;
};

const std::vector<CatalogEntry>& catalog();

/// Throws Error(NotFound) for unknown names.
const CatalogEntry& find_entry(const std::string& name);

/// Compiles and validates an entry; rejects entries whose distribution
/// parameter vanishes or changes sign on the domain (Error(Precondition)).
Invariants load_invariants(const CatalogEntry& entry);

FrameOptions frame_options(const CatalogEntry& entry);

/// A configuration known to satisfy a proposition, used by the verification
/// battery and as the CLI default for `verify --prop ID`.
struct ProvenCase {
  PropositionId id;
  std::string surface;
  std::vector<double> constants;  // empty = defaults
  Interval v_range;
};

const ProvenCase& proven_case(PropositionId id);

}  // namespace rulekit
