#pragma once

#include "bredon/kunneth.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bredon {

// ---- scenario description, mirroring the file format ----

struct CellSpec {
  std::string name;
  GroupSpec stabilizer;
  std::vector<int> to_control;
};

struct IncidenceSpec {
  int dimension = 1;  // of the cell whose boundary this is
  Index cell = 0;
  Index target = 0;
  long coefficient = 0;
  std::vector<int> hom;
};

struct FactorSpec {
  std::string name;
  std::vector<std::vector<CellSpec>> cells;
  std::vector<IncidenceSpec> incidences;
  /// Cocycle name per cell, parallel to cells; empty when untwisted.
  std::vector<std::vector<std::string>> twist;
};

struct CocycleSpec {
  std::string name;
  bool d8_pairing = false;
  GroupSpec group;
  int modulus = 2;
  std::vector<std::vector<int>> values;
};

struct ExpectedResults {
  std::vector<std::vector<AbelianInvariants>> factors;  // may be shorter than the factor list
  std::vector<AbelianInvariants> assembly;
  std::optional<AbelianInvariants> k0, k1;
};

struct Scenario {
  std::string name;
  std::string description;
  std::vector<std::string> remarks;
  GroupSpec control;
  std::vector<CocycleSpec> cocycles;
  std::vector<FactorSpec> factors;
  std::map<std::string, ExpectedResults> expected;  // keyed "untwisted" / "twisted"
};

Scenario scenario_y1();
Scenario scenario_y2();
std::vector<std::string> builtin_scenarios();
/// Built-in scenario by name; ValidationError when unknown.
Scenario builtin_scenario(const std::string& name);

nlohmann::ordered_json scenario_to_json(const Scenario& s);
/// ValidationError on malformed documents.
Scenario scenario_from_json(const nlohmann::ordered_json& j);
Scenario load_scenario(const std::string& path);

nlohmann::ordered_json group_spec_to_json(const GroupSpec& g);
GroupSpec group_spec_from_json(const nlohmann::ordered_json& j);

Cocycle build_cocycle(const CocycleSpec& c);
GCWComplex build_complex(const Scenario& s, const FactorSpec& f);

/// Checks shared control group, resolvable cocycle names, valid cocycles
/// and complexes.  Throws ValidationError.
void validate_scenario(const Scenario& s);

// ---- K-theory readout ----

enum class CollapseBasis { EvenConcentration, AssertedByFlag };

struct KTheoryReadout {
  AbelianInvariants k0, k1;
  CollapseBasis basis = CollapseBasis::EvenConcentration;
  std::string justification;
};

/// Even degrees into K^0, odd into K^1.  Without odd-degree vanishing the
/// flag is required; otherwise CollapseError.
KTheoryReadout k_theory_from_bredon(const GradedRMod& h, bool assume_collapse);

// ---- runs ----

struct RunOptions {
  bool twisted = false;
  bool assume_collapse = false;
  int direct_check_depth = 2;  // 0 or 1 disables
};

struct DirectCheck {
  int depth = 0;
  std::vector<AbelianInvariants> direct, assembled;
  bool agree = false;
};

struct FactorReport {
  std::string name;
  bool twisted = false;
  std::vector<AbelianInvariants> cochain_ranks;  // Z-invariants of C^n
  std::vector<AbelianInvariants> cohomology;
};

struct RunReport {
  std::string scenario;
  bool twisted = false;
  std::vector<FactorReport> factors;
  bool assembly_complete = false;
  std::string fold_error;
  std::vector<AbelianInvariants> assembly;
  std::optional<KTheoryReadout> k_theory;
  std::string k_theory_error;
  bool delta_squared_zero = true;
  std::vector<TorCheck> tor_checks;
  std::vector<std::string> warnings;
  std::vector<DirectCheck> direct_checks;
  bool z_free_pipeline = true;
  std::vector<std::string> expected_mismatches;

  /// 0 success, 3 fold aborted / mismatch / failed direct check, 4 no collapse.
  int exit_code() const;
};

RunReport run_scenario(const Scenario& s, const RunOptions& options = {});

nlohmann::ordered_json report_to_json(const RunReport& r);
std::string report_to_text(const RunReport& r);
nlohmann::ordered_json invariants_to_json(const AbelianInvariants& a);
AbelianInvariants invariants_from_json(const nlohmann::ordered_json& j);

// ---- pullback isomorphism sweep ----

struct SweepEntry {
  std::string p, q, s;  // group names
  std::vector<int> f1, f2;
  bool twisted = false;
  PullbackIsoReport report;
};

struct SweepReport {
  std::size_t order_bound = 0;
  std::vector<SweepEntry> entries;
  std::size_t passed() const;
  std::vector<const SweepEntry*> failures() const;
};

/// Diagrams P -> S <- Q of surjections among the built-in family (cyclic,
/// elementary abelian 2-groups, the dihedral group of order 8) of order at
/// most order_bound, one left map per kernel, plus the twisted instances
/// with the D8 cocycle on (Z/2)^2.
SweepReport verify_pullback_iso_sweep(std::size_t order_bound);

nlohmann::ordered_json sweep_to_json(const SweepReport& r);

}  // namespace bredon
