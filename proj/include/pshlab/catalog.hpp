#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pshlab/pipeline.hpp"
#include "pshlab/singular_set.hpp"
#include "pshlab/viscosity.hpp"

namespace pshlab {

/// A built-in function with hard-coded expected verdicts, validated by the
/// test suite rather than trusted.
struct CatalogEntry {
    std::string name;
    FieldFunction f;
    int n = 2;                  // dimension the expectations are stated for
    double grid_delta = 0.5;    // certification grid: center origin, this delta
    Status expected_subharmonic = Status::Pass;
    Status expected_psh = Status::Pass;
    std::optional<SingularSet> psh_off_set;       // expected Pass off this set
    std::vector<double> radii_cells{1.0, 2.0};    // certification radii, units of h
    double margin_cells = 2.0;                    // exclusion margin, units of h
    bool dimension_generic = true;                // meaningful for every n >= 1
    std::string notes;
};

/// The regression corpus at dimension n (entries needing n >= 2 are dropped
/// for n = 1).
std::vector<CatalogEntry> catalog_entries(int n = 2);

/// Ready pipeline scenarios with known verdicts: trivial, smooth-psh,
/// smooth-psh-cantor, negative-control, precondition-violation.
std::vector<Scenario> scenario_entries(int n = 2);

const CatalogEntry* find_entry(const std::vector<CatalogEntry>& entries, const std::string& name);
const Scenario* find_scenario(const std::vector<Scenario>& scenarios, const std::string& name);

/// Certification verdicts for one entry on its default grid.
struct EntryVerdicts {
    Verdict subharmonic;
    Verdict psh;
    std::optional<Verdict> psh_off;
};

EntryVerdicts certify_entry(const CatalogEntry& entry, int points_per_axis = 17,
                            unsigned seed = 0x5eed);

}  // namespace pshlab
