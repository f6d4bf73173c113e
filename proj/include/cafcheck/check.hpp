#pragma once

// Per-axiom pass/violation report for one materialized table.

#include "cafcheck/axioms.hpp"
#include "cafcheck/search.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cafcheck {

struct AxiomCheck {
    std::string axiom;
    bool passed = false;
    std::optional<AxiomViolation> violation;   // unanimity / independence
    std::optional<ExpertiseWitness> witness;   // existential axioms that hold
};

struct ClaimCheck {
    DecisivenessClaim claim;
    CheckResult result;
};

struct CheckReport {
    Instance instance;
    std::string source; // rule description or file name
    std::vector<AxiomCheck> axioms;
    std::vector<ClaimCheck> claims;
    bool surjective = true;

    bool passed() const;
};

/// Runs the selected checkers and the listed claims on the table.
CheckReport check_table(const CafTable& table, const AxiomSet& axioms, const std::vector<DecisivenessClaim>& claims,
                        std::string source);

} // namespace cafcheck
