#pragma once

// Executable axiom predicates over materialized aggregation tables.
//
// Every predicate scans profiles in enumeration order and reports the first
// violation it meets. Existential axioms (the expertise family) search their
// witness tuples lexicographically on (i, j, x, y, t, t') and return the
// first hit.

#include "cafcheck/core.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cafcheck {

enum class DecisivenessKind {
    ObjectDecisive,        // c_i(x) = t implies output(x) = t, for every t
    CategoricallyDecisive, // output(x) = t implies c_i(x) = t, for every x
    MinimallyDecisive,     // c_i(x) = t iff output(x) = t
    MinimallySemiDecisive, // c_i(x) = t implies output(x) = t
};

std::string_view to_string(DecisivenessKind kind);

struct DecisivenessClaim {
    DecisivenessKind kind = DecisivenessKind::ObjectDecisive;
    Individual individual = 0;
    std::optional<Object> object;
    std::optional<Category> category;

    static DecisivenessClaim object_decisive(Individual i, Object x);
    static DecisivenessClaim categorically_decisive(Individual i, Category t);
    static DecisivenessClaim minimally_decisive(Individual i, Object x, Category t);
    static DecisivenessClaim minimally_semi_decisive(Individual i, Object x, Category t);

    /// Throws std::invalid_argument when the object/category fields do not
    /// match the kind or an index is out of range.
    void validate(const Instance& instance) const;

    friend bool operator==(const DecisivenessClaim&, const DecisivenessClaim&) = default;
};

DecisivenessClaim apply_relabeling(const DecisivenessClaim& claim, const Relabeling& rel);

enum class ExpertiseKind {
    Expertise,             // two object-decisive individuals, distinct objects
    CategoricalExpertise,  // two categorically decisive individuals
    MinimalExpertise,      // two minimally decisive individuals, distinct objects
    SemiDecisiveExpertise, // two minimally semi-decisive individuals, distinct objects
};

std::string_view to_string(ExpertiseKind kind);

/// Whether categorical expertise may name the same category twice.
enum class CategoryMode { Permissive, Distinct };

struct ExpertiseWitness {
    DecisivenessClaim first;
    DecisivenessClaim second;

    /// Distinct individuals always; distinct objects for the object-based
    /// kinds; distinct categories for categorical expertise only in
    /// CategoryMode::Distinct. Throws std::invalid_argument otherwise.
    void validate(ExpertiseKind kind, const Instance& instance, CategoryMode mode = CategoryMode::Permissive) const;

    friend bool operator==(const ExpertiseWitness&, const ExpertiseWitness&) = default;
};

ExpertiseWitness apply_relabeling(const ExpertiseWitness& witness, const Relabeling& rel);

/// Which side of a biconditional failed.
enum class ViolationDirection {
    None,
    Forward,  // individual placed x in t, output did not
    Backward, // output placed x in t, individual did not
};

struct AxiomViolation {
    std::string axiom;
    std::vector<std::size_t> profiles;
    std::optional<Object> object;
    std::optional<Category> category;
    std::optional<DecisivenessClaim> claim;
    ViolationDirection direction = ViolationDirection::None;
    std::string reason;
};

struct CheckResult {
    std::optional<AxiomViolation> violation;

    bool passed() const { return !violation.has_value(); }
};

CheckResult check_unanimity(const CafTable& table);
CheckResult check_independence(const CafTable& table);

CheckResult is_decisive_over_object(const CafTable& table, Individual i, Object x);
CheckResult is_categorically_decisive(const CafTable& table, Individual i, Category t);
CheckResult is_minimally_decisive(const CafTable& table, Individual i, Object x, Category t);
CheckResult is_minimally_semi_decisive(const CafTable& table, Individual i, Object x, Category t);
CheckResult check_claim(const CafTable& table, const DecisivenessClaim& claim);

std::optional<ExpertiseWitness> check_expertise(const CafTable& table);
std::optional<ExpertiseWitness> check_categorical_expertise(const CafTable& table,
                                                            CategoryMode mode = CategoryMode::Permissive);
std::optional<ExpertiseWitness> check_minimal_expertise(const CafTable& table);
std::optional<ExpertiseWitness> check_semi_decisive_expertise(const CafTable& table);

std::optional<ExpertiseWitness> check_expertise_kind(const CafTable& table, ExpertiseKind kind,
                                                     CategoryMode mode = CategoryMode::Permissive);

/// Re-runs the violated predicate on the cited profiles only; true when the
/// failure shows up again.
bool reproduces(const CafTable& table, const AxiomViolation& violation);

} // namespace cafcheck
