#pragma once

// Existence search for aggregation tables satisfying an axiom set.
//
// `search` fixes one witness tuple per existential axiom (outer loop), turns
// every axiom into per-cell domain restrictions, and backtracks over the
// remaining cells with surjectivity enforced by matching-based propagation.
// `brute_force_search` enumerates whole tables and runs the checkers from
// axioms.hpp on each; it shares no code with the propagation engine.

#include "cafcheck/axioms.hpp"
#include "cafcheck/core.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cafcheck {

struct PinnedWitnesses {
    std::optional<ExpertiseWitness> expertise;
    std::optional<ExpertiseWitness> categorical_expertise;
    std::optional<ExpertiseWitness> minimal_expertise;
    std::optional<ExpertiseWitness> semi_decisive;

    const std::optional<ExpertiseWitness>& get(ExpertiseKind kind) const;
    std::optional<ExpertiseWitness>& get(ExpertiseKind kind);
};

struct AxiomSet {
    bool unanimity = false;
    bool independence = false;
    bool expertise = false;
    bool categorical_expertise = false;
    bool minimal_expertise = false;
    bool semi_decisive = false;
    CategoryMode categorical_mode = CategoryMode::Permissive;
    PinnedWitnesses pinned;

    bool empty() const;
    bool has(ExpertiseKind kind) const;
    void set(ExpertiseKind kind, bool on = true);

    /// Existential axioms in the fixed order expertise, categorical
    /// expertise, minimal expertise, semi-decisive pairs.
    std::vector<ExpertiseKind> existential() const;

    /// Throws std::invalid_argument when no axiom is selected, a pin names an
    /// unselected axiom, or a pin breaks the witness distinctness rules.
    void validate(const Instance& instance) const;

    /// Comma-separated axiom names, e.g. "unanimity,minimal-expertise".
    std::string names() const;

    /// Parses a comma-separated list of unanimity, independence, expertise,
    /// categorical-expertise, minimal-expertise, semidecisive.
    static AxiomSet parse(std::string_view list);

    /// The six flags as a bitmask in declaration order (unanimity = bit 0).
    unsigned bits() const;
    static AxiomSet from_bits(unsigned bits);
};

inline constexpr unsigned axiom_flag_count = 6;

struct SearchOptions {
    bool symmetry_reduction = true;
    std::optional<std::chrono::milliseconds> timeout;
    Limits limits;
};

enum class Verdict { Satisfiable, Unsatisfiable, Timeout };

std::string_view to_string(Verdict verdict);

struct SearchStats {
    std::uint64_t tuples_explored = 0; // complete witness tuples handed to the backtracker
    std::uint64_t tuples_pruned = 0;   // tuples or prefixes refuted by propagation alone
    std::uint64_t tuples_skipped = 0;  // non-canonical prefixes skipped by symmetry reduction
    std::uint64_t nodes = 0;           // branching decisions
    std::uint64_t backtracks = 0;
    std::uint64_t tables_enumerated = 0; // brute force only
};

struct AxiomWitness {
    ExpertiseKind kind;
    ExpertiseWitness witness;
};

struct SearchOutcome {
    Instance instance;
    AxiomSet axioms;
    Verdict verdict = Verdict::Unsatisfiable;
    std::optional<CafTable> table;
    std::vector<AxiomWitness> witnesses;
    SearchStats stats;
    /// Brute force only: number of satisfying tables and the first few.
    std::optional<std::uint64_t> model_count;
    std::vector<CafTable> models;
};

SearchOutcome search(const Instance& instance, const AxiomSet& axioms, const SearchOptions& options = {});

struct BruteForceOptions {
    /// Maximum number of candidate tables to enumerate.
    std::uint64_t table_budget = 5'000'000;
    /// How many satisfying tables to keep in SearchOutcome::models.
    std::size_t keep_models = 0;
    Limits limits;
};

/// Enumerates the whole table space when it fits the budget; otherwise, when
/// independence is requested, the factorized space of per-object column
/// functions. Throws InstanceTooLarge when neither fits.
SearchOutcome brute_force_search(const Instance& instance, const AxiomSet& axioms,
                                 const BruteForceOptions& options = {});

/// Re-runs every requested checker from axioms.hpp on the table. Existential
/// axioms must pass with the supplied witness when one is given for that
/// kind, and with some witness otherwise.
bool satisfies(const CafTable& table, const AxiomSet& axioms, const std::vector<AxiomWitness>& witnesses = {});

} // namespace cafcheck
