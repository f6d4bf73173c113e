#pragma once

// Mechanical replays of the impossibility proofs.
//
// A replay builds the proof's profiles, applies only the deductions the proof
// invokes to per-cell candidate sets, and ends every branch in a
// contradiction: either a set of categories with fewer candidate objects than
// members (an empty category being the one-element case), or an object left
// with no candidate category. verify_trace re-derives the whole trace from
// unconstrained candidate sets.

#include "cafcheck/axioms.hpp"
#include "cafcheck/core.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cafcheck {

enum class ProofId {
    Theorem1, // unanimity + minimal expertise
    Prop2,    // minimal expertise at m = p = 2
    Prop3,    // minimal expertise + independence, p <= m <= p + 1
    Prop4,    // expertise at m = p
    Prop5,    // categorical expertise
};

/// "theorem-1", "prop-2", ... "prop-5".
std::string_view to_string(ProofId proof);
ProofId parse_proof_id(std::string_view text);

class ProofPreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ReplayFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Who plays individuals 1 and 2, objects x and y, and categories t1 and t2
/// in the proof. The proof's remaining individuals, objects and categories
/// are the others in ascending order.
struct ProofBinding {
    Individual first = 0;
    Individual second = 1;
    Object x = 0;
    Object y = 1;
    Category t1 = 0;
    Category t2 = 1;
    /// Both claims name t1 (the t' = t'' branch).
    bool same_category = false;
};

enum class DeductionRule {
    Unanimity,
    ObjectDecisive,
    CategoricallyDecisive,
    MinimallyDecisive,
    Independence,
    Surjectivity,
};

std::string_view to_string(DeductionRule rule);

/// Narrows the candidates of one cell (profile, object).
struct TraceStep {
    DeductionRule rule = DeductionRule::Unanimity;
    std::size_t profile = 0;
    Object object = 0;
    std::optional<std::size_t> claim;          // index into ContradictionTrace::claims
    std::optional<std::size_t> source_profile; // independence: the profile copied from
    CategoryMask domain_after = 0;
};

/// Either `empty_object` has no candidate left, or `categories` has fewer
/// candidate objects than members.
struct Contradiction {
    std::size_t profile = 0;
    std::optional<Object> empty_object;
    CategoryMask categories = 0;
    std::vector<Object> candidates; // objects that may still take one of the categories
    std::string conclusion;
};

/// A deduction sequence that either closes with a contradiction or splits
/// on which object covers `split_category` at `split_profile`, one branch per
/// candidate object in ascending order.
struct TraceNode {
    std::vector<TraceStep> steps;
    std::optional<Contradiction> terminal;
    std::optional<std::size_t> split_profile;
    Category split_category = 0;
    std::vector<Object> branch_objects;
    std::vector<TraceNode> branches;
};

struct ContradictionTrace {
    ProofId proof = ProofId::Theorem1;
    Instance instance{2, 2, 2};
    ProofBinding binding;
    std::vector<DecisivenessClaim> claims;
    std::vector<std::string> profile_names;
    std::vector<Profile> profiles;
    TraceNode root;
};

/// Throws ProofPreconditionError naming the hypothesis the instance or
/// binding breaks.
void check_preconditions(ProofId proof, const Instance& instance, const ProofBinding& binding);

/// Builds and verifies the trace. Throws ProofPreconditionError or
/// ReplayFailure.
ContradictionTrace replay_theorem(ProofId proof, const Instance& instance, const ProofBinding& binding = {});

/// Re-applies every step from unconstrained candidate sets and checks that
/// each branch ends in the recorded contradiction and that every split
/// covers all candidates. Throws ReplayFailure on the first discrepancy.
void verify_trace(const ContradictionTrace& trace);

/// Conclusions of the terminal nodes in depth-first order.
std::vector<std::string> conclusions(const ContradictionTrace& trace);

} // namespace cafcheck
