#include "cafcheck/axioms.hpp"

#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace cafcheck {

namespace {

constexpr std::string_view unanimity_name = "unanimity";
constexpr std::string_view independence_name = "independence";

std::string object_label(Object x) { return object_name(x); }
std::string category_label(Category t) { return category_name(t); }
std::string individual_label(Individual i) { return individual_name(i); }

/// Calls `visit(profile)` for every profile in `subset` (all profiles when
/// null) until it returns false.
void for_profiles(const CafTable& table, const std::vector<std::size_t>* subset,
                  const std::function<bool(std::size_t)>& visit)
{
    if (subset) {
        for (auto r : *subset)
            if (!visit(r))
                return;
        return;
    }
    for (std::size_t r = 0; r < table.size(); ++r)
        if (!visit(r))
            return;
}

void require_individual(const Instance& instance, Individual i)
{
    if (i < 0 || i >= instance.n())
        throw std::out_of_range("individual index out of range");
}

void require_object(const Instance& instance, Object x)
{
    if (x < 0 || x >= instance.m())
        throw std::out_of_range("object index out of range");
}

void require_category(const Instance& instance, Category t)
{
    if (t < 0 || t >= instance.p())
        throw std::out_of_range("category index out of range");
}

CheckResult unanimity_on(const CafTable& table, const std::vector<std::size_t>* subset)
{
    const auto& space = table.space();
    const auto& instance = table.instance();
    CheckResult result;
    for_profiles(table, subset, [&](std::size_t r) {
        for (Object x = 0; x < instance.m(); ++x) {
            const Category t = space.category(r, 0, x);
            bool unanimous = true;
            for (Individual i = 1; i < instance.n() && unanimous; ++i)
                unanimous = space.category(r, i, x) == t;
            if (unanimous && table.output(r, x) != t) {
                result.violation = AxiomViolation{
                    std::string(unanimity_name), {r}, x, t, std::nullopt, ViolationDirection::Forward,
                    "every individual places " + object_label(x) + " in " + category_label(t)
                        + " but the output places it in " + category_label(table.output(r, x))};
                return false;
            }
        }
        return true;
    });
    return result;
}

CheckResult independence_on(const CafTable& table, const std::vector<std::size_t>* subset)
{
    const auto& space = table.space();
    const auto& instance = table.instance();
    // Per object: column key -> (first profile seen, its output category).
    std::vector<std::unordered_map<std::uint32_t, std::pair<std::size_t, Category>>> seen(
        static_cast<std::size_t>(instance.m()));
    CheckResult result;
    for_profiles(table, subset, [&](std::size_t r) {
        for (Object x = 0; x < instance.m(); ++x) {
            const auto key = space.column_key(r, x);
            const Category out = table.output(r, x);
            auto [it, inserted] = seen[static_cast<std::size_t>(x)].try_emplace(key, r, out);
            if (!inserted && it->second.second != out) {
                result.violation = AxiomViolation{
                    std::string(independence_name), {it->second.first, r}, x, std::nullopt, std::nullopt,
                    ViolationDirection::None,
                    "profiles " + std::to_string(it->second.first) + " and " + std::to_string(r)
                        + " agree on every individual's category for " + object_label(x)
                        + " but the outputs differ (" + category_label(it->second.second) + " vs "
                        + category_label(out) + ")"};
                return false;
            }
        }
        return true;
    });
    return result;
}

CheckResult claim_on(const CafTable& table, const DecisivenessClaim& claim, const std::vector<std::size_t>* subset)
{
    claim.validate(table.instance());
    const auto& space = table.space();
    const auto& instance = table.instance();
    const Individual i = claim.individual;
    const std::string axiom(to_string(claim.kind));
    CheckResult result;

    switch (claim.kind) {
    case DecisivenessKind::ObjectDecisive: {
        const Object x = *claim.object;
        for_profiles(table, subset, [&](std::size_t r) {
            const Category want = space.category(r, i, x);
            if (table.output(r, x) == want)
                return true;
            result.violation = AxiomViolation{axiom, {r}, x, want, claim, ViolationDirection::Forward,
                                              "individual " + individual_label(i) + " places " + object_label(x)
                                                  + " in " + category_label(want) + " but the output places it in "
                                                  + category_label(table.output(r, x))};
            return false;
        });
        break;
    }
    case DecisivenessKind::CategoricallyDecisive: {
        const Category t = *claim.category;
        for_profiles(table, subset, [&](std::size_t r) {
            for (Object w = 0; w < instance.m(); ++w) {
                if (table.output(r, w) != t || space.category(r, i, w) == t)
                    continue;
                result.violation = AxiomViolation{axiom, {r}, w, t, claim, ViolationDirection::Backward,
                                                  "the output places " + object_label(w) + " in " + category_label(t)
                                                      + " but individual " + individual_label(i) + " places it in "
                                                      + category_label(space.category(r, i, w))};
                return false;
            }
            return true;
        });
        break;
    }
    case DecisivenessKind::MinimallyDecisive:
    case DecisivenessKind::MinimallySemiDecisive: {
        const Object x = *claim.object;
        const Category t = *claim.category;
        const bool biconditional = claim.kind == DecisivenessKind::MinimallyDecisive;
        for_profiles(table, subset, [&](std::size_t r) {
            const bool individual_says = space.category(r, i, x) == t;
            const bool output_says = table.output(r, x) == t;
            if (individual_says && !output_says) {
                result.violation = AxiomViolation{axiom, {r}, x, t, claim, ViolationDirection::Forward,
                                                  "individual " + individual_label(i) + " places " + object_label(x)
                                                      + " in " + category_label(t) + " but the output does not"};
                return false;
            }
            if (biconditional && output_says && !individual_says) {
                result.violation = AxiomViolation{axiom, {r}, x, t, claim, ViolationDirection::Backward,
                                                  "the output places " + object_label(x) + " in " + category_label(t)
                                                      + " but individual " + individual_label(i) + " does not"};
                return false;
            }
            return true;
        });
        break;
    }
    }
    return result;
}

/// Per-claim pass flags for every (i, x, t), computed in one scan.
struct ClaimTable {
    int n, m, p;
    std::vector<char> object_decisive;  // [i][x]
    std::vector<char> categorical;      // [i][t]
    std::vector<char> minimal;          // [i][x][t]
    std::vector<char> semi;             // [i][x][t]

    explicit ClaimTable(const CafTable& table)
        : n(table.instance().n()), m(table.instance().m()), p(table.instance().p()),
          object_decisive(static_cast<std::size_t>(n * m), 1), categorical(static_cast<std::size_t>(n * p), 1),
          minimal(static_cast<std::size_t>(n * m * p), 1), semi(static_cast<std::size_t>(n * m * p), 1)
    {
        const auto& space = table.space();
        for (std::size_t r = 0; r < table.size(); ++r)
            for (Individual i = 0; i < n; ++i)
                for (Object x = 0; x < m; ++x) {
                    const Category mine = space.category(r, i, x);
                    const Category out = table.output(r, x);
                    if (mine == out)
                        continue;
                    object_decisive[idx(i, x)] = 0;
                    categorical[static_cast<std::size_t>(i * p + out)] = 0;
                    minimal[idx(i, x, mine)] = 0;
                    minimal[idx(i, x, out)] = 0;
                    semi[idx(i, x, mine)] = 0;
                }
    }

    std::size_t idx(Individual i, Object x) const { return static_cast<std::size_t>(i * m + x); }
    std::size_t idx(Individual i, Object x, Category t) const { return static_cast<std::size_t>((i * m + x) * p + t); }
};

std::optional<ExpertiseWitness> pair_search(const Instance& instance,
                                            const std::function<bool(Individual, Object, Category)>& holds,
                                            DecisivenessClaim (*make)(Individual, Object, Category))
{
    for (Individual i = 0; i < instance.n(); ++i)
        for (Individual j = 0; j < instance.n(); ++j) {
            if (i == j)
                continue;
            for (Object x = 0; x < instance.m(); ++x)
                for (Object y = 0; y < instance.m(); ++y) {
                    if (x == y)
                        continue;
                    for (Category t = 0; t < instance.p(); ++t) {
                        if (!holds(i, x, t))
                            continue;
                        for (Category u = 0; u < instance.p(); ++u)
                            if (holds(j, y, u))
                                return ExpertiseWitness{make(i, x, t), make(j, y, u)};
                    }
                }
        }
    return std::nullopt;
}

} // namespace

std::string_view to_string(DecisivenessKind kind)
{
    switch (kind) {
    case DecisivenessKind::ObjectDecisive:
        return "decisive-over-object";
    case DecisivenessKind::CategoricallyDecisive:
        return "categorically-decisive";
    case DecisivenessKind::MinimallyDecisive:
        return "minimally-decisive";
    case DecisivenessKind::MinimallySemiDecisive:
        return "minimally-semi-decisive";
    }
    return "unknown";
}

std::string_view to_string(ExpertiseKind kind)
{
    switch (kind) {
    case ExpertiseKind::Expertise:
        return "expertise";
    case ExpertiseKind::CategoricalExpertise:
        return "categorical-expertise";
    case ExpertiseKind::MinimalExpertise:
        return "minimal-expertise";
    case ExpertiseKind::SemiDecisiveExpertise:
        return "semidecisive";
    }
    return "unknown";
}

DecisivenessClaim DecisivenessClaim::object_decisive(Individual i, Object x)
{
    return {DecisivenessKind::ObjectDecisive, i, x, std::nullopt};
}

DecisivenessClaim DecisivenessClaim::categorically_decisive(Individual i, Category t)
{
    return {DecisivenessKind::CategoricallyDecisive, i, std::nullopt, t};
}

DecisivenessClaim DecisivenessClaim::minimally_decisive(Individual i, Object x, Category t)
{
    return {DecisivenessKind::MinimallyDecisive, i, x, t};
}

DecisivenessClaim DecisivenessClaim::minimally_semi_decisive(Individual i, Object x, Category t)
{
    return {DecisivenessKind::MinimallySemiDecisive, i, x, t};
}

void DecisivenessClaim::validate(const Instance& instance) const
{
    const bool wants_object = kind != DecisivenessKind::CategoricallyDecisive;
    const bool wants_category = kind != DecisivenessKind::ObjectDecisive;
    if (wants_object != object.has_value() || wants_category != category.has_value())
        throw std::invalid_argument(std::string(to_string(kind)) + " claim has the wrong object/category fields");
    if (individual < 0 || individual >= instance.n())
        throw std::invalid_argument("claim individual out of range");
    if (object && (*object < 0 || *object >= instance.m()))
        throw std::invalid_argument("claim object out of range");
    if (category && (*category < 0 || *category >= instance.p()))
        throw std::invalid_argument("claim category out of range");
}

DecisivenessClaim apply_relabeling(const DecisivenessClaim& claim, const Relabeling& rel)
{
    DecisivenessClaim out = claim;
    out.individual = rel.individual_perm.at(static_cast<std::size_t>(claim.individual));
    if (claim.object)
        out.object = rel.object_perm.at(static_cast<std::size_t>(*claim.object));
    if (claim.category)
        out.category = rel.category_perm.at(static_cast<std::size_t>(*claim.category));
    return out;
}

void ExpertiseWitness::validate(ExpertiseKind kind, const Instance& instance, CategoryMode mode) const
{
    DecisivenessKind expected = DecisivenessKind::ObjectDecisive;
    switch (kind) {
    case ExpertiseKind::Expertise:
        expected = DecisivenessKind::ObjectDecisive;
        break;
    case ExpertiseKind::CategoricalExpertise:
        expected = DecisivenessKind::CategoricallyDecisive;
        break;
    case ExpertiseKind::MinimalExpertise:
        expected = DecisivenessKind::MinimallyDecisive;
        break;
    case ExpertiseKind::SemiDecisiveExpertise:
        expected = DecisivenessKind::MinimallySemiDecisive;
        break;
    }
    if (first.kind != expected || second.kind != expected)
        throw std::invalid_argument(std::string(to_string(kind)) + " witness needs two "
                                    + std::string(to_string(expected)) + " claims");
    first.validate(instance);
    second.validate(instance);
    if (first.individual == second.individual)
        throw std::invalid_argument(std::string(to_string(kind)) + " witness needs two distinct individuals");
    if (kind == ExpertiseKind::CategoricalExpertise) {
        if (mode == CategoryMode::Distinct && first.category == second.category)
            throw std::invalid_argument("categorical expertise witness needs two distinct categories");
    } else if (first.object == second.object) {
        throw std::invalid_argument(std::string(to_string(kind)) + " witness needs two distinct objects");
    }
}

ExpertiseWitness apply_relabeling(const ExpertiseWitness& witness, const Relabeling& rel)
{
    return {apply_relabeling(witness.first, rel), apply_relabeling(witness.second, rel)};
}

CheckResult check_unanimity(const CafTable& table) { return unanimity_on(table, nullptr); }

CheckResult check_independence(const CafTable& table) { return independence_on(table, nullptr); }

CheckResult is_decisive_over_object(const CafTable& table, Individual i, Object x)
{
    require_individual(table.instance(), i);
    require_object(table.instance(), x);
    return claim_on(table, DecisivenessClaim::object_decisive(i, x), nullptr);
}

CheckResult is_categorically_decisive(const CafTable& table, Individual i, Category t)
{
    require_individual(table.instance(), i);
    require_category(table.instance(), t);
    return claim_on(table, DecisivenessClaim::categorically_decisive(i, t), nullptr);
}

CheckResult is_minimally_decisive(const CafTable& table, Individual i, Object x, Category t)
{
    require_individual(table.instance(), i);
    require_object(table.instance(), x);
    require_category(table.instance(), t);
    return claim_on(table, DecisivenessClaim::minimally_decisive(i, x, t), nullptr);
}

CheckResult is_minimally_semi_decisive(const CafTable& table, Individual i, Object x, Category t)
{
    require_individual(table.instance(), i);
    require_object(table.instance(), x);
    require_category(table.instance(), t);
    return claim_on(table, DecisivenessClaim::minimally_semi_decisive(i, x, t), nullptr);
}

CheckResult check_claim(const CafTable& table, const DecisivenessClaim& claim)
{
    return claim_on(table, claim, nullptr);
}

std::optional<ExpertiseWitness> check_expertise(const CafTable& table)
{
    const ClaimTable flags(table);
    const auto& instance = table.instance();
    for (Individual i = 0; i < instance.n(); ++i)
        for (Individual j = 0; j < instance.n(); ++j) {
            if (i == j)
                continue;
            for (Object x = 0; x < instance.m(); ++x) {
                if (!flags.object_decisive[flags.idx(i, x)])
                    continue;
                for (Object y = 0; y < instance.m(); ++y)
                    if (y != x && flags.object_decisive[flags.idx(j, y)])
                        return ExpertiseWitness{DecisivenessClaim::object_decisive(i, x),
                                                DecisivenessClaim::object_decisive(j, y)};
            }
        }
    return std::nullopt;
}

std::optional<ExpertiseWitness> check_categorical_expertise(const CafTable& table, CategoryMode mode)
{
    const ClaimTable flags(table);
    const auto& instance = table.instance();
    const int p = instance.p();
    for (Individual i = 0; i < instance.n(); ++i)
        for (Individual j = 0; j < instance.n(); ++j) {
            if (i == j)
                continue;
            for (Category t = 0; t < p; ++t) {
                if (!flags.categorical[static_cast<std::size_t>(i * p + t)])
                    continue;
                for (Category u = 0; u < p; ++u) {
                    if (mode == CategoryMode::Distinct && u == t)
                        continue;
                    if (flags.categorical[static_cast<std::size_t>(j * p + u)])
                        return ExpertiseWitness{DecisivenessClaim::categorically_decisive(i, t),
                                                DecisivenessClaim::categorically_decisive(j, u)};
                }
            }
        }
    return std::nullopt;
}

std::optional<ExpertiseWitness> check_minimal_expertise(const CafTable& table)
{
    const ClaimTable flags(table);
    return pair_search(
        table.instance(), [&](Individual i, Object x, Category t) { return flags.minimal[flags.idx(i, x, t)] != 0; },
        &DecisivenessClaim::minimally_decisive);
}

std::optional<ExpertiseWitness> check_semi_decisive_expertise(const CafTable& table)
{
    const ClaimTable flags(table);
    return pair_search(
        table.instance(), [&](Individual i, Object x, Category t) { return flags.semi[flags.idx(i, x, t)] != 0; },
        &DecisivenessClaim::minimally_semi_decisive);
}

std::optional<ExpertiseWitness> check_expertise_kind(const CafTable& table, ExpertiseKind kind, CategoryMode mode)
{
    switch (kind) {
    case ExpertiseKind::Expertise:
        return check_expertise(table);
    case ExpertiseKind::CategoricalExpertise:
        return check_categorical_expertise(table, mode);
    case ExpertiseKind::MinimalExpertise:
        return check_minimal_expertise(table);
    case ExpertiseKind::SemiDecisiveExpertise:
        return check_semi_decisive_expertise(table);
    }
    return std::nullopt;
}

bool reproduces(const CafTable& table, const AxiomViolation& violation)
{
    if (violation.profiles.empty())
        return false;
    if (violation.axiom == unanimity_name)
        return !unanimity_on(table, &violation.profiles).passed();
    if (violation.axiom == independence_name)
        return !independence_on(table, &violation.profiles).passed();
    if (violation.claim)
        return !claim_on(table, *violation.claim, &violation.profiles).passed();
    return false;
}

} // namespace cafcheck
