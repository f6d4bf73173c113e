#include "cafcheck/replay.hpp"

#include "cafcheck/cover.hpp"

#include <algorithm>
#include <bit>

namespace cafcheck {

namespace {

using Domains = std::vector<std::vector<CategoryMask>>; // [profile][object]

constexpr CategoryMask bit(Category t) { return CategoryMask{1} << t; }

ExpertiseKind expertise_kind(ProofId proof)
{
    switch (proof) {
    case ProofId::Prop4:
        return ExpertiseKind::Expertise;
    case ProofId::Prop5:
        return ExpertiseKind::CategoricalExpertise;
    default:
        return ExpertiseKind::MinimalExpertise;
    }
}

bool rule_allowed(ProofId proof, DeductionRule rule)
{
    if (rule == DeductionRule::Surjectivity)
        return true;
    switch (proof) {
    case ProofId::Theorem1:
        return rule == DeductionRule::Unanimity || rule == DeductionRule::MinimallyDecisive;
    case ProofId::Prop2:
        return rule == DeductionRule::MinimallyDecisive;
    case ProofId::Prop3:
        return rule == DeductionRule::MinimallyDecisive || rule == DeductionRule::Independence;
    case ProofId::Prop4:
        return rule == DeductionRule::ObjectDecisive;
    case ProofId::Prop5:
        return rule == DeductionRule::CategoricallyDecisive;
    }
    return false;
}

std::string cell_name(const ContradictionTrace& trace, std::size_t profile, Object x)
{
    const std::string name = profile < trace.profile_names.size() ? trace.profile_names[profile]
                                                                  : "#" + std::to_string(profile);
    return name + "(" + object_name(x) + ")";
}

[[noreturn]] void fail(const std::string& message) { throw ReplayFailure(message); }

const DecisivenessClaim& cited_claim(const ContradictionTrace& trace, const TraceStep& step, DecisivenessKind kind)
{
    if (!step.claim || *step.claim >= trace.claims.size())
        fail(std::string(to_string(step.rule)) + " step cites no claim");
    const auto& claim = trace.claims[*step.claim];
    if (claim.kind != kind)
        fail(std::string(to_string(step.rule)) + " step cites a " + std::string(to_string(claim.kind)) + " claim");
    return claim;
}

/// The candidate set a step leaves on its cell.
CategoryMask deduce(const ContradictionTrace& trace, const Domains& dom, const TraceStep& step)
{
    if (!rule_allowed(trace.proof, step.rule))
        fail(std::string(to_string(trace.proof)) + " does not use " + std::string(to_string(step.rule)));
    if (step.profile >= trace.profiles.size() || step.object < 0 || step.object >= trace.instance.m())
        fail("step refers to a cell outside the trace");
    const Profile& c = trace.profiles[step.profile];
    const Object x = step.object;
    const CategoryMask current = dom[step.profile][static_cast<std::size_t>(x)];
    const std::string where = cell_name(trace, step.profile, x);

    switch (step.rule) {
    case DeductionRule::Unanimity: {
        const Category t = c[0][x];
        for (const auto& member : c.members())
            if (member[x] != t)
                fail("unanimity cited at " + where + " but individuals disagree");
        return current & bit(t);
    }
    case DeductionRule::ObjectDecisive: {
        const auto& claim = cited_claim(trace, step, DecisivenessKind::ObjectDecisive);
        if (claim.object != x)
            fail("decisiveness claim does not concern " + where);
        return current & bit(c[claim.individual][x]);
    }
    case DeductionRule::MinimallyDecisive: {
        const auto& claim = cited_claim(trace, step, DecisivenessKind::MinimallyDecisive);
        if (claim.object != x)
            fail("minimal decisiveness claim does not concern " + where);
        const Category t = *claim.category;
        return c[claim.individual][x] == t ? current & bit(t) : current & ~bit(t);
    }
    case DeductionRule::CategoricallyDecisive: {
        const auto& claim = cited_claim(trace, step, DecisivenessKind::CategoricallyDecisive);
        const Category t = *claim.category;
        if (c[claim.individual][x] == t)
            fail("categorical decisiveness cannot exclude " + where + " from " + category_name(t));
        return current & ~bit(t);
    }
    case DeductionRule::Independence: {
        if (!step.source_profile || *step.source_profile >= trace.profiles.size()
            || *step.source_profile == step.profile)
            fail("independence step at " + where + " has no valid source profile");
        const Profile& source = trace.profiles[*step.source_profile];
        for (Individual i = 0; i < c.individuals(); ++i)
            if (source[i][x] != c[i][x])
                fail("independence cited at " + where + " but the columns differ");
        return current & dom[*step.source_profile][static_cast<std::size_t>(x)];
    }
    case DeductionRule::Surjectivity:
        return cover::supported(dom[step.profile], static_cast<std::size_t>(x), trace.instance.p());
    }
    fail("unknown deduction rule");
}

std::vector<Object> candidate_objects(std::span<const CategoryMask> row, CategoryMask categories)
{
    std::vector<Object> out;
    for (auto cell : cover::candidates(row, categories))
        out.push_back(static_cast<Object>(cell));
    return out;
}

std::string category_set(CategoryMask mask)
{
    std::string out;
    for (Category t = 0; t < max_categories; ++t)
        if (mask & bit(t))
            out += (out.empty() ? "" : ",") + category_name(t);
    return out;
}

std::string describe_violation(CategoryMask categories, const std::vector<Object>& candidates)
{
    if (std::popcount(categories) == 1 && candidates.empty())
        return category_set(categories) + " empty";
    std::string objects;
    for (auto x : candidates)
        objects += (objects.empty() ? "" : ",") + object_name(x);
    return "{" + category_set(categories) + "} can only use {" + objects + "}";
}

void verify_node(const ContradictionTrace& trace, const TraceNode& node, Domains dom)
{
    for (const auto& step : node.steps) {
        const CategoryMask now = deduce(trace, dom, step);
        const std::string where = cell_name(trace, step.profile, step.object);
        if (now != step.domain_after)
            fail(std::string(to_string(step.rule)) + " at " + where + " yields {" + category_set(now)
                 + "}, trace records {" + category_set(step.domain_after) + "}");
        if (now == 0 && &step != &node.steps.back())
            fail(std::string(to_string(step.rule)) + " empties " + where + " before the last step");
        dom[step.profile][static_cast<std::size_t>(step.object)] = now;
    }

    if (node.terminal) {
        if (node.split_profile)
            fail("node both closes and splits");
        const auto& hv = *node.terminal;
        if (hv.profile >= trace.profiles.size())
            fail("terminal refers to an invalid profile");
        if (hv.empty_object) {
            const Object x = *hv.empty_object;
            if (x < 0 || x >= trace.instance.m() || dom[hv.profile][static_cast<std::size_t>(x)] != 0)
                fail("no contradiction: " + cell_name(trace, hv.profile, x) + " still has candidates");
            return;
        }
        if (!node.steps.empty() && node.steps.back().domain_after == 0)
            fail("a cell was emptied but the terminal does not cite it");
        if (hv.categories == 0 || (hv.categories & ~trace.instance.all_categories()))
            fail("terminal refers to an invalid category set");
        const auto found = candidate_objects(dom[hv.profile], hv.categories);
        if (found != hv.candidates)
            fail("terminal candidate list does not match the derived candidates");
        if (static_cast<int>(found.size()) >= std::popcount(hv.categories))
            fail("no contradiction at " + trace.profile_names[hv.profile] + ": {" + category_set(hv.categories)
                 + "} still has enough candidates");
        return;
    }

    if (!node.split_profile)
        fail("branch ends without a contradiction");
    const std::size_t k = *node.split_profile;
    const Category t = node.split_category;
    if (k >= trace.profiles.size() || t < 0 || t >= trace.instance.p())
        fail("split refers to an invalid profile or category");
    const auto cover = candidate_objects(dom[k], bit(t));
    if (cover != node.branch_objects || node.branches.size() != cover.size())
        fail("split on " + category_name(t) + " at " + trace.profile_names[k] + " does not cover every candidate");
    for (std::size_t b = 0; b < cover.size(); ++b) {
        Domains branch = dom;
        branch[k][static_cast<std::size_t>(cover[b])] = bit(t);
        verify_node(trace, node.branches[b], std::move(branch));
    }
}

void collect_conclusions(const TraceNode& node, std::vector<std::string>& out)
{
    if (node.terminal)
        out.push_back(node.terminal->conclusion);
    for (const auto& branch : node.branches)
        collect_conclusions(branch, out);
}

// ---------------------------------------------------------------------------
// Construction

struct Placement {
    Category x;
    Category y;
};

class Builder {
public:
    Builder(ProofId proof, const Instance& instance, const ProofBinding& binding)
    {
        trace_.proof = proof;
        trace_.instance = instance;
        trace_.binding = binding;
        for (Object w = 0; w < instance.m(); ++w)
            if (w != binding.x && w != binding.y)
                rest_objects_.push_back(w);
        for (Category t = 0; t < instance.p(); ++t)
            if (t != binding.t1 && t != binding.t2)
                rest_categories_.push_back(t);
    }

    ContradictionTrace& trace() { return trace_; }
    const std::vector<Object>& rest_objects() const { return rest_objects_; }
    Domains unconstrained() const
    {
        return Domains(trace_.profiles.size(), std::vector<CategoryMask>(static_cast<std::size_t>(trace_.instance.m()),
                                                                        trace_.instance.all_categories()));
    }

    /// Individuals 1 and 2 place x and y as given; the others copy `rest`.
    /// Remaining objects go to t3..tp in order (overflow to tp, or t2 when
    /// p = 2), identically for everyone.
    std::size_t add_profile(std::string name, Placement first, Placement second, Placement rest)
    {
        const auto& b = trace_.binding;
        std::vector<Classification> members;
        for (Individual i = 0; i < trace_.instance.n(); ++i) {
            const Placement place = i == b.first ? first : i == b.second ? second : rest;
            std::vector<Category> row(static_cast<std::size_t>(trace_.instance.m()));
            row[static_cast<std::size_t>(b.x)] = place.x;
            row[static_cast<std::size_t>(b.y)] = place.y;
            for (std::size_t k = 0; k < rest_objects_.size(); ++k) {
                Category t = b.t2;
                if (!rest_categories_.empty())
                    t = rest_categories_[std::min(k, rest_categories_.size() - 1)];
                row[static_cast<std::size_t>(rest_objects_[k])] = t;
            }
            members.emplace_back(std::move(row), trace_.instance.p());
        }
        trace_.profile_names.push_back(std::move(name));
        trace_.profiles.emplace_back(std::move(members));
        return trace_.profiles.size() - 1;
    }

    /// Records the step if it narrows its cell. A step that empties the cell
    /// closes the node; later steps on a closed node are dropped.
    void apply(TraceNode& node, Domains& dom, TraceStep step)
    {
        if (node.terminal)
            return;
        step.domain_after = deduce(trace_, dom, step);
        auto& cell = dom[step.profile][static_cast<std::size_t>(step.object)];
        if (step.domain_after == cell)
            return;
        cell = step.domain_after;
        node.steps.push_back(step);
        if (cell == 0)
            node.terminal = Contradiction{step.profile, step.object, 0, {}, object_name(step.object) + " has no category"};
    }

    void unanimity(TraceNode& node, Domains& dom, std::size_t k)
    {
        const Profile& c = trace_.profiles[k];
        for (Object w = 0; w < trace_.instance.m(); ++w) {
            bool unanimous = true;
            for (const auto& member : c.members())
                unanimous = unanimous && member[w] == c[0][w];
            if (unanimous)
                apply(node, dom, {DeductionRule::Unanimity, k, w, std::nullopt, std::nullopt, 0});
        }
    }

    void claim(TraceNode& node, Domains& dom, std::size_t k, std::size_t index)
    {
        const auto& claim = trace_.claims[index];
        switch (claim.kind) {
        case DecisivenessKind::ObjectDecisive:
            apply(node, dom, {DeductionRule::ObjectDecisive, k, *claim.object, index, std::nullopt, 0});
            break;
        case DecisivenessKind::MinimallyDecisive:
            apply(node, dom, {DeductionRule::MinimallyDecisive, k, *claim.object, index, std::nullopt, 0});
            break;
        case DecisivenessKind::CategoricallyDecisive:
            for (Object w = 0; w < trace_.instance.m(); ++w)
                if (trace_.profiles[k][claim.individual][w] != *claim.category)
                    apply(node, dom, {DeductionRule::CategoricallyDecisive, k, w, index, std::nullopt, 0});
            break;
        case DecisivenessKind::MinimallySemiDecisive:
            throw std::logic_error("no proof uses semi-decisive claims");
        }
    }

    void claims(TraceNode& node, Domains& dom, std::size_t k)
    {
        for (std::size_t index = 0; index < trace_.claims.size(); ++index)
            claim(node, dom, k, index);
    }

    void surjectivity(TraceNode& node, Domains& dom, std::size_t k)
    {
        for (bool changed = true; changed;) {
            changed = false;
            for (Object w = 0; w < trace_.instance.m(); ++w) {
                const auto before = node.steps.size();
                apply(node, dom, {DeductionRule::Surjectivity, k, w, std::nullopt, std::nullopt, 0});
                changed = changed || node.steps.size() != before;
            }
        }
    }

    void link(TraceNode& node, Domains& dom, std::size_t from, std::size_t to, Object w)
    {
        apply(node, dom, {DeductionRule::Independence, to, w, std::nullopt, from, 0});
    }

    void close(TraceNode& node, const Domains& dom, std::size_t k, CategoryMask categories,
               std::optional<std::string> conclusion = std::nullopt)
    {
        if (node.terminal)
            return;
        Contradiction hv{k, std::nullopt, categories, candidate_objects(dom[k], categories), {}};
        hv.conclusion = conclusion ? *conclusion : describe_violation(categories, hv.candidates);
        node.terminal = std::move(hv);
    }

    /// Closes on the smallest Hall violation at profile k, if any.
    bool close_if_violated(TraceNode& node, const Domains& dom, std::size_t k)
    {
        if (node.terminal)
            return true;
        const auto violator = cover::hall_violator(dom[k], trace_.instance.p());
        if (violator)
            close(node, dom, k, *violator);
        return violator.has_value();
    }

private:
    ContradictionTrace trace_;
    std::vector<Object> rest_objects_;
    std::vector<Category> rest_categories_;
};

void build_single_profile(Builder& b, bool unanimity)
{
    const auto& bind = b.trace().binding;
    const Category t1 = bind.t1;
    const Category t2 = bind.t2;
    const auto c = b.add_profile("c", {t2, t1}, {t1, t2}, {t1, t2});
    auto& root = b.trace().root;
    auto dom = b.unconstrained();
    if (unanimity)
        b.unanimity(root, dom, c);
    b.claims(root, dom, c);
    b.close(root, dom, c, bit(t1));
}

void build_prop3(Builder& b)
{
    const auto& bind = b.trace().binding;
    const Category t1 = bind.t1;
    const Category t2 = bind.t2;
    auto& root = b.trace().root;

    const auto c = b.add_profile("c", {t1, t2}, {t2, t1}, {t1, t2});
    if (bind.same_category) {
        const auto c2 = b.add_profile("c″", {t2, t1}, {t1, t2}, {t1, t2});
        auto dom = b.unconstrained();
        b.claims(root, dom, c);
        b.surjectivity(root, dom, c);
        for (auto w : b.rest_objects())
            b.link(root, dom, c, c2, w);
        b.claims(root, dom, c2);
        b.close(root, dom, c2, bit(t1));
        return;
    }

    const auto c1 = b.add_profile("c′", {t1, t2}, {t1, t2}, {t1, t2});
    const auto c2 = b.add_profile("c″", {t2, t1}, {t1, t2}, {t1, t2});
    auto dom = b.unconstrained();
    b.claims(root, dom, c);
    const auto cover_t2 = candidate_objects(dom[c], bit(t2));
    if (cover_t2.empty()) {
        b.close(root, dom, c, bit(t2));
        return;
    }
    root.split_profile = c;
    root.split_category = t2;
    root.branch_objects = cover_t2;
    for (auto z : cover_t2) {
        TraceNode node;
        Domains branch = dom;
        branch[c][static_cast<std::size_t>(z)] = bit(t2);
        b.link(node, branch, c, c1, z);
        b.claims(node, branch, c1);
        if (!b.close_if_violated(node, branch, c1)) {
            b.surjectivity(node, branch, c1);
            for (auto w : b.rest_objects())
                b.link(node, branch, c1, c2, w);
            b.claims(node, branch, c2);
            b.close(node, branch, c2, bit(t1));
        }
        root.branches.push_back(std::move(node));
    }
}

void build_prop4(Builder& b)
{
    const auto& bind = b.trace().binding;
    const auto c = b.add_profile("c", {bind.t2, bind.t1}, {bind.t1, bind.t2}, {bind.t1, bind.t2});
    auto& root = b.trace().root;
    auto dom = b.unconstrained();
    b.claims(root, dom, c);
    const auto violator = cover::hall_violator(dom[c], b.trace().instance.p());
    if (!violator)
        throw ReplayFailure("prop-4: the forced placements leave every category coverable");
    b.close(root, dom, c, *violator, "x and y both in " + category_name(bind.t2));
}

void build_prop5(Builder& b)
{
    const auto& bind = b.trace().binding;
    const Category t1 = bind.t1;
    const Category t2 = bind.t2;
    auto& root = b.trace().root;
    if (bind.same_category) {
        const auto c = b.add_profile("c′", {t1, t2}, {t2, t1}, {t2, t1});
        auto dom = b.unconstrained();
        b.claims(root, dom, c);
        b.close(root, dom, c, bit(t1));
        return;
    }
    const auto c = b.add_profile("c", {t1, t2}, {t2, t1}, {t1, t2});
    auto dom = b.unconstrained();
    b.claims(root, dom, c);
    b.close(root, dom, c, bit(t1) | bit(t2));
}

} // namespace

std::string_view to_string(ProofId proof)
{
    switch (proof) {
    case ProofId::Theorem1:
        return "theorem-1";
    case ProofId::Prop2:
        return "prop-2";
    case ProofId::Prop3:
        return "prop-3";
    case ProofId::Prop4:
        return "prop-4";
    case ProofId::Prop5:
        return "prop-5";
    }
    return "unknown";
}

ProofId parse_proof_id(std::string_view text)
{
    for (auto proof : {ProofId::Theorem1, ProofId::Prop2, ProofId::Prop3, ProofId::Prop4, ProofId::Prop5})
        if (text == to_string(proof))
            return proof;
    throw std::invalid_argument("unknown proof '" + std::string(text)
                                + "' (expected theorem-1, prop-2, prop-3, prop-4 or prop-5)");
}

std::string_view to_string(DeductionRule rule)
{
    switch (rule) {
    case DeductionRule::Unanimity:
        return "unanimity";
    case DeductionRule::ObjectDecisive:
        return "decisive-over-object";
    case DeductionRule::CategoricallyDecisive:
        return "categorically-decisive";
    case DeductionRule::MinimallyDecisive:
        return "minimally-decisive";
    case DeductionRule::Independence:
        return "independence";
    case DeductionRule::Surjectivity:
        return "surjectivity";
    }
    return "unknown";
}

void check_preconditions(ProofId proof, const Instance& instance, const ProofBinding& binding)
{
    const auto name = std::string(to_string(proof));
    const int n = instance.n();
    const int m = instance.m();
    const int p = instance.p();
    if (binding.first == binding.second || binding.first < 0 || binding.second < 0 || binding.first >= n
        || binding.second >= n)
        throw ProofPreconditionError(name + ": individuals 1 and 2 must be distinct and within 1.." + std::to_string(n));
    if (binding.x == binding.y || binding.x < 0 || binding.y < 0 || binding.x >= m || binding.y >= m)
        throw ProofPreconditionError(name + ": objects x and y must be distinct and within 1.." + std::to_string(m));
    if (binding.t1 == binding.t2 || binding.t1 < 0 || binding.t2 < 0 || binding.t1 >= p || binding.t2 >= p)
        throw ProofPreconditionError(name + ": categories t1 and t2 must be distinct and within 1.."
                                     + std::to_string(p));
    switch (proof) {
    case ProofId::Theorem1:
    case ProofId::Prop5:
        break;
    case ProofId::Prop2:
        if (m != 2 || p != 2)
            throw ProofPreconditionError(name + " needs m = p = 2, got " + to_string(instance));
        break;
    case ProofId::Prop3:
        if (m > p + 1)
            throw ProofPreconditionError(name + " needs p <= m <= p + 1, got " + to_string(instance));
        if (binding.same_category && m != p + 1)
            throw ProofPreconditionError(name + " with a shared category needs m = p + 1, got "
                                         + to_string(instance));
        break;
    case ProofId::Prop4:
        if (m != p)
            throw ProofPreconditionError(name + " needs m = p, got " + to_string(instance));
        if (binding.same_category)
            throw ProofPreconditionError(name + " concerns objects only; it has no shared-category case");
        break;
    }
}

ContradictionTrace replay_theorem(ProofId proof, const Instance& instance, const ProofBinding& binding)
{
    check_preconditions(proof, instance, binding);
    Builder builder(proof, instance, binding);
    auto& trace = builder.trace();
    const Category second_category = binding.same_category ? binding.t1 : binding.t2;
    switch (proof) {
    case ProofId::Theorem1:
    case ProofId::Prop2:
    case ProofId::Prop3:
        trace.claims = {DecisivenessClaim::minimally_decisive(binding.first, binding.x, binding.t1),
                        DecisivenessClaim::minimally_decisive(binding.second, binding.y, second_category)};
        break;
    case ProofId::Prop4:
        trace.claims = {DecisivenessClaim::object_decisive(binding.first, binding.x),
                        DecisivenessClaim::object_decisive(binding.second, binding.y)};
        break;
    case ProofId::Prop5:
        trace.claims = {DecisivenessClaim::categorically_decisive(binding.first, binding.t1),
                        DecisivenessClaim::categorically_decisive(binding.second, second_category)};
        break;
    }

    switch (proof) {
    case ProofId::Theorem1:
        build_single_profile(builder, true);
        break;
    case ProofId::Prop2:
        build_single_profile(builder, false);
        break;
    case ProofId::Prop3:
        build_prop3(builder);
        break;
    case ProofId::Prop4:
        build_prop4(builder);
        break;
    case ProofId::Prop5:
        build_prop5(builder);
        break;
    }
    verify_trace(trace);
    return std::move(trace);
}

void verify_trace(const ContradictionTrace& trace)
{
    if (trace.claims.size() != 2)
        fail("a trace needs exactly two decisiveness claims");
    try {
        ExpertiseWitness{trace.claims[0], trace.claims[1]}.validate(expertise_kind(trace.proof), trace.instance);
    } catch (const std::invalid_argument& e) {
        fail(std::string("claims are not an admissible witness: ") + e.what());
    }
    if (trace.profiles.empty() || trace.profile_names.size() != trace.profiles.size())
        fail("trace has no profiles or unnamed profiles");
    for (const auto& profile : trace.profiles) {
        if (profile.individuals() != trace.instance.n() || profile[0].objects() != trace.instance.m()
            || profile[0].categories() != trace.instance.p())
            fail("trace profile does not belong to " + to_string(trace.instance));
    }
    const Domains unconstrained(trace.profiles.size(),
                                std::vector<CategoryMask>(static_cast<std::size_t>(trace.instance.m()),
                                                          trace.instance.all_categories()));
    verify_node(trace, trace.root, unconstrained);
}

std::vector<std::string> conclusions(const ContradictionTrace& trace)
{
    std::vector<std::string> out;
    collect_conclusions(trace.root, out);
    return out;
}

} // namespace cafcheck
