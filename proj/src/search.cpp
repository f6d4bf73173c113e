#include "cafcheck/search.hpp"

#include "cafcheck/cover.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace cafcheck {

namespace {

constexpr CategoryMask bit(Category t) { return CategoryMask{1} << t; }

constexpr ExpertiseKind existential_order[] = {ExpertiseKind::Expertise, ExpertiseKind::CategoricalExpertise,
                                               ExpertiseKind::MinimalExpertise,
                                               ExpertiseKind::SemiDecisiveExpertise};

struct TimedOut {};

// ---------------------------------------------------------------------------
// Witness tuples

enum class Sort { Individual, Object, Category };

struct TupleEntry {
    Sort sort;
    int value;
};

using Tuple = std::vector<TupleEntry>;

/// All admissible witnesses of one kind, lexicographic on (i, j, x, y, t, t').
std::vector<ExpertiseWitness> admissible_witnesses(ExpertiseKind kind, const Instance& instance, CategoryMode mode)
{
    std::vector<ExpertiseWitness> out;
    const int n = instance.n();
    const int m = instance.m();
    const int p = instance.p();
    for (Individual i = 0; i < n; ++i)
        for (Individual j = 0; j < n; ++j) {
            if (i == j)
                continue;
            switch (kind) {
            case ExpertiseKind::Expertise:
                for (Object x = 0; x < m; ++x)
                    for (Object y = 0; y < m; ++y)
                        if (x != y)
                            out.push_back({DecisivenessClaim::object_decisive(i, x),
                                           DecisivenessClaim::object_decisive(j, y)});
                break;
            case ExpertiseKind::CategoricalExpertise:
                for (Category t = 0; t < p; ++t)
                    for (Category u = 0; u < p; ++u)
                        if (mode == CategoryMode::Permissive || t != u)
                            out.push_back({DecisivenessClaim::categorically_decisive(i, t),
                                           DecisivenessClaim::categorically_decisive(j, u)});
                break;
            case ExpertiseKind::MinimalExpertise:
            case ExpertiseKind::SemiDecisiveExpertise: {
                const auto make = kind == ExpertiseKind::MinimalExpertise
                                      ? &DecisivenessClaim::minimally_decisive
                                      : &DecisivenessClaim::minimally_semi_decisive;
                for (Object x = 0; x < m; ++x)
                    for (Object y = 0; y < m; ++y) {
                        if (x == y)
                            continue;
                        for (Category t = 0; t < p; ++t)
                            for (Category u = 0; u < p; ++u)
                                out.push_back({make(i, x, t), make(j, y, u)});
                    }
                break;
            }
            }
        }
    return out;
}

void append_tuple(Tuple& tuple, const ExpertiseWitness& w)
{
    tuple.push_back({Sort::Individual, w.first.individual});
    tuple.push_back({Sort::Individual, w.second.individual});
    if (w.first.object) {
        tuple.push_back({Sort::Object, *w.first.object});
        tuple.push_back({Sort::Object, *w.second.object});
    }
    if (w.first.category) {
        tuple.push_back({Sort::Category, *w.first.category});
        tuple.push_back({Sort::Category, *w.second.category});
    }
}

/// A tuple is canonical when it equals its first-occurrence renaming within
/// each sort, which is the lexicographically least tuple in its orbit under
/// independent permutations of individuals, objects and categories.
bool canonical(const Tuple& tuple)
{
    std::vector<int> rename[3];
    for (const auto& e : tuple) {
        auto& seen = rename[static_cast<int>(e.sort)];
        const auto it = std::find(seen.begin(), seen.end(), e.value);
        const int image = it == seen.end() ? static_cast<int>(seen.size()) : static_cast<int>(it - seen.begin());
        if (it == seen.end())
            seen.push_back(e.value);
        if (image != e.value)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Constraint model: one variable per cell, or per (object, column) class when
// independence ties cells together.

class Model {
public:
    Model(std::shared_ptr<const ProfileSpace> space, bool independence) : space_(std::move(space))
    {
        const auto& instance = space_->instance();
        m_ = instance.m();
        p_ = instance.p();
        const std::size_t cells = space_->profile_count() * static_cast<std::size_t>(m_);
        cell_var_.resize(cells);
        if (independence) {
            const std::uint32_t keys = space_->column_key_count();
            std::vector<std::int64_t> class_var(static_cast<std::size_t>(m_) * keys, -1);
            for (std::size_t r = 0; r < space_->profile_count(); ++r)
                for (Object x = 0; x < m_; ++x) {
                    auto& v = class_var[static_cast<std::size_t>(x) * keys + space_->column_key(r, x)];
                    if (v < 0)
                        v = static_cast<std::int64_t>(var_count_++);
                    cell_var_[r * static_cast<std::size_t>(m_) + static_cast<std::size_t>(x)]
                        = static_cast<std::uint32_t>(v);
                }
        } else {
            for (std::size_t c = 0; c < cells; ++c)
                cell_var_[c] = static_cast<std::uint32_t>(c);
            var_count_ = cells;
        }

        // CSR: profiles containing each variable.
        var_offsets_.assign(var_count_ + 1, 0);
        for (std::size_t c = 0; c < cells; ++c)
            ++var_offsets_[cell_var_[c] + 1];
        for (std::size_t v = 0; v < var_count_; ++v)
            var_offsets_[v + 1] += var_offsets_[v];
        var_profiles_.resize(cells);
        std::vector<std::size_t> fill(var_offsets_.begin(), var_offsets_.end() - 1);
        for (std::size_t c = 0; c < cells; ++c)
            var_profiles_[fill[cell_var_[c]]++] = static_cast<std::uint32_t>(c / static_cast<std::size_t>(m_));
    }

    const ProfileSpace& space() const { return *space_; }
    const std::shared_ptr<const ProfileSpace>& shared_space() const { return space_; }
    int m() const { return m_; }
    int p() const { return p_; }
    std::size_t var_count() const { return var_count_; }
    std::uint32_t var(std::size_t profile, Object x) const
    {
        return cell_var_[profile * static_cast<std::size_t>(m_) + static_cast<std::size_t>(x)];
    }
    std::span<const std::uint32_t> profiles_of(std::uint32_t var) const
    {
        return {var_profiles_.data() + var_offsets_[var], var_offsets_[var + 1] - var_offsets_[var]};
    }

private:
    std::shared_ptr<const ProfileSpace> space_;
    int m_ = 0;
    int p_ = 0;
    std::size_t var_count_ = 0;
    std::vector<std::uint32_t> cell_var_;
    std::vector<std::size_t> var_offsets_;
    std::vector<std::uint32_t> var_profiles_;
};

class Engine {
public:
    Engine(const Model& model, SearchStats& stats, std::optional<std::chrono::steady_clock::time_point> deadline)
        : model_(model), stats_(stats), deadline_(deadline),
          domains_(model.var_count(), model.space().instance().all_categories()),
          queued_(model.space().profile_count(), 0)
    {
        const int p = model.p();
        std::vector<OpenVar> open;
        open.reserve(domains_.size());
        for (std::size_t v = 0; v < domains_.size(); ++v)
            open.push_back({p, static_cast<std::uint32_t>(v)});
        open_ = decltype(open_)(std::greater<>{}, std::move(open));
    }

    std::size_t mark() const { return trail_.size(); }

    void undo(std::size_t mark)
    {
        while (trail_.size() > mark) {
            const auto [var, old] = trail_.back();
            domains_[var] = old;
            note_open(var);
            trail_.pop_back();
        }
        for (auto r : queue_)
            queued_[r] = 0;
        queue_.clear();
    }

    /// Intersects a variable's domain with `mask`; false on wipe-out.
    bool restrict(std::uint32_t var, CategoryMask mask)
    {
        const CategoryMask old = domains_[var];
        const CategoryMask now = old & mask;
        if (now == old)
            return true;
        if (now == 0)
            return false;
        trail_.emplace_back(var, old);
        domains_[var] = now;
        note_open(var);
        for (auto r : model_.profiles_of(var))
            enqueue(r);
        return true;
    }

    void enqueue_all()
    {
        for (std::size_t r = 0; r < model_.space().profile_count(); ++r)
            enqueue(static_cast<std::uint32_t>(r));
    }

    bool restrict_unanimity()
    {
        const auto& space = model_.space();
        const int n = space.instance().n();
        for (std::size_t r = 0; r < space.profile_count(); ++r)
            for (Object x = 0; x < model_.m(); ++x) {
                const Category t = space.category(r, 0, x);
                bool unanimous = true;
                for (Individual i = 1; i < n && unanimous; ++i)
                    unanimous = space.category(r, i, x) == t;
                if (unanimous && !restrict(model_.var(r, x), bit(t)))
                    return false;
            }
        return true;
    }

    bool restrict_claim(const DecisivenessClaim& claim)
    {
        const auto& space = model_.space();
        const Individual i = claim.individual;
        for (std::size_t r = 0; r < space.profile_count(); ++r) {
            switch (claim.kind) {
            case DecisivenessKind::ObjectDecisive:
                if (!restrict(model_.var(r, *claim.object), bit(space.category(r, i, *claim.object))))
                    return false;
                break;
            case DecisivenessKind::CategoricallyDecisive:
                for (Object w = 0; w < model_.m(); ++w)
                    if (space.category(r, i, w) != *claim.category
                        && !restrict(model_.var(r, w), ~bit(*claim.category)))
                        return false;
                break;
            case DecisivenessKind::MinimallyDecisive: {
                const bool says = space.category(r, i, *claim.object) == *claim.category;
                if (!restrict(model_.var(r, *claim.object), says ? bit(*claim.category) : ~bit(*claim.category)))
                    return false;
                break;
            }
            case DecisivenessKind::MinimallySemiDecisive:
                if (space.category(r, i, *claim.object) == *claim.category
                    && !restrict(model_.var(r, *claim.object), bit(*claim.category)))
                    return false;
                break;
            }
        }
        return true;
    }

    /// Surjectivity propagation to a fixpoint: each queued profile is checked
    /// for a covering matching and pruned to its supported values.
    bool propagate()
    {
        const int m = model_.m();
        const int p = model_.p();
        std::vector<CategoryMask> row(static_cast<std::size_t>(m));
        std::size_t head = 0;
        while (head < queue_.size()) {
            const auto r = queue_[head++];
            queued_[r] = 0;
            for (Object x = 0; x < m; ++x)
                row[static_cast<std::size_t>(x)] = domains_[model_.var(r, x)];
            if (!cover::feasible(row, p)) {
                drop_queue(head);
                return false;
            }
            for (Object x = 0; x < m; ++x) {
                const auto cell = static_cast<std::size_t>(x);
                if (std::popcount(row[cell]) < 2)
                    continue;
                const CategoryMask keep = cover::supported(row, cell, p);
                if (keep != row[cell]) {
                    row[cell] = keep;
                    restrict(model_.var(r, x), keep);
                }
            }
        }
        queue_.clear();
        return true;
    }

    /// Depth-first search over open variables, values in ascending order.
    /// On failure the state is back where it was on entry.
    bool solve()
    {
        struct Frame {
            std::uint32_t var;
            CategoryMask untried;
            std::size_t mark;
        };
        std::vector<Frame> stack;
        bool descend = true;
        while (true) {
            if (descend) {
                if (deadline_ && (stats_.nodes & 255u) == 0 && std::chrono::steady_clock::now() > *deadline_)
                    throw TimedOut{};
                const auto var = pick();
                if (!var)
                    return true;
                ++stats_.nodes;
                stack.push_back({*var, domains_[*var], mark()});
            }
            Frame& top = stack.back();
            if (top.untried == 0) {
                stack.pop_back();
                if (stack.empty())
                    return false;
                undo(stack.back().mark);
                ++stats_.backtracks;
                descend = false;
                continue;
            }
            const CategoryMask choice = top.untried & (~top.untried + 1);
            top.untried &= top.untried - 1;
            descend = restrict(top.var, choice) && propagate();
            if (!descend) {
                undo(top.mark);
                ++stats_.backtracks;
            }
        }
    }

    CafTable extract() const
    {
        const auto& space = model_.space();
        std::vector<std::uint32_t> outputs(space.profile_count());
        std::vector<Category> row(static_cast<std::size_t>(model_.m()));
        for (std::size_t r = 0; r < outputs.size(); ++r) {
            for (Object x = 0; x < model_.m(); ++x)
                row[static_cast<std::size_t>(x)] = std::countr_zero(domains_[model_.var(r, x)]);
            outputs[r] = static_cast<std::uint32_t>(space.rank_of(Classification(row, model_.p())));
        }
        return CafTable(model_.shared_space(), std::move(outputs));
    }

private:
    void enqueue(std::uint32_t r)
    {
        if (!queued_[r]) {
            queued_[r] = 1;
            queue_.push_back(r);
        }
    }

    void drop_queue(std::size_t head)
    {
        for (std::size_t k = head; k < queue_.size(); ++k)
            queued_[queue_[k]] = 0;
        queue_.clear();
    }

    void note_open(std::uint32_t var)
    {
        const int size = std::popcount(domains_[var]);
        if (size > 1)
            open_.push({size, var});
    }

    /// Smallest open domain; ties go to the earliest cell (profile rank, then
    /// object), which is variable order. Heap entries whose size is stale are
    /// discarded lazily.
    std::optional<std::uint32_t> pick()
    {
        while (!open_.empty()) {
            const auto [size, var] = open_.top();
            if (std::popcount(domains_[var]) == size)
                return var;
            open_.pop();
        }
        return std::nullopt;
    }

    const Model& model_;
    SearchStats& stats_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    std::vector<CategoryMask> domains_;
    std::vector<std::pair<std::uint32_t, CategoryMask>> trail_;
    std::vector<std::uint32_t> queue_;
    std::vector<char> queued_;
    using OpenVar = std::pair<int, std::uint32_t>; // (domain size, variable)
    std::priority_queue<OpenVar, std::vector<OpenVar>, std::greater<>> open_;
};

class OuterLoop {
public:
    OuterLoop(Engine& engine, const AxiomSet& axioms, const Instance& instance, bool symmetry, SearchStats& stats)
        : engine_(engine), stats_(stats), symmetry_(symmetry)
    {
        for (auto kind : axioms.existential()) {
            kinds_.push_back(kind);
            if (const auto& pin = axioms.pinned.get(kind))
                candidates_.push_back({*pin});
            else
                candidates_.push_back(admissible_witnesses(kind, instance, axioms.categorical_mode));
        }
    }

    bool run() { return descend(0, {}); }

    std::vector<AxiomWitness> witnesses() const
    {
        std::vector<AxiomWitness> out;
        for (std::size_t k = 0; k < kinds_.size(); ++k)
            out.push_back({kinds_[k], chosen_[k]});
        return out;
    }

private:
    bool descend(std::size_t level, const Tuple& prefix)
    {
        if (level == kinds_.size()) {
            ++stats_.tuples_explored;
            return engine_.solve();
        }
        for (const auto& w : candidates_[level]) {
            Tuple tuple = prefix;
            append_tuple(tuple, w);
            if (symmetry_ && !canonical(tuple)) {
                ++stats_.tuples_skipped;
                continue;
            }
            const auto before = engine_.mark();
            if (engine_.restrict_claim(w.first) && engine_.restrict_claim(w.second) && engine_.propagate()) {
                chosen_.resize(level);
                chosen_.push_back(w);
                if (descend(level + 1, tuple))
                    return true;
            } else {
                ++stats_.tuples_pruned;
            }
            engine_.undo(before);
        }
        return false;
    }

    Engine& engine_;
    SearchStats& stats_;
    bool symmetry_;
    std::vector<ExpertiseKind> kinds_;
    std::vector<std::vector<ExpertiseWitness>> candidates_;
    std::vector<ExpertiseWitness> chosen_;
};

// ---------------------------------------------------------------------------
// Brute force

std::uint64_t power_or_zero(std::uint64_t base, std::uint64_t exponent)
{
    std::uint64_t out = 1;
    for (std::uint64_t k = 0; k < exponent; ++k)
        if (__builtin_mul_overflow(out, base, &out))
            return 0;
    return out;
}

bool existential_holds(const CafTable& table, ExpertiseKind kind, const AxiomSet& axioms,
                       const std::optional<ExpertiseWitness>& given, std::optional<ExpertiseWitness>& found)
{
    if (given) {
        given->validate(kind, table.instance(), axioms.categorical_mode);
        if (!check_claim(table, given->first).passed() || !check_claim(table, given->second).passed())
            return false;
        found = given;
        return true;
    }
    found = check_expertise_kind(table, kind, axioms.categorical_mode);
    return found.has_value();
}

bool satisfies_collect(const CafTable& table, const AxiomSet& axioms, const std::vector<AxiomWitness>& supplied,
                       std::vector<AxiomWitness>* out)
{
    if (axioms.unanimity && !check_unanimity(table).passed())
        return false;
    if (axioms.independence && !check_independence(table).passed())
        return false;
    std::vector<AxiomWitness> collected;
    for (auto kind : axioms.existential()) {
        std::optional<ExpertiseWitness> given = axioms.pinned.get(kind);
        for (const auto& s : supplied)
            if (s.kind == kind)
                given = s.witness;
        std::optional<ExpertiseWitness> found;
        if (!existential_holds(table, kind, axioms, given, found))
            return false;
        collected.push_back({kind, *found});
    }
    if (out)
        *out = std::move(collected);
    return true;
}

} // namespace

const std::optional<ExpertiseWitness>& PinnedWitnesses::get(ExpertiseKind kind) const
{
    switch (kind) {
    case ExpertiseKind::Expertise:
        return expertise;
    case ExpertiseKind::CategoricalExpertise:
        return categorical_expertise;
    case ExpertiseKind::MinimalExpertise:
        return minimal_expertise;
    case ExpertiseKind::SemiDecisiveExpertise:
        return semi_decisive;
    }
    throw std::logic_error("unknown expertise kind");
}

std::optional<ExpertiseWitness>& PinnedWitnesses::get(ExpertiseKind kind)
{
    return const_cast<std::optional<ExpertiseWitness>&>(std::as_const(*this).get(kind));
}

bool AxiomSet::empty() const { return bits() == 0; }

bool AxiomSet::has(ExpertiseKind kind) const
{
    switch (kind) {
    case ExpertiseKind::Expertise:
        return expertise;
    case ExpertiseKind::CategoricalExpertise:
        return categorical_expertise;
    case ExpertiseKind::MinimalExpertise:
        return minimal_expertise;
    case ExpertiseKind::SemiDecisiveExpertise:
        return semi_decisive;
    }
    return false;
}

void AxiomSet::set(ExpertiseKind kind, bool on)
{
    switch (kind) {
    case ExpertiseKind::Expertise:
        expertise = on;
        break;
    case ExpertiseKind::CategoricalExpertise:
        categorical_expertise = on;
        break;
    case ExpertiseKind::MinimalExpertise:
        minimal_expertise = on;
        break;
    case ExpertiseKind::SemiDecisiveExpertise:
        semi_decisive = on;
        break;
    }
}

std::vector<ExpertiseKind> AxiomSet::existential() const
{
    std::vector<ExpertiseKind> out;
    for (auto kind : existential_order)
        if (has(kind))
            out.push_back(kind);
    return out;
}

void AxiomSet::validate(const Instance& instance) const
{
    if (empty())
        throw std::invalid_argument("axiom set is empty; select at least one axiom");
    for (auto kind : existential_order) {
        const auto& pin = pinned.get(kind);
        if (!pin)
            continue;
        if (!has(kind))
            throw std::invalid_argument("pinned witness for " + std::string(to_string(kind))
                                        + " but that axiom is not selected");
        pin->validate(kind, instance, categorical_mode);
    }
}

std::string AxiomSet::names() const
{
    std::vector<std::string> parts;
    if (unanimity)
        parts.emplace_back("unanimity");
    if (independence)
        parts.emplace_back("independence");
    for (auto kind : existential())
        parts.emplace_back(to_string(kind));
    std::string out;
    for (const auto& part : parts) {
        if (!out.empty())
            out += ',';
        out += part;
    }
    return out;
}

AxiomSet AxiomSet::parse(std::string_view list)
{
    AxiomSet axioms;
    std::size_t start = 0;
    while (start <= list.size()) {
        const auto end = std::min(list.find(',', start), list.size());
        auto name = list.substr(start, end - start);
        while (!name.empty() && name.front() == ' ')
            name.remove_prefix(1);
        while (!name.empty() && name.back() == ' ')
            name.remove_suffix(1);
        if (name == "unanimity")
            axioms.unanimity = true;
        else if (name == "independence")
            axioms.independence = true;
        else if (name == "expertise")
            axioms.expertise = true;
        else if (name == "categorical-expertise")
            axioms.categorical_expertise = true;
        else if (name == "minimal-expertise")
            axioms.minimal_expertise = true;
        else if (name == "semidecisive" || name == "semi-decisive")
            axioms.semi_decisive = true;
        else if (!name.empty())
            throw std::invalid_argument("unknown axiom '" + std::string(name)
                                        + "' (expected unanimity, independence, expertise, categorical-expertise, "
                                          "minimal-expertise or semidecisive)");
        start = end + 1;
    }
    return axioms;
}

unsigned AxiomSet::bits() const
{
    return (unanimity ? 1u : 0u) | (independence ? 2u : 0u) | (expertise ? 4u : 0u)
           | (categorical_expertise ? 8u : 0u) | (minimal_expertise ? 16u : 0u) | (semi_decisive ? 32u : 0u);
}

AxiomSet AxiomSet::from_bits(unsigned bits)
{
    AxiomSet axioms;
    axioms.unanimity = bits & 1u;
    axioms.independence = bits & 2u;
    axioms.expertise = bits & 4u;
    axioms.categorical_expertise = bits & 8u;
    axioms.minimal_expertise = bits & 16u;
    axioms.semi_decisive = bits & 32u;
    return axioms;
}

std::string_view to_string(Verdict verdict)
{
    switch (verdict) {
    case Verdict::Satisfiable:
        return "satisfiable";
    case Verdict::Unsatisfiable:
        return "unsatisfiable";
    case Verdict::Timeout:
        return "timeout";
    }
    return "unknown";
}

SearchOutcome search(const Instance& instance, const AxiomSet& axioms, const SearchOptions& options)
{
    axioms.validate(instance);
    const auto space = ProfileSpace::make(instance, options.limits);
    const Model model(space, axioms.independence);

    SearchOutcome outcome{instance, axioms, Verdict::Unsatisfiable, std::nullopt, {}, {}, std::nullopt, {}};
    std::optional<std::chrono::steady_clock::time_point> deadline;
    if (options.timeout)
        deadline = std::chrono::steady_clock::now() + *options.timeout;

    Engine engine(model, outcome.stats, deadline);
    engine.enqueue_all();
    if ((axioms.unanimity && !engine.restrict_unanimity()) || !engine.propagate())
        return outcome;

    bool pinned_any = false;
    for (auto kind : axioms.existential())
        pinned_any = pinned_any || axioms.pinned.get(kind).has_value();

    OuterLoop outer(engine, axioms, instance, options.symmetry_reduction && !pinned_any, outcome.stats);
    try {
        if (outer.run()) {
            outcome.verdict = Verdict::Satisfiable;
            outcome.table = engine.extract();
            outcome.witnesses = outer.witnesses();
        }
    } catch (const TimedOut&) {
        outcome.verdict = Verdict::Timeout;
    }
    return outcome;
}

SearchOutcome brute_force_search(const Instance& instance, const AxiomSet& axioms, const BruteForceOptions& options)
{
    axioms.validate(instance);
    const auto space = ProfileSpace::make(instance, options.limits);
    const std::uint64_t s = space->classification_count();
    const std::uint64_t profiles = space->profile_count();
    const int m = instance.m();
    const int p = instance.p();

    SearchOutcome outcome{instance, axioms, Verdict::Unsatisfiable, std::nullopt, {}, {}, std::uint64_t{0}, {}};

    auto consider = [&](CafTable table) {
        ++outcome.stats.tables_enumerated;
        std::vector<AxiomWitness> found;
        if (!satisfies_collect(table, axioms, {}, &found))
            return;
        ++*outcome.model_count;
        if (!outcome.table) {
            outcome.verdict = Verdict::Satisfiable;
            outcome.witnesses = std::move(found);
            outcome.table = table;
        }
        if (outcome.models.size() < options.keep_models)
            outcome.models.push_back(std::move(table));
    };

    const std::uint64_t full = power_or_zero(s, profiles);
    if (full != 0 && full <= options.table_budget) {
        std::vector<std::uint32_t> outputs(profiles, 0);
        for (std::uint64_t k = 0; k < full; ++k) {
            consider(CafTable(space, outputs));
            for (std::size_t d = outputs.size(); d-- > 0;) {
                if (++outputs[d] < s)
                    break;
                outputs[d] = 0;
            }
        }
        return outcome;
    }

    const std::uint64_t keys = space->column_key_count();
    const std::uint64_t digits = keys * static_cast<std::uint64_t>(m);
    const std::uint64_t factorized = power_or_zero(static_cast<std::uint64_t>(p), digits);
    if (!axioms.independence || factorized == 0 || factorized > options.table_budget)
        throw InstanceTooLarge("brute-force table space of " + to_string(instance) + " exceeds the budget of "
                               + std::to_string(options.table_budget) + " tables");

    // One column function per object: column key -> category.
    std::vector<Category> functions(digits, 0);
    std::vector<Category> row(static_cast<std::size_t>(m));
    std::vector<std::uint32_t> outputs(profiles);
    for (std::uint64_t k = 0; k < factorized; ++k) {
        bool total = true;
        for (std::size_t r = 0; r < profiles && total; ++r) {
            CategoryMask seen = 0;
            for (Object x = 0; x < m; ++x) {
                const Category t = functions[static_cast<std::size_t>(x) * keys + space->column_key(r, x)];
                row[static_cast<std::size_t>(x)] = t;
                seen |= bit(t);
            }
            total = seen == instance.all_categories();
            if (total)
                outputs[r] = static_cast<std::uint32_t>(space->rank_of(Classification(row, p)));
        }
        if (total)
            consider(CafTable(space, outputs));
        for (std::size_t d = functions.size(); d-- > 0;) {
            if (++functions[d] < p)
                break;
            functions[d] = 0;
        }
    }
    return outcome;
}

bool satisfies(const CafTable& table, const AxiomSet& axioms, const std::vector<AxiomWitness>& witnesses)
{
    return satisfies_collect(table, axioms, witnesses, nullptr);
}

} // namespace cafcheck
