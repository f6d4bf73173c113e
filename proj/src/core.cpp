#include "cafcheck/core.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace cafcheck {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw std::overflow_error("count exceeds 64 bits");
    return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t out = 0;
    if (__builtin_add_overflow(a, b, &out))
        throw std::overflow_error("count exceeds 64 bits");
    return out;
}

// completions[r][k]: sequences of length r over p symbols that hit every one
// of k designated symbols.
class CompletionCounts {
public:
    CompletionCounts(int m, int p) : p_(p), table_(static_cast<std::size_t>(m + 1) * static_cast<std::size_t>(p + 1), 0)
    {
        at(0, 0) = 1;
        for (int r = 1; r <= m; ++r)
            for (int k = 0; k <= p; ++k) {
                std::uint64_t v = checked_mul(static_cast<std::uint64_t>(p - k), at(r - 1, k));
                if (k > 0)
                    v = checked_add(v, checked_mul(static_cast<std::uint64_t>(k), at(r - 1, k - 1)));
                at(r, k) = v;
            }
    }

    std::uint64_t operator()(int r, int k) const
    {
        return table_[static_cast<std::size_t>(r) * static_cast<std::size_t>(p_ + 1) + static_cast<std::size_t>(k)];
    }

private:
    std::uint64_t& at(int r, int k)
    {
        return table_[static_cast<std::size_t>(r) * static_cast<std::size_t>(p_ + 1) + static_cast<std::size_t>(k)];
    }

    int p_;
    std::vector<std::uint64_t> table_;
};

void check_budget(std::uint64_t rows, int m, const Limits& limits, const std::string& what)
{
    std::uint64_t cells = 0;
    if (__builtin_mul_overflow(rows, static_cast<std::uint64_t>(m), &cells) || cells > limits.cell_budget)
        throw InstanceTooLarge(what + " exceeds the cell budget of " + std::to_string(limits.cell_budget)
                               + " cells");
}

void generate(std::vector<Category>& prefix, CategoryMask used, int m, int p, std::vector<Classification>& out)
{
    const int pos = static_cast<int>(prefix.size());
    if (pos == m) {
        out.emplace_back(prefix, p);
        return;
    }
    for (Category t = 0; t < p; ++t) {
        const CategoryMask next = used | (CategoryMask{1} << t);
        if (m - pos - 1 < p - std::popcount(next))
            continue;
        prefix.push_back(t);
        generate(prefix, next, m, p, out);
        prefix.pop_back();
    }
}

bool is_permutation_of_range(const std::vector<int>& perm, int size)
{
    if (static_cast<int>(perm.size()) != size)
        return false;
    std::vector<bool> seen(static_cast<std::size_t>(size), false);
    for (int v : perm) {
        if (v < 0 || v >= size || seen[static_cast<std::size_t>(v)])
            return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

std::vector<int> invert(const std::vector<int>& perm)
{
    std::vector<int> inv(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k)
        inv[static_cast<std::size_t>(perm[k])] = static_cast<int>(k);
    return inv;
}

std::vector<int> compose_perm(const std::vector<int>& outer, const std::vector<int>& inner)
{
    if (outer.size() != inner.size())
        throw DimensionMismatch("cannot compose relabelings of different sizes");
    std::vector<int> out(inner.size());
    for (std::size_t k = 0; k < inner.size(); ++k)
        out[k] = outer[static_cast<std::size_t>(inner[k])];
    return out;
}

std::vector<std::vector<int>> all_permutations(int size)
{
    std::vector<int> perm(static_cast<std::size_t>(size));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace

Instance::Instance(int n, int m, int p) : n_(n), m_(m), p_(p)
{
    if (n < 2)
        throw InvalidInstance("instance needs n >= 2 individuals, got n = " + std::to_string(n));
    if (p < 2)
        throw InvalidInstance("instance needs p >= 2 categories, got p = " + std::to_string(p));
    if (m < p)
        throw InvalidInstance("instance needs m >= p (every category must receive an object), got m = "
                              + std::to_string(m) + ", p = " + std::to_string(p));
    if (p > max_categories || m > max_objects)
        throw InvalidInstance("instance supports at most " + std::to_string(max_objects) + " objects and "
                              + std::to_string(max_categories) + " categories");
}

std::string to_string(const Instance& instance)
{
    return "(n=" + std::to_string(instance.n()) + ", m=" + std::to_string(instance.m())
           + ", p=" + std::to_string(instance.p()) + ")";
}

std::uint64_t count_surjections(int m, int p)
{
    if (m < 1 || p < 1)
        throw std::invalid_argument("count_surjections needs m >= 1 and p >= 1");
    if (m < p)
        return 0;
    // Surj(m, p) = p * (Surj(m-1, p) + Surj(m-1, p-1))
    std::vector<std::uint64_t> row(static_cast<std::size_t>(p + 1), 0);
    row[0] = 1;
    for (int k = 1; k <= m; ++k) {
        for (int j = std::min(k, p); j >= 1; --j)
            row[static_cast<std::size_t>(j)] = checked_mul(
                static_cast<std::uint64_t>(j),
                checked_add(row[static_cast<std::size_t>(j)], row[static_cast<std::size_t>(j - 1)]));
        row[0] = 0;
    }
    return row[static_cast<std::size_t>(p)];
}

std::uint64_t count_profiles(const Instance& instance)
{
    const std::uint64_t s = count_surjections(instance.m(), instance.p());
    std::uint64_t total = 1;
    for (int i = 0; i < instance.n(); ++i)
        total = checked_mul(total, s);
    return total;
}

Classification::Classification(std::vector<Category> assignment, int categories)
    : assignment_(std::move(assignment)), categories_(categories)
{
    if (categories_ < 1 || categories_ > max_categories)
        throw std::invalid_argument("classification category count out of range");
    CategoryMask seen = 0;
    for (Category t : assignment_) {
        if (t < 0 || t >= categories_)
            throw std::invalid_argument("classification entry " + std::to_string(t) + " out of range 0.."
                                        + std::to_string(categories_ - 1));
        seen |= CategoryMask{1} << t;
    }
    if (std::popcount(seen) != categories_)
        throw std::invalid_argument("classification is not surjective: some category receives no object");
}

std::vector<Classification> enumerate_classifications(const Instance& instance, const Limits& limits)
{
    check_budget(count_surjections(instance.m(), instance.p()), instance.m(), limits, "classification enumeration");
    std::vector<Classification> out;
    std::vector<Category> prefix;
    prefix.reserve(static_cast<std::size_t>(instance.m()));
    generate(prefix, 0, instance.m(), instance.p(), out);
    return out;
}

std::uint64_t rank(const Classification& classification)
{
    const int m = classification.objects();
    const int p = classification.categories();
    const CompletionCounts completions(m, p);
    std::uint64_t r = 0;
    CategoryMask used = 0;
    for (int pos = 0; pos < m; ++pos) {
        const Category current = classification[pos];
        for (Category t = 0; t < current; ++t) {
            const CategoryMask next = used | (CategoryMask{1} << t);
            r += completions(m - pos - 1, p - std::popcount(next));
        }
        used |= CategoryMask{1} << current;
    }
    return r;
}

Classification unrank(const Instance& instance, std::uint64_t r)
{
    const int m = instance.m();
    const int p = instance.p();
    if (r >= count_surjections(m, p))
        throw std::out_of_range("classification rank " + std::to_string(r) + " out of range");
    const CompletionCounts completions(m, p);
    std::vector<Category> assignment;
    assignment.reserve(static_cast<std::size_t>(m));
    CategoryMask used = 0;
    for (int pos = 0; pos < m; ++pos) {
        for (Category t = 0; t < p; ++t) {
            const CategoryMask next = used | (CategoryMask{1} << t);
            const std::uint64_t block = completions(m - pos - 1, p - std::popcount(next));
            if (r < block) {
                assignment.push_back(t);
                used = next;
                break;
            }
            r -= block;
        }
    }
    return Classification(std::move(assignment), p);
}

std::vector<Object> inverse_image(const Classification& classification, Category t)
{
    if (t < 0 || t >= classification.categories())
        throw std::out_of_range("category out of range");
    std::vector<Object> out;
    for (Object x = 0; x < classification.objects(); ++x)
        if (classification[x] == t)
            out.push_back(x);
    return out;
}

Profile::Profile(std::vector<Classification> members) : members_(std::move(members))
{
    if (members_.empty())
        throw DimensionMismatch("profile has no members");
    for (const auto& c : members_)
        if (c.objects() != members_.front().objects() || c.categories() != members_.front().categories())
            throw DimensionMismatch("profile members disagree on object or category count");
}

std::vector<Profile> enumerate_profiles(const Instance& instance, const Limits& limits)
{
    const auto space = ProfileSpace::make(instance, limits);
    std::vector<Profile> out;
    out.reserve(space->profile_count());
    for (std::size_t r = 0; r < space->profile_count(); ++r)
        out.push_back(space->profile(r));
    return out;
}

ProfileSpace::ProfileSpace(const Instance& instance) : instance_(instance) {}

std::shared_ptr<const ProfileSpace> ProfileSpace::make(const Instance& instance, const Limits& limits)
{
    std::uint64_t profiles = 0;
    try {
        profiles = count_profiles(instance);
    } catch (const std::overflow_error&) {
        throw InstanceTooLarge("profile count of " + to_string(instance) + " overflows");
    }
    check_budget(profiles, instance.m(), limits, "profile enumeration of " + to_string(instance));

    std::shared_ptr<ProfileSpace> space(new ProfileSpace(instance));
    space->classifications_ = enumerate_classifications(instance, limits);
    const std::size_t s = space->classifications_.size();
    const auto m = static_cast<std::size_t>(instance.m());
    const auto n = static_cast<std::size_t>(instance.n());
    space->cells_.reserve(s * m);
    for (const auto& c : space->classifications_)
        space->cells_.insert(space->cells_.end(), c.assignment().begin(), c.assignment().end());

    space->profile_count_ = static_cast<std::size_t>(profiles);
    space->members_.resize(space->profile_count_ * n);
    std::vector<std::uint32_t> digits(n, 0);
    for (std::size_t r = 0; r < space->profile_count_; ++r) {
        std::copy(digits.begin(), digits.end(), space->members_.begin() + static_cast<std::ptrdiff_t>(r * n));
        for (std::size_t i = n; i-- > 0;) {
            if (++digits[i] < s)
                break;
            digits[i] = 0;
        }
    }
    return space;
}

std::uint32_t ProfileSpace::column_key(std::size_t profile, Object x) const
{
    std::uint32_t key = 0;
    for (Individual i = 0; i < instance_.n(); ++i)
        key = key * static_cast<std::uint32_t>(instance_.p()) + static_cast<std::uint32_t>(category(profile, i, x));
    return key;
}

std::uint32_t ProfileSpace::column_key_count() const
{
    std::uint32_t count = 1;
    for (int i = 0; i < instance_.n(); ++i)
        count *= static_cast<std::uint32_t>(instance_.p());
    return count;
}

Profile ProfileSpace::profile(std::size_t r) const
{
    if (r >= profile_count_)
        throw std::out_of_range("profile rank out of range");
    std::vector<Classification> members;
    members.reserve(static_cast<std::size_t>(instance_.n()));
    for (Individual i = 0; i < instance_.n(); ++i)
        members.push_back(classifications_[member(r, i)]);
    return Profile(std::move(members));
}

std::size_t ProfileSpace::rank_of(const Classification& classification) const
{
    if (classification.objects() != instance_.m() || classification.categories() != instance_.p())
        throw DimensionMismatch("classification does not match instance " + to_string(instance_));
    return static_cast<std::size_t>(rank(classification));
}

std::size_t ProfileSpace::rank_of(const Profile& profile) const
{
    if (profile.individuals() != instance_.n())
        throw DimensionMismatch("profile does not match instance " + to_string(instance_));
    std::size_t r = 0;
    for (const auto& c : profile.members())
        r = r * classifications_.size() + rank_of(c);
    return r;
}

CafTable::CafTable(std::shared_ptr<const ProfileSpace> space, std::vector<std::uint32_t> outputs)
    : space_(std::move(space)), outputs_(std::move(outputs))
{
    if (!space_)
        throw std::invalid_argument("table needs a profile space");
    if (outputs_.size() != space_->profile_count())
        throw DimensionMismatch("table must define an output for each of the " + std::to_string(space_->profile_count())
                                + " profiles, got " + std::to_string(outputs_.size()));
    for (auto r : outputs_)
        if (r >= space_->classification_count())
            throw std::out_of_range("table output rank out of range");
}

CafTable::CafTable(std::shared_ptr<const ProfileSpace> space, const std::vector<Classification>& outputs)
    : space_(std::move(space))
{
    if (!space_)
        throw std::invalid_argument("table needs a profile space");
    if (outputs.size() != space_->profile_count())
        throw DimensionMismatch("table must define an output for each profile");
    outputs_.reserve(outputs.size());
    for (const auto& c : outputs)
        outputs_.push_back(static_cast<std::uint32_t>(space_->rank_of(c)));
}

Relabeling Relabeling::identity(const Instance& instance)
{
    Relabeling rel;
    rel.object_perm.resize(static_cast<std::size_t>(instance.m()));
    rel.category_perm.resize(static_cast<std::size_t>(instance.p()));
    rel.individual_perm.resize(static_cast<std::size_t>(instance.n()));
    std::iota(rel.object_perm.begin(), rel.object_perm.end(), 0);
    std::iota(rel.category_perm.begin(), rel.category_perm.end(), 0);
    std::iota(rel.individual_perm.begin(), rel.individual_perm.end(), 0);
    return rel;
}

void Relabeling::validate(const Instance& instance) const
{
    if (!is_permutation_of_range(object_perm, instance.m()))
        throw DimensionMismatch("object relabeling is not a permutation of 0.." + std::to_string(instance.m() - 1));
    if (!is_permutation_of_range(category_perm, instance.p()))
        throw DimensionMismatch("category relabeling is not a permutation of 0.." + std::to_string(instance.p() - 1));
    if (!is_permutation_of_range(individual_perm, instance.n()))
        throw DimensionMismatch("individual relabeling is not a permutation of 0.."
                                + std::to_string(instance.n() - 1));
}

Relabeling Relabeling::inverse() const
{
    return Relabeling{invert(object_perm), invert(category_perm), invert(individual_perm)};
}

Relabeling compose(const Relabeling& outer, const Relabeling& inner)
{
    return Relabeling{compose_perm(outer.object_perm, inner.object_perm),
                      compose_perm(outer.category_perm, inner.category_perm),
                      compose_perm(outer.individual_perm, inner.individual_perm)};
}

Classification apply_relabeling(const Classification& classification, const Relabeling& rel)
{
    if (!is_permutation_of_range(rel.object_perm, classification.objects())
        || !is_permutation_of_range(rel.category_perm, classification.categories()))
        throw DimensionMismatch("relabeling does not match classification dimensions");
    std::vector<Category> out(static_cast<std::size_t>(classification.objects()));
    for (Object x = 0; x < classification.objects(); ++x)
        out[static_cast<std::size_t>(rel.object_perm[static_cast<std::size_t>(x)])]
            = rel.category_perm[static_cast<std::size_t>(classification[x])];
    return Classification(std::move(out), classification.categories());
}

Profile apply_relabeling(const Profile& profile, const Relabeling& rel)
{
    if (!is_permutation_of_range(rel.individual_perm, profile.individuals()))
        throw DimensionMismatch("relabeling does not match profile size");
    std::vector<Classification> members(profile.members().begin(), profile.members().end());
    for (Individual i = 0; i < profile.individuals(); ++i)
        members[static_cast<std::size_t>(rel.individual_perm[static_cast<std::size_t>(i)])]
            = apply_relabeling(profile[i], rel);
    return Profile(std::move(members));
}

CafTable apply_relabeling(const CafTable& table, const Relabeling& rel)
{
    const auto& space = table.space();
    const auto& instance = space.instance();
    rel.validate(instance);

    std::vector<std::uint32_t> class_map(space.classification_count());
    for (std::size_t k = 0; k < class_map.size(); ++k)
        class_map[k] = static_cast<std::uint32_t>(space.rank_of(apply_relabeling(space.classification(k), rel)));

    const auto n = static_cast<std::size_t>(instance.n());
    const std::size_t s = space.classification_count();
    std::vector<std::uint32_t> outputs(space.profile_count());
    std::vector<std::uint32_t> moved(n);
    for (std::size_t r = 0; r < space.profile_count(); ++r) {
        for (Individual i = 0; i < instance.n(); ++i)
            moved[static_cast<std::size_t>(rel.individual_perm[static_cast<std::size_t>(i)])]
                = class_map[space.member(r, i)];
        std::size_t target = 0;
        for (auto digit : moved)
            target = target * s + digit;
        outputs[target] = class_map[table.output_rank(r)];
    }
    return CafTable(table.shared_space(), std::move(outputs));
}

std::vector<Relabeling> all_relabelings(const Instance& instance)
{
    const auto objects = all_permutations(instance.m());
    const auto categories = all_permutations(instance.p());
    const auto individuals = all_permutations(instance.n());
    std::vector<Relabeling> out;
    out.reserve(objects.size() * categories.size() * individuals.size());
    for (const auto& ind : individuals)
        for (const auto& obj : objects)
            for (const auto& cat : categories)
                out.push_back(Relabeling{obj, cat, ind});
    return out;
}

std::string subscript(int value)
{
    static constexpr const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
    std::string out;
    for (char d : std::to_string(value))
        out += digits[d - '0'];
    return out;
}

std::string object_name(Object x) { return "x" + subscript(x + 1); }

std::string category_name(Category t) { return "t" + subscript(t + 1); }

std::string individual_name(Individual i) { return std::to_string(i + 1); }

} // namespace cafcheck
