#include "cafcheck/rules.hpp"

#include "cafcheck/cover.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>

namespace cafcheck {

namespace {

constexpr CategoryMask bit(Category t) { return CategoryMask{1} << t; }

bool is_permutation(const std::vector<int>& v, int size)
{
    if (static_cast<int>(v.size()) != size)
        return false;
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < size; ++k)
        if (sorted[static_cast<std::size_t>(k)] != k)
            return false;
    return true;
}

void require(bool ok, const std::string& message)
{
    if (!ok)
        throw ConfigError(message);
}

void validate_pair_claims(const RuleConfig& config, const Instance& instance, const std::string& rule)
{
    for (const auto& claim : config.pairs) {
        require(claim.individual >= 0 && claim.individual < instance.n(), rule + ": claim individual out of range");
        require(claim.object >= 0 && claim.object < instance.m(), rule + ": claim object out of range");
        require(claim.category >= 0 && claim.category < instance.p(), rule + ": claim category out of range");
    }
    require(config.pairs[0].individual != config.pairs[1].individual,
            rule + " requires two distinct individuals");
    require(config.pairs[0].object != config.pairs[1].object, rule + " requires two distinct objects");
}

void validate_decisive(const RuleConfig& config, const Instance& instance, const std::string& rule)
{
    for (std::size_t a = 0; a < config.decisive.size(); ++a) {
        const auto& d = config.decisive[a];
        require(d.individual >= 0 && d.individual < instance.n(), rule + ": decisive individual out of range");
        require(d.object >= 0 && d.object < instance.m(), rule + ": decisive object out of range");
        for (std::size_t b = 0; b < a; ++b) {
            require(config.decisive[b].individual != d.individual, rule + " requires distinct decisive individuals");
            require(config.decisive[b].object != d.object, rule + " requires distinct decisive objects");
        }
    }
}

std::vector<Category> round_robin(int count, int p)
{
    std::vector<Category> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
        out[static_cast<std::size_t>(k)] = k % p;
    return out;
}

CategoryMask covered(const std::vector<Category>& out)
{
    CategoryMask mask = 0;
    for (Category t : out)
        if (t >= 0)
            mask |= bit(t);
    return mask;
}

} // namespace

std::string_view to_string(RuleKind kind)
{
    switch (kind) {
    case RuleKind::Dictator:
        return "dictator";
    case RuleKind::Remark1:
        return "remark1";
    case RuleKind::Remark2:
        return "remark2";
    case RuleKind::Remark3:
        return "remark3";
    case RuleKind::Remark5:
        return "remark5";
    }
    return "unknown";
}

PriorityOrders PriorityOrders::identity(const Instance& instance)
{
    PriorityOrders orders;
    orders.objects.resize(static_cast<std::size_t>(instance.m()));
    orders.categories.resize(static_cast<std::size_t>(instance.p()));
    std::iota(orders.objects.begin(), orders.objects.end(), 0);
    std::iota(orders.categories.begin(), orders.categories.end(), 0);
    return orders;
}

RuleConfig RuleConfig::make_dictator(Individual i)
{
    RuleConfig config;
    config.kind = RuleKind::Dictator;
    config.dictator = i;
    return config;
}

RuleConfig RuleConfig::make_remark1(bool same_category)
{
    RuleConfig config;
    config.kind = RuleKind::Remark1;
    config.pairs = {{{0, 0, 0}, {1, 1, same_category ? 0 : 1}}};
    return config;
}

RuleConfig RuleConfig::make_remark2(bool same_category)
{
    RuleConfig config;
    config.kind = RuleKind::Remark2;
    config.pairs = {{{0, 0, 0}, {1, 1, same_category ? 0 : 1}}};
    return config;
}

RuleConfig RuleConfig::make_remark3(int decisive_count)
{
    RuleConfig config;
    config.kind = RuleKind::Remark3;
    config.decisive.clear();
    for (int k = 0; k < decisive_count; ++k)
        config.decisive.push_back({k, k});
    return config;
}

RuleConfig RuleConfig::make_remark5()
{
    RuleConfig config;
    config.kind = RuleKind::Remark5;
    return config;
}

RuleConfig parse_rule(std::string_view text)
{
    const auto colon = text.find(':');
    const std::string_view name = text.substr(0, colon);
    if (name == "dictator" || name == "remark4") {
        Individual i = 0;
        if (colon != std::string_view::npos) {
            const auto arg = text.substr(colon + 1);
            const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), i);
            if (ec != std::errc{} || ptr != arg.data() + arg.size())
                throw ConfigError("dictator index must be an integer, got '" + std::string(arg) + "'");
        }
        return RuleConfig::make_dictator(i);
    }
    if (colon != std::string_view::npos)
        throw ConfigError("rule '" + std::string(name) + "' takes no argument");
    if (name == "remark1")
        return RuleConfig::make_remark1();
    if (name == "remark2")
        return RuleConfig::make_remark2();
    if (name == "remark3")
        return RuleConfig::make_remark3();
    if (name == "remark5")
        return RuleConfig::make_remark5();
    throw ConfigError("unknown rule '" + std::string(text)
                      + "' (expected dictator:<i>, remark1, remark2, remark3 or remark5)");
}

std::string describe(const RuleConfig& config)
{
    if (config.kind == RuleKind::Dictator)
        return "dictator:" + std::to_string(config.dictator);
    return std::string(to_string(config.kind));
}

std::vector<DecisivenessClaim> designated_claims(const RuleConfig& config)
{
    std::vector<DecisivenessClaim> out;
    switch (config.kind) {
    case RuleKind::Dictator:
        break;
    case RuleKind::Remark1:
        for (const auto& c : config.pairs)
            out.push_back(DecisivenessClaim::minimally_semi_decisive(c.individual, c.object, c.category));
        break;
    case RuleKind::Remark2:
        for (const auto& c : config.pairs)
            out.push_back(DecisivenessClaim::minimally_decisive(c.individual, c.object, c.category));
        break;
    case RuleKind::Remark3:
    case RuleKind::Remark5:
        for (const auto& d : config.decisive)
            out.push_back(DecisivenessClaim::object_decisive(d.individual, d.object));
        break;
    }
    return out;
}

Rule::Rule(RuleConfig config, const Instance& instance)
    : config_(std::move(config)), instance_(instance), orders_(PriorityOrders::identity(instance))
{
    const int n = instance.n();
    const int m = instance.m();
    const int p = instance.p();
    if (config_.orders) {
        require(is_permutation(config_.orders->objects, m), "object priority order must be a permutation of the objects");
        require(is_permutation(config_.orders->categories, p),
                "category priority order must be a permutation of the categories");
        orders_ = *config_.orders;
    }

    switch (config_.kind) {
    case RuleKind::Dictator:
        require(config_.dictator >= 0 && config_.dictator < n,
                "dictator requires an individual index below n = " + std::to_string(n));
        break;
    case RuleKind::Remark1:
        validate_pair_claims(config_, instance, "remark1");
        require(config_.pairs[0].category != config_.pairs[1].category,
                "remark1 requires two distinct categories: with a shared category, unanimity and both triggers "
                "can leave a category empty");
        require(p == 2 || m == p,
                "remark1 requires p = 2 or m = p (got m = " + std::to_string(m) + ", p = " + std::to_string(p)
                    + "): otherwise unanimity and both triggers can leave a third category empty");
        break;
    case RuleKind::Remark2: {
        validate_pair_claims(config_, instance, "remark2");
        require(p > 2, "remark2 requires p > 2");
        if (config_.pairs[0].category == config_.pairs[1].category)
            require(m > p, "remark2 with a shared category requires m > p > 2");
        const auto& [a, b] = config_.pairs;
        if (config_.default_classification) {
            default_ = *config_.default_classification;
            require(static_cast<int>(default_.size()) == m, "remark2 default classification must list m categories");
            try {
                Classification check(default_, p);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("remark2 default classification: ") + e.what());
            }
        } else {
            for (const auto& c : enumerate_classifications(instance)) {
                if (c[a.object] != a.category && c[b.object] != b.category) {
                    default_.assign(c.assignment().begin(), c.assignment().end());
                    break;
                }
            }
            require(!default_.empty(), "remark2: no classification keeps both claimed objects out of their categories");
        }
        require(default_[static_cast<std::size_t>(a.object)] != a.category
                    && default_[static_cast<std::size_t>(b.object)] != b.category,
                "remark2 default classification must place neither claimed object in its claimed category");
        break;
    }
    case RuleKind::Remark3: {
        validate_decisive(config_, instance, "remark3");
        const int d = static_cast<int>(config_.decisive.size());
        require(d >= 1, "remark3 requires at least one decisive individual");
        require(m >= p + d, "remark3 requires m >= p + " + std::to_string(d) + " (got m = " + std::to_string(m)
                                + ", p = " + std::to_string(p) + ")");
        fixed_ = config_.fixed_assignment ? *config_.fixed_assignment : round_robin(m - d, p);
        require(static_cast<int>(fixed_.size()) == m - d,
                "remark3 fixed assignment must list one category per non-decisive object");
        CategoryMask mask = 0;
        for (Category t : fixed_) {
            require(t >= 0 && t < p, "remark3 fixed assignment category out of range");
            mask |= bit(t);
        }
        require(mask == instance.all_categories(), "remark3 fixed assignment must cover all p categories");
        break;
    }
    case RuleKind::Remark5:
        validate_decisive(config_, instance, "remark5");
        require(config_.decisive.size() == 2, "remark5 requires exactly two decisive individuals");
        require(m == p + 1, "remark5 requires m = p + 1 (got m = " + std::to_string(m) + ", p = " + std::to_string(p)
                                + ")");
        break;
    }
}

Classification Rule::operator()(const Profile& profile) const
{
    if (profile.individuals() != instance_.n() || profile[0].objects() != instance_.m()
        || profile[0].categories() != instance_.p())
        throw DimensionMismatch("profile does not match rule instance " + to_string(instance_));
    switch (config_.kind) {
    case RuleKind::Dictator:
        return dictator(profile);
    case RuleKind::Remark1:
        return remark1(profile);
    case RuleKind::Remark2:
        return remark2(profile);
    case RuleKind::Remark3:
        return remark3(profile);
    case RuleKind::Remark5:
        return remark5(profile);
    }
    throw std::logic_error("unhandled rule kind");
}

Classification Rule::dictator(const Profile& profile) const { return profile[config_.dictator]; }

Classification Rule::remark1(const Profile& profile) const
{
    const int m = instance_.m();
    const int p = instance_.p();
    std::vector<Category> out(static_cast<std::size_t>(m), -1);

    for (const auto& claim : config_.pairs)
        if (profile[claim.individual][claim.object] == claim.category)
            out[static_cast<std::size_t>(claim.object)] = claim.category;

    for (Object x = 0; x < m; ++x) {
        const Category t = profile[0][x];
        bool unanimous = true;
        for (Individual i = 1; i < instance_.n() && unanimous; ++i)
            unanimous = profile[i][x] == t;
        if (!unanimous)
            continue;
        auto& slot = out[static_cast<std::size_t>(x)];
        if (slot >= 0 && slot != t)
            throw std::logic_error("remark1: unanimous category conflicts with a semi-decisive assignment");
        slot = t;
    }

    CategoryMask have = covered(out);
    for (Object x : orders_.objects) {
        if (have == instance_.all_categories())
            break;
        if (out[static_cast<std::size_t>(x)] >= 0)
            continue;
        for (Category t : orders_.categories)
            if (!(have & bit(t))) {
                out[static_cast<std::size_t>(x)] = t;
                have |= bit(t);
                break;
            }
    }
    if (have != instance_.all_categories())
        throw std::logic_error("remark1: ran out of objects before every category was filled");

    int next = 0;
    for (Object x : orders_.objects) {
        auto& slot = out[static_cast<std::size_t>(x)];
        if (slot < 0)
            slot = orders_.categories[static_cast<std::size_t>(next++ % p)];
    }
    return Classification(std::move(out), p);
}

Classification Rule::remark2(const Profile& profile) const
{
    const int m = instance_.m();
    const int p = instance_.p();
    const auto& [a, b] = config_.pairs;
    const bool first = profile[a.individual][a.object] == a.category;
    const bool second = profile[b.individual][b.object] == b.category;
    if (!first && !second)
        return Classification(default_, p);

    std::vector<CategoryMask> domains(static_cast<std::size_t>(m), instance_.all_categories());
    std::vector<Category> out(static_cast<std::size_t>(m), -1);
    auto fix = [&](Object x, Category t) {
        out[static_cast<std::size_t>(x)] = t;
        domains[static_cast<std::size_t>(x)] = bit(t);
    };
    if (first)
        fix(a.object, a.category);
    else
        domains[static_cast<std::size_t>(a.object)] &= ~bit(a.category);
    if (second)
        fix(b.object, b.category);
    else
        domains[static_cast<std::size_t>(b.object)] &= ~bit(b.category);

    if (!cover::feasible(domains, p))
        throw std::logic_error("remark2: no surjective completion for a valid configuration");

    for (Category t : orders_.categories) {
        if (covered(out) & bit(t))
            continue;
        bool placed = false;
        for (Object x : orders_.objects) {
            const auto slot = static_cast<std::size_t>(x);
            if (out[slot] >= 0 || !(domains[slot] & bit(t)))
                continue;
            auto trial = domains;
            trial[slot] = bit(t);
            if (cover::feasible(trial, p)) {
                fix(x, t);
                placed = true;
                break;
            }
        }
        if (!placed)
            throw std::logic_error("remark2: fill failure");
    }

    std::size_t next = 0;
    for (Object x : orders_.objects) {
        const auto slot = static_cast<std::size_t>(x);
        if (out[slot] >= 0)
            continue;
        for (std::size_t step = 0; step < orders_.categories.size(); ++step) {
            const Category t = orders_.categories[(next + step) % orders_.categories.size()];
            if (domains[slot] & bit(t)) {
                out[slot] = t;
                next = (next + step + 1) % orders_.categories.size();
                break;
            }
        }
    }
    return Classification(std::move(out), p);
}

Classification Rule::remark3(const Profile& profile) const
{
    const int m = instance_.m();
    std::vector<Category> out(static_cast<std::size_t>(m), -1);
    for (const auto& d : config_.decisive)
        out[static_cast<std::size_t>(d.object)] = profile[d.individual][d.object];
    std::size_t k = 0;
    for (Object x = 0; x < m; ++x)
        if (out[static_cast<std::size_t>(x)] < 0)
            out[static_cast<std::size_t>(x)] = fixed_[k++];
    return Classification(std::move(out), instance_.p());
}

Classification Rule::remark5(const Profile& profile) const
{
    const int m = instance_.m();
    std::vector<Category> out(static_cast<std::size_t>(m), -1);
    for (const auto& d : config_.decisive)
        out[static_cast<std::size_t>(d.object)] = profile[d.individual][d.object];

    CategoryMask have = covered(out);
    for (Object x : orders_.objects) {
        auto& slot = out[static_cast<std::size_t>(x)];
        if (slot >= 0)
            continue;
        if (have == instance_.all_categories()) {
            slot = orders_.categories.front();
            continue;
        }
        for (Category t : orders_.categories)
            if (!(have & bit(t))) {
                slot = t;
                have |= bit(t);
                break;
            }
    }
    return Classification(std::move(out), instance_.p());
}

CafTable materialize(const Rule& rule, std::shared_ptr<const ProfileSpace> space)
{
    if (space->instance() != rule.instance())
        throw ConfigError("rule instance " + to_string(rule.instance()) + " does not match table instance "
                          + to_string(space->instance()));
    std::vector<std::uint32_t> outputs(space->profile_count());
    for (std::size_t r = 0; r < outputs.size(); ++r)
        outputs[r] = static_cast<std::uint32_t>(space->rank_of(rule(space->profile(r))));
    return CafTable(std::move(space), std::move(outputs));
}

CafTable materialize(const RuleConfig& config, const Instance& instance, const Limits& limits)
{
    const Rule rule(config, instance);
    return materialize(rule, ProfileSpace::make(instance, limits));
}

} // namespace cafcheck
