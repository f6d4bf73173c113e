#pragma once

// Constructive aggregation rules and their materialization into tables.

#include "cafcheck/axioms.hpp"
#include "cafcheck/core.hpp"

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cafcheck {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class RuleKind {
    Dictator, // copy one individual's classification
    Remark1,  // unanimous, two minimally semi-decisive individuals
    Remark2,  // two minimally decisive individuals, default classification otherwise
    Remark3,  // independent and expert: fixed block plus decisive objects
    Remark5,  // expert when m = p + 1
};

std::string_view to_string(RuleKind kind);

/// Tie-break orders; position 0 is the most preferred.
struct PriorityOrders {
    std::vector<Object> objects;
    std::vector<Category> categories;

    static PriorityOrders identity(const Instance& instance);
};

/// Individual `individual` holds `object` in `category`.
struct PairClaim {
    Individual individual = 0;
    Object object = 0;
    Category category = 0;

    friend bool operator==(const PairClaim&, const PairClaim&) = default;
};

struct DecisivePair {
    Individual individual = 0;
    Object object = 0;

    friend bool operator==(const DecisivePair&, const DecisivePair&) = default;
};

struct RuleConfig {
    RuleKind kind = RuleKind::Dictator;
    Individual dictator = 0;

    /// remark1 (semi-decisive) and remark2 (minimally decisive) claims.
    std::array<PairClaim, 2> pairs{{{0, 0, 0}, {1, 1, 1}}};

    /// remark2 output when neither claim triggers. Defaults to the first
    /// classification in enumeration order that keeps each claimed object out
    /// of its claimed category.
    std::optional<std::vector<Category>> default_classification;

    /// remark3 and remark5 decisive individuals and their objects.
    std::vector<DecisivePair> decisive{{0, 0}, {1, 1}};

    /// remark3 categories for the non-decisive objects in ascending object
    /// order; must cover every category. Defaults to round-robin t1, t2, ...
    std::optional<std::vector<Category>> fixed_assignment;

    std::optional<PriorityOrders> orders;

    static RuleConfig make_dictator(Individual i);
    static RuleConfig make_remark1(bool same_category = false);
    static RuleConfig make_remark2(bool same_category = false);
    static RuleConfig make_remark3(int decisive_count = 2);
    static RuleConfig make_remark5();
};

/// Parses "dictator:<i>", "remark1", "remark2", "remark3", "remark5".
/// Individuals are 0-based. Throws ConfigError on anything else.
RuleConfig parse_rule(std::string_view text);

std::string describe(const RuleConfig& config);

/// The decisiveness claims the rule is built to satisfy.
std::vector<DecisivenessClaim> designated_claims(const RuleConfig& config);

/// A rule bound to an instance. Construction validates the configuration and
/// throws ConfigError naming the violated requirement.
class Rule {
public:
    Rule(RuleConfig config, const Instance& instance);

    const RuleConfig& config() const { return config_; }
    const Instance& instance() const { return instance_; }

    Classification operator()(const Profile& profile) const;

private:
    Classification dictator(const Profile& profile) const;
    Classification remark1(const Profile& profile) const;
    Classification remark2(const Profile& profile) const;
    Classification remark3(const Profile& profile) const;
    Classification remark5(const Profile& profile) const;

    RuleConfig config_;
    Instance instance_;
    PriorityOrders orders_;
    std::vector<Category> default_;
    std::vector<Category> fixed_;
};

CafTable materialize(const Rule& rule, std::shared_ptr<const ProfileSpace> space);
CafTable materialize(const RuleConfig& config, const Instance& instance, const Limits& limits = {});

} // namespace cafcheck
