#include "cafcheck/rules.hpp"
#include "cafcheck/search.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace cafcheck;
using namespace cafcheck::testing;

namespace {

Profile make_profile(std::initializer_list<std::vector<Category>> rows, int p)
{
    std::vector<Classification> members;
    for (const auto& r : rows)
        members.emplace_back(r, p);
    return Profile(members);
}

std::vector<Category> assignment(const Classification& c) { return {c.assignment().begin(), c.assignment().end()}; }

void expect_all_surjective(const CafTable& table)
{
    const auto& in = table.instance();
    for (std::size_t r = 0; r < table.size(); ++r) {
        CategoryMask seen = 0;
        for (int x = 0; x < in.m(); ++x)
            seen |= CategoryMask{1} << table.output(r, x);
        EXPECT_EQ(seen, in.all_categories()) << "profile " << r;
    }
}

} // namespace

TEST(Dictator, CopiesIndividual)
{
    Rule rule(RuleConfig::make_dictator(0), Instance(2, 2, 2));
    auto prof = make_profile({{0, 1}, {1, 0}}, 2);
    EXPECT_EQ(rule(prof), Classification({0, 1}, 2));
    Rule second(RuleConfig::make_dictator(1), Instance(2, 2, 2));
    EXPECT_EQ(second(prof), Classification({1, 0}, 2));
}

TEST(Dictator, MaterializedProperties)
{
    auto table = materialize(RuleConfig::make_dictator(0), Instance(2, 2, 2));
    EXPECT_EQ(table.size(), 4u);
    auto d = materialize(RuleConfig::make_dictator(0), Instance(2, 3, 2));
    EXPECT_TRUE(check_unanimity(d).passed());
    EXPECT_TRUE(check_independence(d).passed());
    EXPECT_FALSE(check_expertise(d));
    EXPECT_FALSE(check_minimal_expertise(d));
    EXPECT_FALSE(check_categorical_expertise(d));
    EXPECT_TRUE(naive::dictatorial(d));
}

TEST(Remark1, TriggersAndFill)
{
    Rule rule(RuleConfig::make_remark1(), Instance(2, 3, 2));
    // individual 1 puts x1 in t1, individual 2 puts x2 in t2
    auto out = rule(make_profile({{0, 0, 1}, {0, 1, 0}}, 2));
    EXPECT_EQ(out[0], 0);
    EXPECT_EQ(out[1], 1);
}

TEST(Remark1, UnanimousProfileIsCopied)
{
    Rule rule(RuleConfig::make_remark1(), Instance(3, 3, 3));
    auto out = rule(make_profile({{2, 0, 1}, {2, 0, 1}, {2, 0, 1}}, 3));
    EXPECT_EQ(assignment(out), (std::vector<Category>{2, 0, 1}));
}

TEST(Remark1, MaterializedClaimsHold)
{
    for (auto [n, m, p] : {std::tuple{2, 3, 2}, {2, 5, 2}, {3, 3, 2}, {2, 3, 3}, {2, 4, 4}}) {
        auto table = materialize(RuleConfig::make_remark1(), Instance(n, m, p));
        expect_all_surjective(table);
        EXPECT_TRUE(naive::unanimous(table));
        EXPECT_TRUE(check_unanimity(table).passed());
        EXPECT_TRUE(naive::semi_decisive(table, 0, 0, 0));
        EXPECT_TRUE(naive::semi_decisive(table, 1, 1, 1));
    }
    EXPECT_EQ(materialize(RuleConfig::make_remark1(), Instance(2, 3, 2)).size(), 36u);
}

// With p >= 3 and m > p, some profile has every object fixed by unanimity or
// a trigger while a third category stays empty, so the rule cannot exist.
TEST(Remark1, RejectedWhereNoSuchRuleExists)
{
    Instance inst(2, 4, 3);
    EXPECT_THROW(Rule(RuleConfig::make_remark1(), inst), ConfigError);
    auto prof = make_profile({{0, 2, 0, 1}, {2, 1, 0, 1}}, 3);
    // x1 by individual 1's trigger, x2 by individual 2's, x3 and x4 unanimous.
    std::vector<Category> forced{prof[0][0], prof[1][1], prof[0][2], prof[0][3]};
    EXPECT_EQ(prof[0][2], prof[1][2]);
    EXPECT_EQ(prof[0][3], prof[1][3]);
    EXPECT_THROW(Classification(forced, 3), std::invalid_argument);

    auto axioms = AxiomSet::parse("unanimity,semidecisive");
    axioms.pinned.semi_decisive = ExpertiseWitness{DecisivenessClaim::minimally_semi_decisive(0, 0, 0),
                                                   DecisivenessClaim::minimally_semi_decisive(1, 1, 1)};
    EXPECT_EQ(search(inst, axioms).verdict, Verdict::Unsatisfiable);
}

TEST(Remark1, SharedCategoryIsRejected)
{
    EXPECT_THROW(Rule(RuleConfig::make_remark1(true), Instance(2, 3, 2)), ConfigError);
    auto axioms = AxiomSet::parse("unanimity,semidecisive");
    axioms.pinned.semi_decisive = ExpertiseWitness{DecisivenessClaim::minimally_semi_decisive(0, 0, 0),
                                                   DecisivenessClaim::minimally_semi_decisive(1, 1, 0)};
    for (auto inst : {Instance(2, 3, 2), Instance(2, 5, 2), Instance(2, 3, 3)})
        EXPECT_EQ(search(inst, axioms).verdict, Verdict::Unsatisfiable) << to_string(inst);
}

TEST(Remark2, BothTriggersAndDefault)
{
    Rule rule(RuleConfig::make_remark2(), Instance(2, 4, 3));
    auto both = rule(make_profile({{0, 1, 2, 2}, {1, 1, 0, 2}}, 3));
    EXPECT_EQ(both[0], 0);
    EXPECT_EQ(both[1], 1);
    EXPECT_TRUE(both[2] == 2 || both[3] == 2);

    auto neither = rule(make_profile({{1, 0, 2, 2}, {0, 2, 1, 1}}, 3));
    // first classification in enumeration order with x1 outside t1 and x2 outside t2
    Classification expected({0, 0, 1, 2}, 3);
    for (const auto& c : enumerate_classifications(Instance(2, 4, 3)))
        if (c[0] != 0 && c[1] != 1) {
            expected = c;
            break;
        }
    EXPECT_EQ(neither, expected);
}

TEST(Remark2, MaterializedBiconditionals)
{
    auto table = materialize(RuleConfig::make_remark2(), Instance(2, 4, 3));
    EXPECT_EQ(table.size(), 1296u);
    expect_all_surjective(table);
    EXPECT_TRUE(naive::minimally_decisive(table, 0, 0, 0));
    EXPECT_TRUE(naive::minimally_decisive(table, 1, 1, 1));
    auto w = check_minimal_expertise(table);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->first, DecisivenessClaim::minimally_decisive(0, 0, 0));

    auto shared = materialize(RuleConfig::make_remark2(true), Instance(2, 4, 3));
    expect_all_surjective(shared);
    for (const auto& c : designated_claims(RuleConfig::make_remark2(true)))
        EXPECT_TRUE(check_claim(shared, c).passed());
}

TEST(Remark2, ConfigErrors)
{
    EXPECT_THROW(Rule(RuleConfig::make_remark2(), Instance(2, 3, 2)), ConfigError);
    EXPECT_THROW(Rule(RuleConfig::make_remark2(true), Instance(2, 3, 3)), ConfigError);
    auto bad = RuleConfig::make_remark2();
    bad.default_classification = std::vector<Category>{0, 1, 2, 2};
    EXPECT_THROW(Rule(bad, Instance(2, 4, 3)), ConfigError);
}

TEST(Remark3, FixedBlockReadOff)
{
    auto config = RuleConfig::make_remark3();
    config.fixed_assignment = std::vector<Category>{0, 1};
    Rule rule(config, Instance(2, 4, 2));
    auto out = rule(make_profile({{1, 0, 0, 1}, {1, 0, 1, 0}}, 2));
    EXPECT_EQ(assignment(out), (std::vector<Category>{1, 0, 0, 1}));
}

TEST(Remark3, MaterializedProperties)
{
    auto table = materialize(RuleConfig::make_remark3(), Instance(2, 4, 2));
    EXPECT_EQ(table.size(), 196u);
    expect_all_surjective(table);
    EXPECT_TRUE(check_independence(table).passed());
    EXPECT_TRUE(check_expertise(table).has_value());
    EXPECT_TRUE(check_minimal_expertise(table).has_value());
    EXPECT_TRUE(naive::decisive(table, 0, 0));
    EXPECT_TRUE(naive::decisive(table, 1, 1));
}

TEST(Remark3, ConfigErrors)
{
    EXPECT_THROW(Rule(RuleConfig::make_remark3(), Instance(2, 3, 2)), ConfigError);
    auto config = RuleConfig::make_remark3();
    config.fixed_assignment = std::vector<Category>{0, 0};
    EXPECT_THROW(Rule(config, Instance(2, 4, 2)), ConfigError);
    EXPECT_NO_THROW(Rule(RuleConfig::make_remark3(1), Instance(2, 3, 2)));
}

TEST(Remark5, HandExecutedFill)
{
    Rule rule(RuleConfig::make_remark5(), Instance(2, 3, 2));
    auto together = rule(make_profile({{0, 1, 0}, {1, 0, 1}}, 2));
    EXPECT_EQ(assignment(together), (std::vector<Category>{0, 0, 1}));
    auto apart = rule(make_profile({{0, 0, 1}, {0, 1, 0}}, 2));
    EXPECT_EQ(assignment(apart), (std::vector<Category>{0, 1, 0}));
}

TEST(Remark5, MaterializedExpertise)
{
    auto table = materialize(RuleConfig::make_remark5(), Instance(2, 3, 2));
    expect_all_surjective(table);
    EXPECT_TRUE(check_expertise(table).has_value());
    EXPECT_THROW(Rule(RuleConfig::make_remark5(), Instance(2, 4, 2)), ConfigError);
}

TEST(Rules, PriorityOrdersMustBePermutations)
{
    auto config = RuleConfig::make_remark1();
    config.orders = PriorityOrders{{0, 0, 1}, {0, 1}};
    EXPECT_THROW(Rule(config, Instance(2, 3, 2)), ConfigError);
    config.orders = PriorityOrders{{2, 1, 0}, {1, 0}};
    auto table = materialize(config, Instance(2, 3, 2));
    expect_all_surjective(table);
    EXPECT_TRUE(check_unanimity(table).passed());
}

TEST(Rules, EveryRuleSurjectiveAcrossInstances)
{
    for (auto [n, m, p] : {std::tuple{2, 3, 2}, {3, 3, 2}, {2, 4, 3}, {2, 3, 3}}) {
        Instance inst(n, m, p);
        if (p == 2 || m == p)
            expect_all_surjective(materialize(RuleConfig::make_remark1(), inst));
        expect_all_surjective(materialize(RuleConfig::make_dictator(n - 1), inst));
    }
    expect_all_surjective(materialize(RuleConfig::make_remark5(), Instance(2, 4, 3)));
    expect_all_surjective(materialize(RuleConfig::make_remark3(), Instance(2, 5, 3)));
}

TEST(ParseRule, AcceptedAndRejected)
{
    EXPECT_EQ(parse_rule("dictator:1").dictator, 1);
    EXPECT_EQ(parse_rule("remark3").kind, RuleKind::Remark3);
    EXPECT_THROW(parse_rule("dictator:x"), ConfigError);
    EXPECT_THROW(parse_rule("remark6"), ConfigError);
    EXPECT_THROW(parse_rule("remark1:2"), ConfigError);
    EXPECT_THROW(Rule(parse_rule("dictator:2"), Instance(2, 2, 2)), ConfigError);
}
