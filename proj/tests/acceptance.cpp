// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "cafcheck/cli.hpp"
#include "cafcheck/replay.hpp"
#include "cafcheck/rules.hpp"
#include "cafcheck/search.hpp"
#include "cafcheck/table_report.hpp"

#include "support.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace cafcheck;
using namespace cafcheck::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    std::vector<std::string> failures;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            failures.push_back(what);
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Expected verdicts for the five grid instances, in grid order
// (2,2) (3,2) (3,3) (4,2) (4,3). true = a CAF exists.
struct Expected {
    ExpertiseKind axiom;
    TableColumn column;
    std::array<bool, 5> sat;
};

Outcome grid_reproduction()
{
    using enum ExpertiseKind;
    using enum TableColumn;
    const std::vector<Expected> expected{
        {MinimalExpertise, Alone, {false, true, true, true, true}},
        {MinimalExpertise, WithUnanimity, {false, false, false, false, false}},
        {MinimalExpertise, WithIndependence, {false, false, false, true, false}},
        {Expertise, Alone, {false, true, false, true, true}},
        {Expertise, WithUnanimity, {false, false, false, false, false}},
        {Expertise, WithIndependence, {false, false, false, true, false}},
        {CategoricalExpertise, Alone, {false, false, false, false, false}},
        {CategoricalExpertise, WithUnanimity, {false, false, false, false, false}},
        {CategoricalExpertise, WithIndependence, {false, false, false, false, false}},
    };

    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    const auto instances = grid_instances(2, 4, 3);
    auto report = table1_report(instances);
    const double elapsed = seconds_since(start);

    int cells = 0;
    int matched = 0;
    for (const auto& e : expected) {
        const TableRow* row = nullptr;
        for (const auto& r : report.rows)
            if (r.axiom == e.axiom && r.column == e.column)
                row = &r;
        out.require(row != nullptr, "missing row");
        if (!row)
            continue;
        for (std::size_t k = 0; k < instances.size(); ++k) {
            ++cells;
            const auto& cell = row->cells[k];
            const bool hit = cell.verdict.has_value() && *cell.verdict != Verdict::Timeout
                             && (*cell.verdict == Verdict::Satisfiable) == e.sat[k];
            matched += hit;
            out.require(hit, std::string(to_string(e.axiom)) + " " + std::string(to_string(e.column)) + " at "
                                 + to_string(cell.instance));
            out.require(cell.status == CellStatus::Agree, "report flags disagreement at " + to_string(cell.instance));
        }
    }
    out.require(elapsed < 300.0, "grid took longer than five minutes");
    std::ostringstream d;
    d << matched << "/" << cells << " cells match, " << elapsed << " s";
    out.detail = d.str();
    return out;
}

Outcome proof_replays()
{
    struct Case {
        ProofId proof;
        int m;
        int p;
        bool same;
    };
    const std::vector<Case> cases{
        {ProofId::Theorem1, 2, 2, false}, {ProofId::Theorem1, 3, 2, false}, {ProofId::Prop2, 2, 2, false},
        {ProofId::Prop3, 3, 2, false},    {ProofId::Prop3, 3, 3, false},    {ProofId::Prop3, 4, 3, false},
        {ProofId::Prop3, 3, 2, true},     {ProofId::Prop3, 4, 3, true},     {ProofId::Prop4, 2, 2, false},
        {ProofId::Prop4, 3, 3, false},    {ProofId::Prop5, 2, 2, false},    {ProofId::Prop5, 3, 2, false},
        {ProofId::Prop5, 2, 2, true},     {ProofId::Prop5, 3, 2, true},
    };
    Outcome out;
    int closed = 0;
    for (const auto& c : cases) {
        const std::string label = std::string(to_string(c.proof)) + " (" + std::to_string(c.m) + ","
                                  + std::to_string(c.p) + ")" + (c.same ? " same-category" : "");
        try {
            ProofBinding b;
            b.same_category = c.same;
            auto trace = replay_theorem(c.proof, Instance(2, c.m, c.p), b);
            verify_trace(trace);
            const bool concluded = !conclusions(trace).empty();

            std::vector<std::string> args{"cafcheck", "replay",          "--proof", std::string(to_string(c.proof)),
                                          "--n",      "2",               "--m",     std::to_string(c.m),
                                          "--p",      std::to_string(c.p)};
            if (c.same)
                args.push_back("--same-category");
            std::ostringstream sink, err;
            const int code = cli::run(args, sink, err);
            out.require(concluded && code == 0, label + " exit " + std::to_string(code));
            closed += concluded && code == 0;
        } catch (const std::exception& e) {
            out.require(false, label + ": " + e.what());
        }
    }
    out.detail = std::to_string(closed) + "/" + std::to_string(cases.size()) + " replays close";
    return out;
}

Outcome oracle_equivalence()
{
    Outcome out;
    int compared = 0;
    int agreed = 0;
    const auto compare = [&](const Instance& inst, const AxiomSet& axioms) {
        auto fast = search(inst, axioms);
        auto slow = brute_force_search(inst, axioms);
        ++compared;
        const bool same = fast.verdict == slow.verdict && fast.verdict != Verdict::Timeout;
        agreed += same;
        out.require(same, to_string(inst) + " " + axioms.names());
        if (fast.table)
            out.require(satisfies(*fast.table, axioms, fast.witnesses), "witness recheck " + axioms.names());
        return slow;
    };
    for (unsigned bits = 1; bits < (1u << axiom_flag_count); ++bits) {
        auto slow = compare(Instance(2, 2, 2), AxiomSet::from_bits(bits));
        out.require(slow.stats.tables_enumerated == 16, "expected 16 tables at (2,2,2)");
    }
    for (unsigned bits = 1; bits < (1u << axiom_flag_count); ++bits) {
        auto axioms = AxiomSet::from_bits(bits);
        if (axioms.independence)
            compare(Instance(2, 3, 2), axioms);
    }
    out.detail = std::to_string(agreed) + "/" + std::to_string(compared) + " axiom sets agree";
    return out;
}

bool every_output_surjective(const CafTable& table)
{
    for (std::size_t r = 0; r < table.size(); ++r) {
        CategoryMask seen = 0;
        for (int x = 0; x < table.instance().m(); ++x)
            seen |= CategoryMask{1} << table.output(r, x);
        if (seen != table.instance().all_categories())
            return false;
    }
    return true;
}

Outcome rule_certification()
{
    Outcome out;
    int certified = 0;
    const auto certify = [&](const std::string& label, const RuleConfig& config, const Instance& inst,
                             const std::function<bool(const CafTable&)>& claimed) {
        try {
            auto table = materialize(config, inst);
            bool ok = every_output_surjective(table) && claimed(table);
            for (const auto& claim : designated_claims(config))
                ok = ok && check_claim(table, claim).passed();
            out.require(ok, label);
            certified += ok;
        } catch (const std::exception& e) {
            out.require(false, label + ": " + e.what());
        }
    };
    certify("remark1", RuleConfig::make_remark1(), Instance(2, 3, 2), [](const CafTable& t) {
        return check_unanimity(t).passed() && naive::semi_decisive(t, 0, 0, 0) && naive::semi_decisive(t, 1, 1, 1);
    });
    certify("remark2", RuleConfig::make_remark2(), Instance(2, 4, 3), [](const CafTable& t) {
        return check_minimal_expertise(t).has_value() && naive::minimally_expert(t);
    });
    certify("remark3", RuleConfig::make_remark3(), Instance(2, 4, 2), [](const CafTable& t) {
        return check_independence(t).passed() && check_expertise(t).has_value() && naive::independent(t)
               && naive::expert(t);
    });
    certify("remark5", RuleConfig::make_remark5(), Instance(2, 3, 2),
            [](const CafTable& t) { return check_expertise(t).has_value() && naive::expert(t); });
    certify("dictator", RuleConfig::make_dictator(0), Instance(2, 3, 2), [](const CafTable& t) {
        return check_unanimity(t).passed() && check_independence(t).passed() && !check_expertise(t)
               && !check_minimal_expertise(t) && !check_categorical_expertise(t) && !naive::expert(t);
    });
    out.detail = std::to_string(certified) + "/5 rules certified";
    return out;
}

Outcome dictatorship_recovery()
{
    Outcome out;
    auto result =
        brute_force_search(Instance(2, 3, 2), AxiomSet::parse("unanimity,independence"), {.keep_models = 16});
    const auto count = result.model_count.value_or(0);
    out.require(count == 2, "model count " + std::to_string(count));
    out.require(result.models.size() == count, "kept models");
    for (const auto& t : result.models)
        out.require(naive::dictatorial(t) && naive::unanimous(t) && naive::independent(t), "non-dictatorial model");
    out.detail = std::to_string(count) + " satisfying tables among " + std::to_string(result.stats.tables_enumerated)
                 + " enumerated, all dictatorial";
    return out;
}

Outcome property_suites()
{
    Outcome out;
    int checks = 0;

    // Symmetry reduction on/off.
    for (auto inst : {Instance(2, 2, 2), Instance(2, 3, 2)})
        for (unsigned bits = 1; bits < (1u << axiom_flag_count); ++bits) {
            auto axioms = AxiomSet::from_bits(bits);
            ++checks;
            out.require(search(inst, axioms, {.symmetry_reduction = true}).verdict
                            == search(inst, axioms, {.symmetry_reduction = false}).verdict,
                        "symmetry " + to_string(inst) + " " + axioms.names());
        }

    // Relabeling invariance of verdicts with pinned witnesses, reduction off.
    {
        Instance inst(2, 3, 2);
        const auto rels = all_relabelings(inst);
        const std::vector<std::pair<std::string, ExpertiseWitness>> pins{
            {"expertise", {DecisivenessClaim::object_decisive(0, 0), DecisivenessClaim::object_decisive(1, 2)}},
            {"minimal-expertise",
             {DecisivenessClaim::minimally_decisive(0, 1, 0), DecisivenessClaim::minimally_decisive(1, 2, 1)}},
            {"unanimity,semidecisive",
             {DecisivenessClaim::minimally_semi_decisive(1, 0, 1),
              DecisivenessClaim::minimally_semi_decisive(0, 2, 1)}},
            {"categorical-expertise",
             {DecisivenessClaim::categorically_decisive(0, 0), DecisivenessClaim::categorically_decisive(1, 1)}},
        };
        for (const auto& [names, witness] : pins) {
            auto axioms = AxiomSet::parse(names);
            axioms.pinned.get(axioms.existential().front()) = witness;
            const auto reference = search(inst, axioms, {.symmetry_reduction = false}).verdict;
            for (const auto& rel : rels) {
                auto moved = axioms;
                moved.pinned.get(axioms.existential().front()) = apply_relabeling(witness, rel);
                ++checks;
                out.require(search(inst, moved, {.symmetry_reduction = false}).verdict == reference,
                            "relabeling " + names);
            }
        }
    }

    // Decisiveness forms and expertise implication, exhaustively at (2,2,2).
    auto space = ProfileSpace::make(Instance(2, 2, 2));
    for_each_table(space, [&](const CafTable& t) {
        for (int i = 0; i < 2; ++i)
            for (int x = 0; x < 2; ++x) {
                ++checks;
                const bool both = is_minimally_decisive(t, i, x, 0).passed() && is_minimally_decisive(t, i, x, 1).passed();
                out.require(is_decisive_over_object(t, i, x).passed() == both, "decisiveness biconditional");
            }
        ++checks;
        out.require(!check_expertise(t) || check_minimal_expertise(t), "expertise implies minimal expertise");
    });

    // Verdict-level implication and monotonicity across the grid.
    for (const auto& inst : grid_instances(2, 4, 3)) {
        std::vector<Verdict> v(1u << axiom_flag_count, Verdict::Satisfiable);
        for (unsigned bits = 1; bits < v.size(); ++bits)
            v[bits] = search(inst, AxiomSet::from_bits(bits)).verdict;
        for (unsigned a = 1; a < v.size(); ++a) {
            out.require(v[a] != Verdict::Timeout, "timeout at " + to_string(inst));
            auto set = AxiomSet::from_bits(a);
            if (set.expertise && v[a] == Verdict::Satisfiable) {
                auto weaker = set;
                weaker.expertise = false;
                weaker.minimal_expertise = true;
                ++checks;
                out.require(v[weaker.bits()] == Verdict::Satisfiable, "E => ME at " + to_string(inst));
            }
            for (unsigned b = a + 1; b < v.size(); ++b)
                if ((a & b) == a) {
                    ++checks;
                    out.require(v[a] != Verdict::Unsatisfiable || v[b] == Verdict::Unsatisfiable,
                                "monotonicity at " + to_string(inst) + " " + set.names());
                }
        }
    }
    out.detail = std::to_string(checks) + " property checks";
    return out;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 grid reproduction", grid_reproduction},
        {"2 proof replays", proof_replays},
        {"3 oracle equivalence", oracle_equivalence},
        {"4 rule certification", rule_certification},
        {"5 dictatorship recovery", dictatorship_recovery},
        {"6 property suites", property_suites},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.failures.push_back(e.what());
        }
        std::printf("%s  criterion %s: %s\n", o.ok ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        for (std::size_t k = 0; k < o.failures.size() && k < 10; ++k)
            std::printf("      %s\n", o.failures[k].c_str());
        failed += !o.ok;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
