#include "cafcheck/check.hpp"

#include <algorithm>

namespace cafcheck {

bool CheckReport::passed() const
{
    return surjective && std::ranges::all_of(axioms, [](const AxiomCheck& a) { return a.passed; })
           && std::ranges::all_of(claims, [](const ClaimCheck& c) { return c.result.passed(); });
}

CheckReport check_table(const CafTable& table, const AxiomSet& axioms, const std::vector<DecisivenessClaim>& claims,
                        std::string source)
{
    CheckReport report{table.instance(), std::move(source), {}, {}, true};

    const CategoryMask all = table.instance().all_categories();
    for (std::size_t r = 0; r < table.size() && report.surjective; ++r) {
        CategoryMask seen = 0;
        for (auto t : table.output(r).assignment())
            seen |= CategoryMask{1} << t;
        report.surjective = seen == all;
    }

    if (axioms.unanimity) {
        auto result = check_unanimity(table);
        report.axioms.push_back({"unanimity", result.passed(), std::move(result.violation), std::nullopt});
    }
    if (axioms.independence) {
        auto result = check_independence(table);
        report.axioms.push_back({"independence", result.passed(), std::move(result.violation), std::nullopt});
    }
    for (auto kind : axioms.existential()) {
        auto witness = check_expertise_kind(table, kind, axioms.categorical_mode);
        report.axioms.push_back({std::string(to_string(kind)), witness.has_value(), std::nullopt, witness});
    }
    for (const auto& claim : claims)
        report.claims.push_back({claim, check_claim(table, claim)});
    return report;
}

} // namespace cafcheck
