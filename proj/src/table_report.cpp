#include "cafcheck/table_report.hpp"

#include <algorithm>

namespace cafcheck {

namespace {

constexpr ExpertiseKind row_order[] = {ExpertiseKind::MinimalExpertise, ExpertiseKind::Expertise,
                                       ExpertiseKind::CategoricalExpertise};
constexpr TableColumn column_order[] = {TableColumn::Alone, TableColumn::WithUnanimity,
                                        TableColumn::WithIndependence};

bool within_budget(const Instance& instance, const Limits& limits)
{
    try {
        const std::uint64_t profiles = count_profiles(instance);
        return profiles <= limits.cell_budget / static_cast<std::uint64_t>(instance.m());
    } catch (const std::overflow_error&) {
        return false;
    }
}

} // namespace

std::string_view to_string(TableColumn column)
{
    switch (column) {
    case TableColumn::Alone:
        return "alone";
    case TableColumn::WithUnanimity:
        return "+unanimity";
    case TableColumn::WithIndependence:
        return "+independence";
    }
    return "unknown";
}

std::string_view to_string(CellStatus status)
{
    switch (status) {
    case CellStatus::Agree:
        return "agree";
    case CellStatus::Disagree:
        return "disagree";
    case CellStatus::SkippedCap:
        return "skipped: cap";
    case CellStatus::Timeout:
        return "timeout";
    }
    return "unknown";
}

Prediction predict(ExpertiseKind axiom, TableColumn column, const Instance& instance)
{
    const int m = instance.m();
    const int p = instance.p();
    if (axiom == ExpertiseKind::CategoricalExpertise)
        return {false, "prop-5"};
    if (column == TableColumn::WithUnanimity)
        return {false, "theorem-1"};
    if (column == TableColumn::WithIndependence)
        return m <= p + 1 ? Prediction{false, "prop-3"} : Prediction{true, "remark-3"};
    if (axiom == ExpertiseKind::MinimalExpertise) {
        if (m == 2 && p == 2)
            return {false, "prop-2"};
        if (p > 2)
            return {true, "remark-2"};
        // p = 2 < m: expertise implies minimal expertise.
        return {true, m == p + 1 ? "remark-5" : "remark-3"};
    }
    if (m == p)
        return {false, "prop-4"};
    return {true, m == p + 1 ? "remark-5" : "remark-3"};
}

AxiomSet axioms_for(ExpertiseKind axiom, TableColumn column)
{
    AxiomSet axioms;
    axioms.set(axiom);
    axioms.unanimity = column == TableColumn::WithUnanimity;
    axioms.independence = column == TableColumn::WithIndependence;
    return axioms;
}

bool TableReport::any(CellStatus status) const
{
    return std::ranges::any_of(rows, [&](const TableRow& row) {
        return std::ranges::any_of(row.cells, [&](const TableCell& cell) { return cell.status == status; });
    });
}

std::vector<Instance> grid_instances(int n, int max_m, int max_p)
{
    std::vector<Instance> out;
    for (int m = 2; m <= max_m; ++m)
        for (int p = 2; p <= std::min(m, max_p); ++p)
            out.emplace_back(n, m, p);
    return out;
}

TableReport table1_report(const std::vector<Instance>& instances, const SearchOptions& options)
{
    TableReport report{instances, {}};
    for (auto axiom : row_order)
        for (auto column : column_order) {
            TableRow row{axiom, column, {}};
            for (const auto& instance : instances) {
                TableCell cell{instance, predict(axiom, column, instance), CellStatus::SkippedCap, std::nullopt, {}};
                if (within_budget(instance, options.limits)) {
                    try {
                        const auto outcome = search(instance, axioms_for(axiom, column), options);
                        cell.verdict = outcome.verdict;
                        cell.stats = outcome.stats;
                        if (outcome.verdict == Verdict::Timeout)
                            cell.status = CellStatus::Timeout;
                        else
                            cell.status = (outcome.verdict == Verdict::Satisfiable) == cell.prediction.satisfiable
                                              ? CellStatus::Agree
                                              : CellStatus::Disagree;
                    } catch (const InstanceTooLarge&) {
                        cell.status = CellStatus::SkippedCap;
                    }
                }
                row.cells.push_back(std::move(cell));
            }
            report.rows.push_back(std::move(row));
        }
    return report;
}

} // namespace cafcheck
