#pragma once

// The expertise-by-context grid: each of minimal expertise, expertise and
// categorical expertise alone, with unanimity, and with independence, decided
// by search on every instance and compared with the expected verdicts.

#include "cafcheck/search.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cafcheck {

enum class TableColumn { Alone, WithUnanimity, WithIndependence };

std::string_view to_string(TableColumn column);

/// The expected verdict for one cell and the result it rests on.
struct Prediction {
    bool satisfiable = false;
    std::string basis;
};

Prediction predict(ExpertiseKind axiom, TableColumn column, const Instance& instance);

AxiomSet axioms_for(ExpertiseKind axiom, TableColumn column);

enum class CellStatus { Agree, Disagree, SkippedCap, Timeout };

std::string_view to_string(CellStatus status);

struct TableCell {
    Instance instance;
    Prediction prediction;
    CellStatus status = CellStatus::SkippedCap;
    std::optional<Verdict> verdict;
    SearchStats stats;
};

struct TableRow {
    ExpertiseKind axiom;
    TableColumn column;
    std::vector<TableCell> cells;
};

struct TableReport {
    std::vector<Instance> instances;
    std::vector<TableRow> rows; // minimal expertise, expertise, categorical expertise; each in column order

    bool any(CellStatus status) const;
};

/// (n, m, p) for 2 <= p <= max_p and p <= m <= max_m, ordered by m then p.
std::vector<Instance> grid_instances(int n, int max_m, int max_p);

TableReport table1_report(const std::vector<Instance>& instances, const SearchOptions& options = {});

} // namespace cafcheck
