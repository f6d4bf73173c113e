#pragma once

// Surjectivity feasibility over per-object candidate sets.
//
// A row of cells (one per object) with candidate-category masks admits a
// surjective completion iff every category can be matched to a distinct cell
// whose mask contains it.

#include "cafcheck/core.hpp"

#include <optional>
#include <span>
#include <vector>

namespace cafcheck::cover {

bool feasible(std::span<const CategoryMask> domains, int p);

/// Values of domains[cell] that extend to some surjective completion.
CategoryMask supported(std::span<const CategoryMask> domains, std::size_t cell, int p);

/// Smallest (by size, then by mask value) set S of categories
/// whose candidate cells number fewer than |S|. Empty when feasible.
std::optional<CategoryMask> hall_violator(std::span<const CategoryMask> domains, int p);

/// Cells whose mask intersects `categories`, ascending.
std::vector<std::size_t> candidates(std::span<const CategoryMask> domains, CategoryMask categories);

} // namespace cafcheck::cover
