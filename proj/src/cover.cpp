#include "cafcheck/cover.hpp"

#include <bit>

namespace cafcheck::cover {

namespace {

// Kuhn's augmenting paths; categories on the left, cells on the right.
bool augment(Category t, std::span<const CategoryMask> domains, std::vector<int>& cell_owner,
             std::vector<bool>& visited)
{
    for (std::size_t cell = 0; cell < domains.size(); ++cell) {
        if (!(domains[cell] >> t & 1u) || visited[cell])
            continue;
        visited[cell] = true;
        if (cell_owner[cell] < 0 || augment(cell_owner[cell], domains, cell_owner, visited)) {
            cell_owner[cell] = t;
            return true;
        }
    }
    return false;
}

} // namespace

bool feasible(std::span<const CategoryMask> domains, int p)
{
    if (static_cast<int>(domains.size()) < p)
        return false;
    for (auto d : domains)
        if (d == 0)
            return false;
    std::vector<int> cell_owner(domains.size(), -1);
    std::vector<bool> visited(domains.size());
    for (Category t = 0; t < p; ++t) {
        std::fill(visited.begin(), visited.end(), false);
        if (!augment(t, domains, cell_owner, visited))
            return false;
    }
    return true;
}

CategoryMask supported(std::span<const CategoryMask> domains, std::size_t cell, int p)
{
    std::vector<CategoryMask> trial(domains.begin(), domains.end());
    CategoryMask out = 0;
    for (CategoryMask rest = domains[cell]; rest != 0; rest &= rest - 1) {
        const CategoryMask bit = rest & (~rest + 1);
        trial[cell] = bit;
        if (feasible(trial, p))
            out |= bit;
    }
    return out;
}

std::optional<CategoryMask> hall_violator(std::span<const CategoryMask> domains, int p)
{
    const CategoryMask full = (CategoryMask{1} << p) - 1;
    std::optional<CategoryMask> best;
    for (CategoryMask s = 1; s <= full; ++s) {
        if (static_cast<int>(candidates(domains, s).size()) >= std::popcount(s))
            continue;
        if (!best || std::popcount(s) < std::popcount(*best))
            best = s;
    }
    return best;
}

std::vector<std::size_t> candidates(std::span<const CategoryMask> domains, CategoryMask categories)
{
    std::vector<std::size_t> out;
    for (std::size_t cell = 0; cell < domains.size(); ++cell)
        if (domains[cell] & categories)
            out.push_back(cell);
    return out;
}

} // namespace cafcheck::cover
