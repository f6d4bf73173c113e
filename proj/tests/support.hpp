#pragma once

// Shared helpers for the test suites: table enumeration, seeded random
// tables, and naive reference predicates written straight from the
// definitions (no shared code with the library's checkers).

#include "cafcheck/core.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <vector>

namespace cafcheck::testing {

inline CafTable constant_table(std::shared_ptr<const ProfileSpace> space, std::uint32_t output)
{
    std::vector<std::uint32_t> outputs(space->profile_count(), output);
    return CafTable(std::move(space), std::move(outputs));
}

inline CafTable dictator_table(std::shared_ptr<const ProfileSpace> space, Individual i)
{
    std::vector<std::uint32_t> outputs(space->profile_count());
    for (std::size_t r = 0; r < outputs.size(); ++r)
        outputs[r] = space->member(r, i);
    return CafTable(std::move(space), std::move(outputs));
}

inline CafTable random_table(std::shared_ptr<const ProfileSpace> space, std::mt19937& rng)
{
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(space->classification_count() - 1));
    std::vector<std::uint32_t> outputs(space->profile_count());
    for (auto& o : outputs)
        o = pick(rng);
    return CafTable(std::move(space), std::move(outputs));
}

/// Calls `visit` on every table over the space (S^P of them).
inline void for_each_table(const std::shared_ptr<const ProfileSpace>& space, const std::function<void(const CafTable&)>& visit)
{
    const auto s = static_cast<std::uint32_t>(space->classification_count());
    std::vector<std::uint32_t> outputs(space->profile_count(), 0);
    while (true) {
        visit(CafTable(space, outputs));
        std::size_t k = 0;
        while (k < outputs.size() && outputs[k] == s - 1)
            outputs[k++] = 0;
        if (k == outputs.size())
            return;
        ++outputs[k];
    }
}

namespace naive {

inline bool unanimous(const CafTable& t)
{
    const auto& in = t.instance();
    for (std::size_t r = 0; r < t.size(); ++r) {
        const auto& s = t.space();
        for (int x = 0; x < in.m(); ++x) {
            bool all = true;
            for (int i = 1; i < in.n(); ++i)
                all = all && s.category(r, i, x) == s.category(r, 0, x);
            if (all && t.output(r, x) != s.category(r, 0, x))
                return false;
        }
    }
    return true;
}

inline bool independent(const CafTable& t)
{
    const auto& in = t.instance();
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = a + 1; b < t.size(); ++b) {
            const auto& s = t.space();
            for (int x = 0; x < in.m(); ++x) {
                bool same = true;
                for (int i = 0; i < in.n(); ++i)
                    same = same && s.category(a, i, x) == s.category(b, i, x);
                if (same && t.output(a, x) != t.output(b, x))
                    return false;
            }
        }
    return true;
}

inline bool decisive(const CafTable& t, Individual i, Object x)
{
    for (std::size_t r = 0; r < t.size(); ++r)
        if (t.space().category(r, i, x) != t.output(r, x))
            return false;
    return true;
}

inline bool categorically_decisive(const CafTable& t, Individual i, Category c)
{
    for (std::size_t r = 0; r < t.size(); ++r) {
        for (int x = 0; x < t.instance().m(); ++x)
            if (t.output(r, x) == c && t.space().category(r, i, x) != c)
                return false;
    }
    return true;
}

inline bool minimally_decisive(const CafTable& t, Individual i, Object x, Category c)
{
    for (std::size_t r = 0; r < t.size(); ++r)
        if ((t.space().category(r, i, x) == c) != (t.output(r, x) == c))
            return false;
    return true;
}

inline bool semi_decisive(const CafTable& t, Individual i, Object x, Category c)
{
    for (std::size_t r = 0; r < t.size(); ++r)
        if (t.space().category(r, i, x) == c && t.output(r, x) != c)
            return false;
    return true;
}

inline bool expert(const CafTable& t)
{
    const auto& in = t.instance();
    for (int i = 0; i < in.n(); ++i)
        for (int j = 0; j < in.n(); ++j)
            for (int x = 0; x < in.m(); ++x)
                for (int y = 0; y < in.m(); ++y)
                    if (i != j && x != y && decisive(t, i, x) && decisive(t, j, y))
                        return true;
    return false;
}

inline bool categorically_expert(const CafTable& t, bool distinct = false)
{
    const auto& in = t.instance();
    for (int i = 0; i < in.n(); ++i)
        for (int j = 0; j < in.n(); ++j)
            for (int a = 0; a < in.p(); ++a)
                for (int b = 0; b < in.p(); ++b)
                    if (i != j && (!distinct || a != b) && categorically_decisive(t, i, a)
                        && categorically_decisive(t, j, b))
                        return true;
    return false;
}

template <class Pred>
bool pair_expert(const CafTable& t, Pred pred)
{
    const auto& in = t.instance();
    for (int i = 0; i < in.n(); ++i)
        for (int j = 0; j < in.n(); ++j)
            for (int x = 0; x < in.m(); ++x)
                for (int y = 0; y < in.m(); ++y)
                    for (int a = 0; a < in.p(); ++a)
                        for (int b = 0; b < in.p(); ++b)
                            if (i != j && x != y && pred(t, i, x, a) && pred(t, j, y, b))
                                return true;
    return false;
}

inline bool minimally_expert(const CafTable& t) { return pair_expert(t, minimally_decisive); }
inline bool semi_expert(const CafTable& t) { return pair_expert(t, semi_decisive); }

inline bool dictatorial(const CafTable& t)
{
    for (int i = 0; i < t.instance().n(); ++i) {
        bool all = true;
        for (std::size_t r = 0; r < t.size() && all; ++r)
            all = t.output_rank(r) == t.space().member(r, i);
        if (all)
            return true;
    }
    return false;
}

} // namespace naive

} // namespace cafcheck::testing
