#pragma once

// Instances, classifications, profiles and aggregation tables.
//
// Objects, categories and individuals are 0-based indices internally.
// Classifications are enumerated in lexicographic order of their assignment
// sequences; profiles are enumerated row-major with individual 0 outermost.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cafcheck {

using Individual = int;
using Object = int;
using Category = int;

/// Category sets are bitmasks; bit t is category t.
using CategoryMask = std::uint32_t;

inline constexpr int max_categories = 16;
inline constexpr int max_objects = 16;

class InvalidInstance : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InstanceTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Enumeration budget. A table over an instance has profile_count * m cells.
struct Limits {
    std::uint64_t cell_budget = 10'000'000;
};

class Instance {
public:
    /// Throws InvalidInstance unless n >= 2 and m >= p >= 2.
    Instance(int n, int m, int p);

    int n() const { return n_; }
    int m() const { return m_; }
    int p() const { return p_; }

    CategoryMask all_categories() const { return (CategoryMask{1} << p_) - 1; }

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    int n_;
    int m_;
    int p_;
};

std::string to_string(const Instance& instance);

/// Number of surjections from m objects onto p categories; 0 when m < p.
/// Throws std::overflow_error if the count does not fit in 64 bits.
std::uint64_t count_surjections(int m, int p);

/// count_surjections(m, p)^n, throwing std::overflow_error on overflow.
std::uint64_t count_profiles(const Instance& instance);

/// A surjective assignment of objects to categories.
class Classification {
public:
    /// Throws std::invalid_argument if an entry is out of range or some
    /// category is left empty.
    Classification(std::vector<Category> assignment, int categories);

    int objects() const { return static_cast<int>(assignment_.size()); }
    int categories() const { return categories_; }
    Category operator[](Object x) const { return assignment_[static_cast<std::size_t>(x)]; }
    std::span<const Category> assignment() const { return assignment_; }

    friend bool operator==(const Classification&, const Classification&) = default;
    friend auto operator<=>(const Classification& a, const Classification& b)
    {
        return a.assignment_ <=> b.assignment_;
    }

private:
    std::vector<Category> assignment_;
    int categories_;
};

std::vector<Classification> enumerate_classifications(const Instance& instance, const Limits& limits = {});

/// Position of the classification in the lexicographic enumeration.
std::uint64_t rank(const Classification& classification);

/// Inverse of rank. Throws std::out_of_range when r >= count_surjections(m, p).
Classification unrank(const Instance& instance, std::uint64_t r);

/// Objects placed in category t, ascending.
std::vector<Object> inverse_image(const Classification& classification, Category t);

/// One classification per individual.
class Profile {
public:
    /// Throws DimensionMismatch if members disagree on m or p.
    explicit Profile(std::vector<Classification> members);

    int individuals() const { return static_cast<int>(members_.size()); }
    const Classification& operator[](Individual i) const { return members_[static_cast<std::size_t>(i)]; }
    std::span<const Classification> members() const { return members_; }

    friend bool operator==(const Profile&, const Profile&) = default;

private:
    std::vector<Classification> members_;
};

std::vector<Profile> enumerate_profiles(const Instance& instance, const Limits& limits = {});

/// Indexed view of every classification and profile of an instance.
/// Immutable once built; shared between tables over the same instance.
class ProfileSpace {
public:
    /// Throws InstanceTooLarge when profile_count * m exceeds the cell budget.
    static std::shared_ptr<const ProfileSpace> make(const Instance& instance, const Limits& limits = {});

    const Instance& instance() const { return instance_; }
    std::size_t classification_count() const { return classifications_.size(); }
    std::size_t profile_count() const { return profile_count_; }

    const Classification& classification(std::size_t r) const { return classifications_[r]; }
    std::span<const Classification> classifications() const { return classifications_; }

    /// Rank of individual i's classification inside profile `profile`.
    std::uint32_t member(std::size_t profile, Individual i) const
    {
        return members_[profile * static_cast<std::size_t>(instance_.n()) + static_cast<std::size_t>(i)];
    }

    Category category(std::size_t profile, Individual i, Object x) const
    {
        return cells_[static_cast<std::size_t>(member(profile, i)) * static_cast<std::size_t>(instance_.m())
                      + static_cast<std::size_t>(x)];
    }

    /// Categories assigned to x by individuals 0..n-1, encoded in base p.
    std::uint32_t column_key(std::size_t profile, Object x) const;
    std::uint32_t column_key_count() const;

    Profile profile(std::size_t r) const;
    std::size_t rank_of(const Profile& profile) const;
    std::size_t rank_of(const Classification& classification) const;

private:
    explicit ProfileSpace(const Instance& instance);

    Instance instance_;
    std::vector<Classification> classifications_;
    std::vector<Category> cells_;
    std::vector<std::uint32_t> members_;
    std::size_t profile_count_ = 0;
};

/// An explicit aggregation function: one social classification per profile.
class CafTable {
public:
    /// `outputs[r]` is the classification rank assigned to profile r.
    CafTable(std::shared_ptr<const ProfileSpace> space, std::vector<std::uint32_t> outputs);
    CafTable(std::shared_ptr<const ProfileSpace> space, const std::vector<Classification>& outputs);

    const ProfileSpace& space() const { return *space_; }
    const std::shared_ptr<const ProfileSpace>& shared_space() const { return space_; }
    const Instance& instance() const { return space_->instance(); }

    std::size_t size() const { return outputs_.size(); }
    std::uint32_t output_rank(std::size_t profile) const { return outputs_[profile]; }
    const Classification& output(std::size_t profile) const { return space_->classification(outputs_[profile]); }
    Category output(std::size_t profile, Object x) const { return output(profile)[x]; }
    std::span<const std::uint32_t> output_ranks() const { return outputs_; }

    friend bool operator==(const CafTable& a, const CafTable& b)
    {
        return a.instance() == b.instance() && a.outputs_ == b.outputs_;
    }

private:
    std::shared_ptr<const ProfileSpace> space_;
    std::vector<std::uint32_t> outputs_;
};

/// Simultaneous renaming of objects, categories and individuals.
/// Object x becomes object_perm[x], and so on.
struct Relabeling {
    std::vector<Object> object_perm;
    std::vector<Category> category_perm;
    std::vector<Individual> individual_perm;

    static Relabeling identity(const Instance& instance);

    /// Throws DimensionMismatch unless each component is a permutation of the
    /// instance's index range.
    void validate(const Instance& instance) const;

    Relabeling inverse() const;

    friend bool operator==(const Relabeling&, const Relabeling&) = default;
};

/// `outer` applied after `inner`.
Relabeling compose(const Relabeling& outer, const Relabeling& inner);

Classification apply_relabeling(const Classification& classification, const Relabeling& rel);
Profile apply_relabeling(const Profile& profile, const Relabeling& rel);
/// The table t' with t'(rel(c)) = rel(t(c)) for every profile c.
CafTable apply_relabeling(const CafTable& table, const Relabeling& rel);

/// 1-based display names: x₁ and t₂ with Unicode subscripts, individuals as plain numbers ("2").
std::string subscript(int value);
std::string object_name(Object x);
std::string category_name(Category t);
std::string individual_name(Individual i);

/// Every relabeling of the instance (n! * m! * p! of them) in a fixed order.
std::vector<Relabeling> all_relabelings(const Instance& instance);

} // namespace cafcheck
