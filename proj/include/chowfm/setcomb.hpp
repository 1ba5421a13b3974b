#pragma once

// Combinatorics of weight chambers: subsets of [n], large-set families,
// superset-first walks and the index merging at coincidence sets.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace chowfm {

inline constexpr int kMaxPoints = 31;

/// A subset of {1..n}, stored as a bitmask (bit i-1 <=> element i).
///
/// The ordering is the canonical one used everywhere for printing and
/// for D-variables: by cardinality, then lexicographically on the sorted
/// element lists.
class Subset {
  public:
    constexpr Subset() = default;
    Subset(std::initializer_list<int> elements);
    explicit Subset(const std::vector<int>& elements);

    static constexpr Subset from_bits(std::uint32_t bits) {
        Subset s;
        s.bits_ = bits;
        return s;
    }
    /// {1..n}
    static Subset full(int n);

    constexpr std::uint32_t bits() const { return bits_; }
    bool empty() const { return bits_ == 0; }
    int size() const;
    bool contains(int i) const { return i >= 1 && i <= kMaxPoints && ((bits_ >> (i - 1)) & 1u); }
    /// Smallest element; the set must be nonempty.
    int min() const;
    std::vector<int> elements() const;

    bool is_subset_of(Subset other) const { return (bits_ & ~other.bits_) == 0; }
    bool is_strict_subset_of(Subset other) const { return is_subset_of(other) && bits_ != other.bits_; }

    Subset operator|(Subset o) const { return from_bits(bits_ | o.bits_); }
    Subset operator&(Subset o) const { return from_bits(bits_ & o.bits_); }
    /// Set difference.
    Subset operator-(Subset o) const { return from_bits(bits_ & ~o.bits_); }

    /// "{1,3}"
    std::string to_string() const;

    bool operator==(const Subset&) const = default;
    std::strong_ordering operator<=>(const Subset& other) const;

  private:
    std::uint32_t bits_ = 0;
};

/// S and T overlap when S ∩ T is nonempty and proper in both.
bool is_overlap(Subset s, Subset t);

/// Exact rational weights a_1..a_n in [0,1].
class Weights {
  public:
    explicit Weights(std::vector<mpq_class> a);
    /// Parses "p/q" or integer strings exactly.
    static Weights parse(const std::vector<std::string>& entries);

    int n() const { return static_cast<int>(a_.size()); }
    const std::vector<mpq_class>& values() const { return a_; }
    mpq_class sum(Subset s) const;

  private:
    std::vector<mpq_class> a_;
};

/// Upward-closed family of "large" subsets of {1..n}; every member has at
/// least two elements. The complement (small sets) is a simplicial complex.
class LargeFamily {
  public:
    /// Validates the invariants; throws ArgumentError otherwise.
    LargeFamily(int n, std::set<Subset> members);

    static LargeFamily empty(int n);
    /// Every subset of size >= 2 (all weights equal to one).
    static LargeFamily all_subsets(int n);

    int n() const { return n_; }
    const std::set<Subset>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool contains(Subset s) const { return members_.count(s) != 0; }

    /// Members, one per line-free token: "{{1,2},{1,2,3}}".
    std::string to_string() const;

    bool operator==(const LargeFamily&) const = default;

  private:
    int n_;
    std::set<Subset> members_;
};

/// Members S with |S| >= 2 and sum_{i in S} a_i > 1 (strict; on-the-wall sets are small).
LargeFamily large_from_weights(const Weights& w);

struct Walk {
    std::vector<Subset> steps;
    bool operator==(const Walk&) const = default;
};

/// Throws WalkOrderError unless `w` lists every member of `family` once, supersets first.
void validate_walk(const LargeFamily& family, const Walk& w);

/// Decreasing cardinality, lexicographic tiebreak.
Walk canonical_walk(const LargeFamily& family);

inline constexpr std::size_t kDefaultWalkCap = 8;

/// Every linear extension of the superset-first order. Throws SizeCapError
/// when the family has more than `cap` members.
std::vector<Walk> all_walks(const LargeFamily& family, std::size_t cap = kDefaultWalkCap);

/// Result of collapsing the points of T into a single point.
struct MergeResult {
    int m = 0;                  ///< n - |T| + 1
    int merged_label = 0;       ///< label of the merged point in {1..m}
    std::vector<int> relabel;   ///< relabel[a] for old a in 1..n (index 0 unused)
    std::vector<int> preimage;  ///< preimage[b] for new b in 1..m; min T for the merged point
    LargeFamily family;

    /// Replaces the merged label by T and maps the rest back to old labels.
    Subset lift(Subset merged, Subset t) const;
    /// Image of an old subset that either contains T or misses it.
    Subset push(Subset old) const;
};

/// Merged family on ({1..n} \ T) ∪ {★}; ★ takes label min T and the other
/// labels are compressed in order. A merged set is large iff its lift is in
/// `processed`. Requires T ∉ processed and every strict superset of T in
/// `processed` (WalkOrderError otherwise).
MergeResult merge_family(const LargeFamily& processed, Subset t);

/// Applies a permutation (perm[i] = image of i, 1-based, perm[0] unused).
Subset permute(Subset s, const std::vector<int>& perm);
LargeFamily permute(const LargeFamily& family, const std::vector<int>& perm);

} // namespace chowfm
