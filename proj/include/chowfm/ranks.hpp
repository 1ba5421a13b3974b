#pragma once

// Degree-by-degree exact linear algebra on presented graded rings, and the
// combinatorial blow-up rank oracle.
//
// Every rank is a dimension over the rationals. Non-membership over Q
// certifies non-membership over Z; membership over Q does not certify
// integral membership, and torsion in the Chow groups is invisible here.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "chowfm/polyalg.hpp"
#include "chowfm/setcomb.hpp"

namespace chowfm {

struct RankTable {
    std::vector<std::int64_t> ranks;

    std::size_t size() const { return ranks.size(); }
    std::int64_t operator[](std::size_t k) const { return ranks.at(k); }
    bool operator==(const RankTable&) const = default;

    bool is_palindromic() const;
    /// "(1,2,2,1)"
    std::string to_string() const;
};

inline constexpr std::size_t kDefaultMonomialCap = 20000;

struct RankOptions {
    /// Refuse (SizeCapError) when some degree has more monomials than this.
    std::size_t monomial_cap = kDefaultMonomialCap;
};

/// One coefficient of a sparse row.
struct SparseEntry {
    std::uint32_t col;
    Integer value;
};
using SparseRow = std::vector<SparseEntry>;

/// The degree-k piece of an ideal: all products g*m of generators with
/// monomials of complementary degree, in coordinates of `basis`.
struct DegreeSpan {
    int degree = 0;
    std::vector<Monomial> basis;
    std::vector<SparseRow> rows;
};

/// Row echelon form over Q kept fraction-free: rows are primitive integer
/// vectors, elimination cross-multiplies by the cofactor pair of the two
/// leading entries and divides out the row content.
class Echelon {
  public:
    explicit Echelon(std::size_t ncols);

    /// Adds `row` to the span; true when the rank grew.
    bool insert(SparseRow row);
    /// True when `row` lies in the current span.
    bool contains(SparseRow row) const;
    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return pivot_.size(); }

  private:
    /// Eliminates leading entries while a pivot exists for them.
    void reduce(SparseRow& row) const;

    std::vector<SparseRow> rows_;
    std::vector<std::uint32_t> pivot_;  // column -> row index, or npos
};

/// Canonically ordered (descending) normalized monomials of degree k.
/// Throws ArgumentError unless 0 <= k <= p.top_degree().
std::vector<Monomial> monomials_of_degree(const Presentation& p, int k, const RankOptions& opts = {});

/// Relations of p plus `extra` generators, times monomials, at degree k.
DegreeSpan degree_span(const Presentation& p, int k, std::span<const Poly> extra = {}, const RankOptions& opts = {});

/// Coordinates of a homogeneous degree-k polynomial in span.basis.
SparseRow coordinates(const DegreeSpan& span, const Poly& f);

/// dim_Q of each graded piece of the quotient, degrees 0..top_degree.
RankTable graded_ranks(const Presentation& p, const RankOptions& opts = {});

/// Per-degree rank of the image of the ideal <gens> in the quotient ring.
RankTable ideal_ranks(const Presentation& p, const std::vector<Poly>& gens, const RankOptions& opts = {});

/// Rational membership of f in the ideal <relations, gens>.
bool membership(const Presentation& p, const std::vector<Poly>& gens, const Poly& f, const RankOptions& opts = {});

/// membership() for many polynomials at once, sharing one elimination per degree.
std::vector<bool> membership_batch(const Presentation& p, const std::vector<Poly>& gens, const std::vector<Poly>& fs,
                                   const RankOptions& opts = {});

/// Kernel of the ring map sending each source variable (by name) to a
/// homogeneous target class of the same degree. Degrees 0..source top.
/// Throws MapError naming the first relation whose image is not in the
/// target ideal.
RankTable kernel_ranks(const Presentation& source, const Presentation& target,
                       const std::map<std::string, Poly>& var_images, const RankOptions& opts = {});

/// Coefficients of (1 + q + ... + q^d)^n.
RankTable product_ranks(int d, int n);

/// Ranks of X_A[n] for X = P^d from blow-up additivity along the canonical
/// walk, recursing into the merged-point spaces for the centers. Uses no
/// presentation machinery.
RankTable rank_oracle(int d, int n, const LargeFamily& family);

} // namespace chowfm
