#pragma once

// Chow-theoretic input data for X = P^d: Chern classes of the tangent
// bundle, diagonal classes and ideals, and the Chern polynomials c_ij(t)
// and c_S(t) of diagonals in (P^d)^n.

#include <vector>

#include "chowfm/polyalg.hpp"
#include "chowfm/setcomb.hpp"

namespace chowfm {

/// Sign convention for the pair Chern polynomials.
///  - Verbatim: leading coefficient (-1)^d, so relation c_S(sum D) = P(-sum D)
///    for the monic normal-bundle polynomial P.
///  - Monic: t^d + c_1 t^{d-1} + ... + [Delta], i.e. verbatim evaluated at -t.
enum class ChernConvention { Verbatim, Monic };

struct BaseGeometry {
    int d = 1;  ///< dimension of P^d
    int n = 1;  ///< number of points
    ChernConvention convention = ChernConvention::Verbatim;

    BaseGeometry(int dim, int points, ChernConvention conv = ChernConvention::Verbatim);

    /// Integer part of c_l(T P^d) = C(d+1, l) h^l.
    Integer chern_tx(int l) const;
};

/// {h_a - h_m : a in S \ {m}}, m = min S. Requires |S| >= 2.
std::vector<Poly> diagonal_ideal(const BaseGeometry& g, const VarTablePtr& vars, Subset s);

/// [Delta_ij] = sum_{a+b=d} h_i^a h_j^b. Requires i != j.
Poly diagonal_class(const BaseGeometry& g, const VarTablePtr& vars, int i, int j);

/// c_ij(t) = sum_{l=1}^{d} (-1)^l C(d+1, d-l) h_i^{d-l} t^l + [Delta_ij].
/// Tangent classes are pulled back through factor i only.
ChernPoly chern_pair(const BaseGeometry& g, const VarTablePtr& vars, int i, int j);

/// Product of chern_pair over consecutive elements of `chain`
/// (a Hamiltonian path through a set of at least two points).
ChernPoly chern_chain(const BaseGeometry& g, const VarTablePtr& vars, const std::vector<int>& chain);

/// chern_chain over the elements of S in increasing order.
ChernPoly chern_set(const BaseGeometry& g, const VarTablePtr& vars, Subset s);

} // namespace chowfm
