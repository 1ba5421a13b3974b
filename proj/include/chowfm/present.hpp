#pragma once

// Presentations of Chow rings of weighted Fulton-MacPherson spaces of P^d,
// the blow-up combinator they are built from, and the step-by-step
// construction along a chamber walk.

#include <functional>
#include <string>
#include <vector>

#include "chowfm/geomdata.hpp"
#include "chowfm/polyalg.hpp"
#include "chowfm/setcomb.hpp"

namespace chowfm {

/// Supplies the Chern polynomial used for the diagonal of S.
using ChernProvider = std::function<ChernPoly(const BaseGeometry&, const VarTablePtr&, Subset)>;

struct BuildOptions {
    ChernProvider chern = chern_set;
};

/// Relations grouped by the family that produced them.
struct RelationFamilies {
    VarTablePtr vars;
    std::vector<Poly> overlap;      ///< D_S D_T for overlapping S, T
    std::vector<Poly> diagonal;     ///< g D_S for g in J_S
    std::vector<Poly> chern;        ///< c_S(sum_{V ⊇ S} D_V)
    std::vector<Poly> transversal;  ///< D_S c_{S'}(sum_{V ⊇ S ∪ S'} D_V), |S ∩ S'| = 1

    std::vector<Poly> all() const;
};

/// Sum of D_V over members V of `family` accepted by `pred`; zero if none.
Poly divisor_sum(const VarTablePtr& vars, const LargeFamily& family, const std::function<bool(Subset)>& pred);

/// Routis presentation for an arbitrary large family.
RelationFamilies thm31_families(const BaseGeometry& g, const LargeFamily& family, const BuildOptions& opts = {});
Presentation build_thm31(const BaseGeometry& g, const LargeFamily& family, const BuildOptions& opts = {});

/// Fulton-MacPherson presentation (all weights one): pair Chern relations
/// only and no transversal family.
RelationFamilies thm34_families(const BaseGeometry& g);
Presentation build_thm34(const BaseGeometry& g);

/// Data of the coincidence set of a small set T inside X_A[n]: generators
/// of the kernel of restriction to it and its Chern polynomial.
struct CoincidenceData {
    Subset t;
    std::vector<Poly> diagonal_gens;  ///< J_T
    std::vector<Poly> overlap_gens;   ///< D_S, S large overlapping T
    std::vector<Poly> chern_gens;     ///< c_{(S\T) ∪ {i}}(sum_{V ⊇ S} D_V), S large containing T
    ChernPoly chern;                  ///< c_T(-t + sum_{V ⊋ T} D_V)

    std::vector<Poly> ideal_gens() const;
};

/// `vars` must contain h1..hn and D_V for every V in `family`.
CoincidenceData coincidence_data(const BaseGeometry& g, const VarTablePtr& vars, const LargeFamily& family,
                                 Subset t, int i);
CoincidenceData coincidence_data(const BaseGeometry& g, const LargeFamily& family, Subset t, int i);

/// Blow-up of the presented ring along a center with kernel ideal `ideal`
/// and Chern polynomial `chern`: adjoins E and the relations g*E and chern(-E).
/// An empty center is encoded as ideal = {1}.
Presentation keel_step(const Presentation& p, const std::vector<Poly>& ideal, const ChernPoly& chern,
                       const std::string& exceptional_name);

/// Chern relations of the merged space (one per merged large set through the
/// merged point) transported to ambient variables: merged h_b -> h of its
/// preimage (the merged point goes to min T), D_{V'} -> D_{lift V'}.
std::vector<Poly> transported_center_relations(const BaseGeometry& g, const VarTablePtr& vars,
                                               const LargeFamily& processed, Subset t);

/// Builds X_A[n] from X^n by one keel_step per walk step. The result uses
/// the same variable table as build_thm31(g, family). Throws
/// WalkOrderError for an invalid walk and StructuralError if the
/// transported center relations disagree with coincidence_data.
Presentation iterated_presentation(const BaseGeometry& g, const LargeFamily& family, const Walk& walk);

} // namespace chowfm
